#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmiso/contraction.hpp"
#include "pmiso/face.hpp"
#include "pmiso/graph.hpp"
#include "pmiso/tutte.hpp"
#include "pmiso/weights.hpp"

namespace pmiso {

struct LoggedWeight {
  std::string label;
  int advance = 0;  // 1-based index of the advance that produced it
  std::uint64_t k = 0;
  WeightFunction weight;
};

struct PhaseRecord {
  std::string kind;  // "chains-phase", "remove-circuits"
  int advance = 0;
  int lambda_from = 0;
  int lambda_to = 0;
  int phase = 0;     // t for chain phases, 0 otherwise
  int bound = 0;     // circuit node-weight bound (remove-circuits)
  int beta = 0;      // contraction threshold (remove-circuits)
  std::uint64_t k = 0;
  std::uint64_t t_max = 0;
  std::size_t circuits = 0;
  std::size_t obligations = 0;
  std::size_t layers = 0;
  std::size_t face_before = 0;
  std::size_t face_after = 0;
};

struct FaceLaminarState {
  Face face;
  LaminarFamily laminar;
  int lambda = 1;
  std::vector<LoggedWeight> weight_log;
  std::vector<PhaseRecord> audit;
};

struct EngineOptions {
  int limit = kDefaultOracleLimit;
};

// (PM(G), maximal laminar extension of the singletons over tight(PM), 1).
// Verified 1-good. Throws DomainError if G has no perfect matching.
FaceLaminarState initial_state(const Graph& g, const EngineOptions& opt = {});

struct RemovalResult {
  std::uint64_t k = 0;
  std::uint64_t t_max = 0;
  WeightFunction weight;
  Face face;
  std::size_t circuits = 0;
  std::size_t obligations = 0;
};

// Removes the alternating circuits of node-weight <= bound of the
// (face, laminar, beta)-contraction: lifts them, picks the smallest family
// member with nonzero circulation on every lift and returns it with the new
// face. Requires members of size <= beta contractible and no circuit of
// node-weight <= bound/2 in that contraction (PreconditionError otherwise).
// Throws VerificationError if an enumerated circuit still respects the new
// face.
RemovalResult remove_short_circuits(const Graph& g, const Face& face, const LaminarFamily& laminar,
                                    int bound, int beta, const EngineOptions& opt = {});

// Chains of members S with lambda < |S| <= 2 lambda, each ordered by
// inclusion; chains ordered by their smallest set.
std::vector<std::vector<VertexSet>> chains_between(const LaminarFamily& l, int lambda);

// Layers (p, r), 1-based, covered in phase t >= 2: r - p <= 2^(t-1) - 1.
std::vector<std::pair<int, int>> layers_for_phase(int chain_length, int t);

// Number of chain phases, ceil(log2 n) (at least 1).
int chain_phase_count(int n);

struct ChainResult {
  std::vector<LoggedWeight> weights;
  std::vector<PhaseRecord> records;
  Face face;
};

// Makes every member of size <= 2 lambda contractible. state must be
// lambda-good.
ChainResult make_chains_contractible(const Graph& g, const FaceLaminarState& state,
                                     const EngineOptions& opt = {});

// lambda-good -> 2 lambda-good. Verifies the result.
FaceLaminarState advance_lambda(const Graph& g, const FaceLaminarState& state,
                                const EngineOptions& opt = {});

// Left-to-right composition w_1 o ... o w_m with padding n^21.
WeightFunction compose_advance(const std::vector<WeightFunction>& ws, int n);

struct IsolationCertificate {
  std::string mode;  // "derandomized" or "randomized"
  WeightFunction weight;
  Matching matching;
  std::vector<PhaseRecord> audit;
  std::vector<LoggedWeight> weight_log;
  int advances = 0;
  int final_lambda = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool brute_force_isolating = false;
  SearchOutcome mvv;
};

enum class IsolationStatus { kCertified, kNoPerfectMatching, kTrialsExhausted };

struct IsolationOutcome {
  IsolationStatus status = IsolationStatus::kCertified;
  std::optional<IsolationCertificate> certificate;
  std::uint64_t trials = 0;
};

// Brute force within the limit, otherwise the Lovasz test modulo 2^61 - 1
// (8 trials; a false "no" has probability below (n / 2^61)^8).
bool has_perfect_matching(const Graph& g, std::uint64_t seed, int limit = kDefaultOracleLimit);

IsolationOutcome isolate_randomized(const Graph& g, std::uint64_t seed, std::uint64_t max_trials,
                                    const EngineOptions& opt = {});

// Runs advance_lambda until lambda >= n, composes the logged weights
// (advances joined with padding n^(21 (l+1)), l = ceil(log2 n)) and checks
// the result three ways: brute-force argmin, the final singleton face, and
// mvv_search. Throws DomainError without a perfect matching, VerificationError
// on any disagreement.
IsolationCertificate isolate_derandomized(const Graph& g, const EngineOptions& opt = {});

}  // namespace pmiso

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmiso/bigint.hpp"
#include "pmiso/graph.hpp"

namespace pmiso {

// Dense square matrix of big integers, row-major.
struct BigMatrix {
  int n = 0;
  std::vector<BigInt> a;

  BigMatrix() = default;
  explicit BigMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}
  BigInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const BigInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Largest weight for which 2^w(e) is materialized as a matrix entry.
inline constexpr unsigned long kMaxMaterializedWeight = 1ul << 20;

// Skew-symmetric Tutte matrix with X_e = 2^w(e): entry (u, v) = +2^w(e) and
// (v, u) = -2^w(e) for edge e = {u, v}, u < v. The edge `removed`, if given,
// is left out. Throws DomainError for weights above kMaxMaterializedWeight.
BigMatrix build_tutte_matrix(const Graph& g, std::span<const BigInt> weights,
                             std::optional<EdgeId> removed = std::nullopt);

inline constexpr std::size_t kInfiniteOrder = std::numeric_limits<std::size_t>::max();

struct DeterminantResult {
  BigInt value;
  std::size_t ord2 = kInfiniteOrder;  // kInfiniteOrder when value == 0
};

enum class DetMethod { kBareiss, kModular };

// Exact determinant. kBareiss: fraction-free elimination with row pivoting.
// kModular: elimination modulo primes above 2^30 until their product exceeds
// twice the Hadamard-type bound ceil(sqrt(n^n)) * max|a|^n, then CRT.
DeterminantResult determinant(const BigMatrix& m, DetMethod method = DetMethod::kBareiss);

BigInt hadamard_bound(const BigMatrix& m);

// Determinant of m mod p for a prime p < 2^63; entries already reduced.
std::uint64_t determinant_mod_p(std::vector<std::uint64_t> m, int n, std::uint64_t p);

bool is_prime_u64(std::uint64_t p);

struct DecisionResult {
  bool has_perfect_matching = false;
  int trials_run = 0;
};

// Lovasz test: substitutes uniform values from [1, p-1] (seeded) into the
// Tutte matrix and reports true on the first nonzero determinant mod p.
// One-sided: a true answer is certain. Throws DomainError if p is not prime
// or p <= max(2, n^2).
DecisionResult decide_random(const Graph& g, std::uint64_t seed, int trials, std::uint64_t p);

enum class SearchStatus { kFound, kNoPerfectMatching, kIsolationFailure };
const char* search_status_name(SearchStatus s);

enum class SearchBackend { kExact, kDyadic };
const char* search_backend_name(SearchBackend b);

struct EdgeVerdict {
  EdgeId edge = 0;
  bool vanishes = false;          // D_e == 0 (mod 2^(2W*+1) for the dyadic backend)
  std::optional<BigInt> ord2;     // ord2(D_e) when known
  bool member = false;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::kIsolationFailure;
  SearchBackend backend = SearchBackend::kExact;
  Matching matching;
  BigInt min_weight;                        // W*
  BigInt twice_min_weight;                  // ord2(D)
  std::optional<std::size_t> det_bit_length;  // exact backend only
  std::vector<EdgeVerdict> verdicts;
  std::string detail;
};

struct SearchOptions {
  // Max weight for the exact backend; above it the dyadic backend is used.
  BigInt exact_weight_limit = 4096;
  // Optional upper bound on the minimum perfect-matching weight; sets the
  // working precision of the dyadic backend.
  std::optional<BigInt> weight_hint;
  int dyadic_vertex_limit = kDefaultOracleLimit;
  bool force_dyadic = false;
};

// Mulmuley-Vazirani-Vazirani recovery: W* = ord2(det T)/2 and e is in the
// matching iff ord2(det(T - e)) > 2W*. Weights must be nonnegative.
SearchOutcome mvv_search(const Graph& g, std::span<const BigInt> weights,
                         const SearchOptions& options = {});

// det(T) mod 2^precision for X_e = 2^w(e), computed exactly by a
// division-free row expansion over column subsets on sparse dyadic numbers.
// Returns ord2 of the residue, or nullopt if it is 0 mod 2^precision.
std::optional<BigInt> tutte_det_ord2_truncated(const Graph& g, std::span<const BigInt> weights,
                                               const BigInt& precision,
                                               std::optional<EdgeId> removed = std::nullopt,
                                               int limit = kDefaultOracleLimit);

}  // namespace pmiso

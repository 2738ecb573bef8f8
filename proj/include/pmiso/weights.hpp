#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmiso/bigint.hpp"
#include "pmiso/graph.hpp"

namespace pmiso {

struct WeightFunction {
  std::vector<BigInt> values;  // indexed by edge id
  std::string provenance;      // e.g. "w_5", "concat(w_3,w_5)", "random(seed=7)"
};

// Base of the oblivious family: 4n^2 + 1.
std::uint64_t family_base(int n);

// w_k(e_j) = (4n^2+1)^j mod k for the j-th edge (1-based, lexicographic edge
// order). Requires k >= 2.
std::vector<std::uint64_t> family_values(int n, int num_edges, std::uint64_t k);
WeightFunction weight_function(int n, int num_edges, std::uint64_t k);

// n^21: the padding used when composing per-advance weights.
BigInt concat_padding(int n);

// padding * w1 + w2. Requires padding to exceed the largest possible w2
// weight of a perfect matching (sum of the n/2 largest entries).
WeightFunction concat(const WeightFunction& w1, const WeightFunction& w2, const BigInt& padding,
                      int n);

using ObligationVector = std::vector<std::int64_t>;

struct WitnessResult {
  std::optional<std::uint64_t> k;  // smallest k with all <y, w_k> != 0
  std::uint64_t scanned = 0;       // candidates tried
};

// Scans k = 2, ..., t_max. Each obligation must be nonzero with
// ||y||_1 <= 4n^2 and have one entry per edge. An empty obligation set yields
// k = 2.
WitnessResult lem23_witness(std::span<const ObligationVector> ys, int n, int num_edges,
                            std::uint64_t t_max);

BigInt inner_product(std::span<const std::int64_t> y, std::span<const BigInt> w);
BigInt matching_weight(const Matching& m, std::span<const BigInt> w);

// Uniform weights in [1, range] (range defaults to 2|E|), seeded.
WeightFunction random_weights(const Graph& g, std::uint64_t seed, std::uint64_t range = 0);

// Brute-force: true iff exactly one perfect matching has minimum weight.
bool is_isolating(const Graph& g, std::span<const BigInt> w, int limit = kDefaultOracleLimit);

// Brute-force minimizers of w over all perfect matchings.
std::vector<Matching> minimum_weight_matchings(const Graph& g, std::span<const BigInt> w,
                                               int limit = kDefaultOracleLimit);

std::vector<BigInt> to_big(std::span<const std::uint64_t> v);

}  // namespace pmiso

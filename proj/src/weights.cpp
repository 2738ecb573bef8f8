#include "pmiso/weights.hpp"

#include <algorithm>
#include <functional>

#include "pmiso/error.hpp"
#include "pmiso/kernels.hpp"
#include "pmiso/rng.hpp"

namespace pmiso {

std::uint64_t family_base(int n) {
  return 4 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) + 1;
}

std::vector<std::uint64_t> family_values(int n, int num_edges, std::uint64_t k) {
  if (k < 2) throw DomainError("family index k must be at least 2");
  std::vector<std::uint64_t> out(num_edges);
  auto base = static_cast<unsigned __int128>(family_base(n) % k);
  unsigned __int128 cur = 1;
  for (int j = 0; j < num_edges; ++j) {
    cur = cur * base % k;
    out[j] = static_cast<std::uint64_t>(cur);
  }
  return out;
}

std::vector<BigInt> to_big(std::span<const std::uint64_t> v) {
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (std::uint64_t x : v) out.push_back(big_from_u64(x));
  return out;
}

WeightFunction weight_function(int n, int num_edges, std::uint64_t k) {
  return WeightFunction{to_big(family_values(n, num_edges, k)), "w_" + std::to_string(k)};
}

BigInt concat_padding(int n) { return big_pow(BigInt(n), 21); }

WeightFunction concat(const WeightFunction& w1, const WeightFunction& w2, const BigInt& padding,
                      int n) {
  if (w1.values.size() != w2.values.size()) {
    throw PreconditionError("concat: weight vectors differ in length");
  }
  std::vector<BigInt> sorted = w2.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  BigInt heaviest = 0;
  for (std::size_t i = 0; i < sorted.size() && i < static_cast<std::size_t>(n / 2); ++i) {
    heaviest += sorted[i];
  }
  if (padding <= heaviest) {
    throw PreconditionError("concat: padding does not dominate the second weight");
  }
  WeightFunction out;
  out.values.reserve(w1.values.size());
  for (std::size_t i = 0; i < w1.values.size(); ++i) {
    out.values.push_back(padding * w1.values[i] + w2.values[i]);
  }
  out.provenance = "concat(" + w1.provenance + "," + w2.provenance + ")";
  return out;
}

WitnessResult lem23_witness(std::span<const ObligationVector> ys, int n, int num_edges,
                            std::uint64_t t_max) {
  if (t_max < 2) throw DomainError("lem23_witness: tMax must be at least 2");
  std::uint64_t norm_cap = 4 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  for (const ObligationVector& y : ys) {
    if (static_cast<int>(y.size()) != num_edges) {
      throw PreconditionError("lem23_witness: obligation length differs from edge count");
    }
    std::uint64_t norm = 0;
    for (std::int64_t x : y) norm += static_cast<std::uint64_t>(x < 0 ? -x : x);
    if (norm == 0) throw PreconditionError("lem23_witness: zero obligation vector");
    if (norm > norm_cap) throw PreconditionError("lem23_witness: obligation norm exceeds 4n^2");
  }
  WitnessResult out;
  const std::size_t s = ys.size();
  const auto m = static_cast<std::size_t>(num_edges);
  std::vector<std::int32_t> rows(s * m);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < m; ++j) rows[i * m + j] = static_cast<std::int32_t>(ys[i][j]);
  }
  std::vector<std::int64_t> dots(s);
  std::vector<std::uint32_t> w32(m);
  const kernels::KernelTable& kt = kernels::active();
  for (std::uint64_t k = 2; k <= t_max; ++k) {
    ++out.scanned;
    std::vector<std::uint64_t> w = family_values(n, num_edges, k);
    bool ok = true;
    if (k <= (std::uint64_t{1} << 31)) {
      for (std::size_t j = 0; j < m; ++j) w32[j] = static_cast<std::uint32_t>(w[j]);
      kt.dot_rows(rows.data(), s, m, w32.data(), dots.data());
      for (std::size_t i = 0; i < s && ok; ++i) ok = dots[i] != 0;
    } else {
      for (std::size_t i = 0; i < s && ok; ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < m; ++j) acc += static_cast<__int128>(ys[i][j]) * w[j];
        ok = acc != 0;
      }
    }
    if (ok) {
      out.k = k;
      return out;
    }
  }
  return out;
}

BigInt inner_product(std::span<const std::int64_t> y, std::span<const BigInt> w) {
  BigInt acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0) acc += big_from_i64(y[i]) * w[i];
  }
  return acc;
}

BigInt matching_weight(const Matching& m, std::span<const BigInt> w) {
  BigInt acc = 0;
  for (EdgeId e : m.edges) acc += w[e];
  return acc;
}

WeightFunction random_weights(const Graph& g, std::uint64_t seed, std::uint64_t range) {
  if (range == 0) range = std::max<std::uint64_t>(1, 2 * static_cast<std::uint64_t>(g.num_edges()));
  Rng rng(seed);
  WeightFunction out;
  out.values.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) out.values.push_back(big_from_u64(1 + rng.below(range)));
  out.provenance = "random(seed=" + std::to_string(seed) + ")";
  return out;
}

std::vector<Matching> minimum_weight_matchings(const Graph& g, std::span<const BigInt> w,
                                               int limit) {
  std::vector<Matching> all = enumerate_perfect_matchings(g, limit);
  std::vector<Matching> best;
  BigInt best_w;
  for (Matching& m : all) {
    BigInt x = matching_weight(m, w);
    if (best.empty() || x < best_w) {
      best.clear();
      best_w = x;
    }
    if (x == best_w) best.push_back(std::move(m));
  }
  return best;
}

bool is_isolating(const Graph& g, std::span<const BigInt> w, int limit) {
  return minimum_weight_matchings(g, w, limit).size() == 1;
}

}  // namespace pmiso

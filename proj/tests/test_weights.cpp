#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pmiso/corpus.hpp"
#include "pmiso/error.hpp"
#include "pmiso/face.hpp"
#include "pmiso/weights.hpp"

using namespace pmiso;

namespace {

std::vector<BigInt> bw(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("family examples") {
  CHECK(family_base(4) == 65);
  CHECK(weight_function(4, 5, 2).values == bw({1, 1, 1, 1, 1}));
  CHECK(weight_function(4, 5, 3).values == bw({2, 1, 2, 1, 2}));
  CHECK(weight_function(4, 5, 7).values == bw({2, 4, 1, 2, 4}));
  CHECK(weight_function(4, 5, 7).provenance == "w_7");
  CHECK_THROWS_AS(weight_function(4, 5, 1), DomainError);
}

TEST_CASE("family matches the modular exponentiation oracle") {
  for (int n = 1; n <= 12; ++n) {
    const int m = n * (n - 1) / 2;
    for (unsigned long k = 2; k <= 60; ++k) {
      WeightFunction w = weight_function(n, m, k);
      REQUIRE(w.values == oracle::family(n, m, k));
      for (const BigInt& x : w.values) REQUIRE(x < k);
    }
  }
  // Large moduli take the 128-bit path.
  const unsigned long big_k = (1ul << 62) + 135;
  CHECK(weight_function(10, 45, big_k).values == oracle::family(10, 45, big_k));
}

TEST_CASE("concat examples") {
  const BigInt pad = concat_padding(4);
  CHECK(pad == big_pow(BigInt(4), 21));
  WeightFunction a{bw({1, 1}), "a"};
  WeightFunction b{bw({3, 3}), "b"};
  WeightFunction c = concat(a, b, pad, 4);
  CHECK(to_decimal(c.values[0]) == "4398046511107");
  WeightFunction zero{bw({0, 0}), "z"};
  CHECK(concat(a, zero, pad, 4).values == std::vector<BigInt>{pad, pad});
  CHECK(concat(zero, b, pad, 4).values == b.values);
  CHECK_THROWS_AS(concat(a, WeightFunction{bw({1}), "x"}, pad, 4), PreconditionError);
  // Padding must exceed every matching weight of the second argument.
  CHECK_THROWS_AS(concat(a, b, BigInt(6), 4), PreconditionError);
  CHECK_NOTHROW(concat(a, b, BigInt(7), 4));
}

TEST_CASE("concat is the lexicographic order on matchings") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 * (2 + static_cast<int>(rng() % 3));
    Graph g = corpus::random_graph_with_pm(n, 1, 2, 3000 + trial);
    const int m = g.num_edges();
    WeightFunction w1 = weight_function(n, m, 2 + rng() % 40);
    WeightFunction w2 = weight_function(n, m, 2 + rng() % 40);
    WeightFunction c = concat(w1, w2, concat_padding(n), n);
    auto ms = oracle::matchings_by_subsets(g);
    for (const auto& a : ms) {
      for (const auto& b : ms) {
        oracle::Big d1 = oracle::weight_of(a, w1.values) - oracle::weight_of(b, w1.values);
        oracle::Big d2 = oracle::weight_of(a, w2.values) - oracle::weight_of(b, w2.values);
        oracle::Big dc = oracle::weight_of(a, c.values) - oracle::weight_of(b, c.values);
        int expect = d1 != 0 ? sgn(d1) : sgn(d2);
        REQUIRE(sgn(dc) == expect);
      }
    }
  }
}

TEST_CASE("lem23 examples") {
  std::vector<ObligationVector> ys{{1, -1, 1, -1}};
  WitnessResult r = lem23_witness(ys, 4, 4, 64);
  REQUIRE(r.k);
  CHECK(*r.k == 3);
  CHECK(inner_product(ys[0], weight_function(4, 4, 3).values) == 2);
  CHECK(inner_product(ys[0], weight_function(4, 4, 2).values) == 0);

  std::vector<ObligationVector> none;
  r = lem23_witness(none, 4, 4, 7);
  REQUIRE(r.k);
  CHECK(*r.k == 2);

  std::vector<ObligationVector> zero{{0, 0, 0, 0}};
  CHECK_THROWS_AS(lem23_witness(zero, 4, 4, 64), PreconditionError);
  std::vector<ObligationVector> heavy{{65, 0, 0, 0}};
  CHECK_THROWS_AS(lem23_witness(heavy, 4, 4, 64), PreconditionError);
  CHECK_THROWS_AS(lem23_witness(ys, 4, 4, 1), DomainError);
  // Exhaustion is a data outcome.
  CHECK_FALSE(lem23_witness(ys, 4, 4, 2).k);
}

TEST_CASE("lem23 returns the minimal k of the scan oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int m = n * (n - 1) / 2;
    if (m == 0) continue;
    const int s = 1 + static_cast<int>(rng() % 20);
    std::vector<ObligationVector> ys;
    for (int i = 0; i < s; ++i) {
      ObligationVector y(m, 0);
      const int budget = 1 + static_cast<int>(rng() % (4 * n * n));
      for (int b = 0; b < budget; ++b) y[rng() % m] += (rng() & 1) ? 1 : -1;
      bool nonzero = false;
      for (auto x : y) nonzero |= x != 0;
      if (!nonzero) y[0] = 1;
      ys.push_back(y);
    }
    const unsigned long t_max = static_cast<unsigned long>(n) * n * n * s;
    WitnessResult r = lem23_witness(ys, n, m, std::max(7ul, t_max));
    unsigned long ref = oracle::scan_witness(ys, n, m, std::max(7ul, t_max));
    REQUIRE(ref != 0);
    REQUIRE(r.k);
    REQUIRE(*r.k == ref);
  }
}

TEST_CASE("random weights") {
  Graph g = corpus::cycle(4);
  WeightFunction a = random_weights(g, 9);
  WeightFunction b = random_weights(g, 9);
  CHECK(a.values == b.values);
  CHECK(a.values.size() == 4);
  for (const BigInt& x : a.values) {
    CHECK(x >= 1);
    CHECK(x <= 8);
  }
  CHECK(a.provenance == "random(seed=9)");
}

TEST_CASE("random weights are uniform") {
  Graph g = corpus::cycle(4);
  std::vector<int> counts(9, 0);
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) counts[random_weights(g, s).values[0].get_ui()]++;
  const double p = 1.0 / 8;
  const double sigma = std::sqrt(draws * p * (1 - p));
  CHECK(counts[0] == 0);
  for (int v = 1; v <= 8; ++v) CHECK(std::abs(counts[v] - draws * p) < 5 * sigma);
}

TEST_CASE("is_isolating examples") {
  CHECK(is_isolating(corpus::path(4), bw({3, 3, 3})));
  CHECK_FALSE(is_isolating(corpus::cycle(4), bw({1, 1, 1, 1})));
  CHECK(is_isolating(corpus::cycle(4), bw({1, 2, 1, 1})));
  CHECK_FALSE(is_isolating(corpus::cycle(3), bw({1, 1, 1})));
  CHECK(minimum_weight_matchings(corpus::cycle(4), bw({1, 1, 1, 1})).size() == 2);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>
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

WeightFunction wf(std::initializer_list<long> v) { return WeightFunction{bw(v), "custom"}; }

std::vector<std::vector<int>> face_edges(const Face& f) {
  std::vector<std::vector<int>> out;
  for (const Matching& m : f.matchings) out.push_back(m.edges);
  return out;
}

VertexSet L(std::initializer_list<int> labels) { return VertexSet::from_labels(labels); }

// Two triangles {1,2,3}, {4,5,6} with crossing edges 1-4, 2-5, 3-6 (edge ids
// 3, 5, 6 in lexicographic order). The face of matchings with exactly one
// crossing edge makes both triangles tight.
Face two_triangles_face(const Graph& g) {
  return face_min(perfect_matching_face(g), wf({0, 0, 1, 0, 1, 1, 0, 0, 0}));
}

}  // namespace

TEST_SUITE("face") {

TEST_CASE("face_min examples") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  REQUIRE(pm.size() == 2);
  Face f = face_min(pm, wf({1, 2, 1, 1}));
  REQUIRE(f.is_singleton());
  CHECK(f.matchings[0].labels() == std::vector<int>{1, 4});
  CHECK(f.defining_weights.size() == 1);
  CHECK(face_min(pm, wf({0, 0, 0, 0})).same_matchings(pm));

  Graph k4 = corpus::complete(4);
  // K4 matchings: {12,34}, {13,24}, {14,23}; give them weights 1, 2, 3.
  Face k = face_min(perfect_matching_face(k4), wf({1, 2, 3, 3, 2, 0}));
  REQUIRE(k.is_singleton());
  CHECK(k.matchings[0].labels() == std::vector<int>{1, 6});
  CHECK_THROWS_AS(perfect_matching_face(corpus::cycle(3)), DomainError);
}

TEST_CASE("support") {
  Graph c4 = corpus::cycle(4);
  CHECK(support_of(perfect_matching_face(c4)).size() == 4);
  CHECK(support_of(face_min(perfect_matching_face(c4), wf({1, 2, 1, 1}))) == std::vector<EdgeId>{0, 3});
  Graph fig = corpus::fig1();
  std::vector<EdgeId> ref;
  for (const auto& m : oracle::matchings_by_subsets(fig)) ref.insert(ref.end(), m.begin(), m.end());
  std::sort(ref.begin(), ref.end());
  ref.erase(std::unique(ref.begin(), ref.end()), ref.end());
  CHECK(support_of(perfect_matching_face(fig)) == ref);
}

TEST_CASE("tight odd sets of C4 and K4") {
  for (const Graph& g : {corpus::cycle(4), corpus::complete(4)}) {
    std::vector<VertexSet> t = tight_odd_sets(g, perfect_matching_face(g));
    std::vector<VertexSet> expect{L({1}), L({2}), L({3}), L({4}),
                                  L({1, 2, 3}), L({1, 2, 4}), L({1, 3, 4}), L({2, 3, 4})};
    CHECK(t == expect);
  }
  CHECK_THROWS_AS(tight_odd_sets(corpus::complete(18), perfect_matching_face(corpus::complete(4))),
                  SizeGuardError);
}

TEST_CASE("tight odd sets agree with the oracle on random faces") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 4));
    Graph g = corpus::random_graph_with_pm(n, 1, 2, 4000 + trial);
    Face f = perfect_matching_face(g);
    for (int step = 0; step < 2; ++step) {
      std::vector<std::uint64_t> ref = oracle::tight_sets(g, face_edges(f));
      std::vector<VertexSet> got = tight_odd_sets(g, f);
      std::vector<std::uint64_t> masks;
      for (VertexSet s : got) masks.push_back(s.mask());
      std::sort(masks.begin(), masks.end());
      REQUIRE(masks == ref);
      f = face_min(f, weight_function(n, g.num_edges(), 2 + rng() % 30));
    }
  }
}

TEST_CASE("maximal laminar extension") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  std::vector<VertexSet> t = tight_odd_sets(c4, pm);
  LaminarFamily l = extend_maximal_laminar(singleton_family(4), t, 4);
  CHECK(l == LaminarFamily{L({1}), L({2}), L({3}), L({4}), L({1, 2, 3})});
  CHECK(is_maximal_laminar(l, t));
  LaminarFamily s = singleton_family(4);
  CHECK(extend_maximal_laminar(s, s, 4) == s);
  CHECK_THROWS_AS(extend_maximal_laminar(LaminarFamily{}, t, 4), PreconditionError);
  LaminarFamily crossing{L({1}), L({2}), L({3}), L({4}), L({1, 2, 3}), L({2, 3, 4})};
  CHECK_THROWS_AS(extend_maximal_laminar(crossing, t, 4), PreconditionError);
}

TEST_CASE("exact rank") {
  CHECK(exact_rank({}) == 0);
  CHECK(exact_rank({{0, 0}}) == 0);
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 2);
  CHECK(exact_rank({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}, {1, 1, 1}}) == 3);
}

TEST_CASE("span equality") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  LaminarFamily l{L({1}), L({2}), L({3}), L({4}), L({1, 2, 3})};
  SpanCheck sc = span_equality_check(c4, pm, l);
  CHECK(sc.equal);
  CHECK(sc.laminar_rank == sc.tight_rank);
  CHECK_THROWS_AS(span_equality_check(c4, pm, singleton_family(4)), PreconditionError);

  Graph k4 = corpus::complete(4);
  Face kpm = perfect_matching_face(k4);
  for (VertexSet triple : {L({1, 2, 3}), L({1, 2, 4}), L({1, 3, 4}), L({2, 3, 4})}) {
    LaminarFamily lk = singleton_family(4);
    lk.push_back(triple);
    CHECK(span_equality_check(k4, kpm, lk).equal);
  }
}

TEST_CASE("uncrossing") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  UncrossResult u = uncross_pair(c4, pm, L({1, 2, 3}), L({2, 3, 4}));
  CHECK_FALSE(u.odd_intersection);
  CHECK(u.first == L({1}));
  CHECK(u.second == L({4}));
  CHECK(u.identity_holds);
  CHECK(u.results_tight);
  CHECK_THROWS_AS(uncross_pair(c4, pm, L({1}), L({2})), PreconditionError);
  CHECK_THROWS_AS(uncross_pair(c4, pm, L({1}), L({1, 2, 3})), PreconditionError);

  Graph k6 = corpus::complete(6);
  Face f = perfect_matching_face(k6);
  Face sub = face_min(f, weight_function(6, 15, 11));
  std::vector<VertexSet> t = tight_odd_sets(k6, sub);
  int checked = 0;
  for (VertexSet a : t) {
    for (VertexSet b : t) {
      if (!a.crosses(b)) continue;
      UncrossResult r = uncross_pair(k6, sub, a, b);
      CHECK(r.identity_holds);
      CHECK(r.results_tight);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("contractibility examples") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  for (int v = 1; v <= 4; ++v) CHECK(is_contractible(c4, pm, VertexSet::from_labels({v})));
  CHECK(is_contractible(c4, pm, L({1, 2, 3})));
  CHECK_THROWS_AS(is_contractible(c4, pm, L({1, 2})), PreconditionError);

  Graph tt = corpus::two_triangles();
  Face f = two_triangles_face(tt);
  CHECK(f.size() == 3);
  CHECK(is_contractible(tt, f, L({1, 2, 3})));
  CHECK(is_contractible(tt, f, L({4, 5, 6})));
  // In PM(G) the all-crossing matching puts 3 edges into the cut.
  CHECK_FALSE(is_tight(tt, perfect_matching_face(tt), L({1, 2, 3})));
}

TEST_CASE("layer form with p = 1 is the plain form") {
  Graph k6 = corpus::complete(6);
  Face f = face_min(perfect_matching_face(k6), weight_function(6, 15, 5));
  std::vector<VertexSet> t = tight_odd_sets(k6, f);
  for (VertexSet s : t) {
    std::vector<VertexSet> chain{s};
    CHECK(is_layer_contractible(k6, f, chain, 1, 1) == is_contractible(k6, f, s));
  }
}

TEST_CASE("subface stability and downward closure on small graphs") {
  int nested = 0;
  for (int n = 2; n <= 6; n += 2) {
    for (const Graph& g : corpus::connected_graphs(n)) {
      if (!has_perfect_matching_brute_force(g)) continue;
      Face f = perfect_matching_face(g);
      Face sub = face_min(f, weight_function(n, g.num_edges(), 3));
      std::vector<VertexSet> t = tight_odd_sets(g, f);
      for (VertexSet s : t) {
        if (is_contractible(g, f, s)) REQUIRE(is_contractible(g, sub, s));
        for (VertexSet big : t) {
          if (s == big || !s.subset_of(big)) continue;
          ++nested;
          if (is_contractible(g, f, big)) REQUIRE(is_contractible(g, f, s));
        }
      }
    }
  }
  CHECK(nested > 0);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pmiso/contraction.hpp"
#include "pmiso/corpus.hpp"
#include "pmiso/engine.hpp"
#include "pmiso/error.hpp"

using namespace pmiso;

namespace {

VertexSet L(std::initializer_list<int> labels) { return VertexSet::from_labels(labels); }

bool subset_faces(const Face& small, const Face& big) {
  return std::includes(big.matchings.begin(), big.matchings.end(), small.matchings.begin(),
                       small.matchings.end());
}

bool contains_all(const LaminarFamily& big, const LaminarFamily& small) {
  for (VertexSet s : small) {
    if (std::find(big.begin(), big.end(), s) == big.end()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("initial state") {
  Graph c4 = corpus::cycle(4);
  FaceLaminarState st = initial_state(c4);
  CHECK(st.face.size() == 2);
  CHECK(st.lambda == 1);
  CHECK(st.laminar == LaminarFamily{L({1}), L({2}), L({3}), L({4}), L({1, 2, 3})});
  CHECK(st.weight_log.empty());
  CHECK_THROWS_AS(initial_state(corpus::cycle(3)), DomainError);
}

TEST_CASE("remove_short_circuits on C4") {
  Graph c4 = corpus::cycle(4);
  Face pm = perfect_matching_face(c4);
  RemovalResult r = remove_short_circuits(c4, pm, singleton_family(4), 4, 4);
  CHECK(r.circuits == 1);
  CHECK(r.obligations == 1);
  CHECK(r.k == 7);
  CHECK(r.weight.values == weight_function(4, 4, 7).values);
  REQUIRE(r.face.is_singleton());
  CHECK(r.face.matchings[0].labels() == std::vector<int>{1, 4});

  // Nothing of node-weight <= 2: vacuous witness, face unchanged.
  RemovalResult v = remove_short_circuits(c4, pm, singleton_family(4), 2, 2);
  CHECK(v.circuits == 0);
  CHECK(v.k == 2);
  CHECK(v.face.same_matchings(pm));

  // Precondition: a circuit of node-weight <= bound / 2 must not exist.
  CHECK_THROWS_AS(remove_short_circuits(c4, pm, singleton_family(4), 8, 4), PreconditionError);
}

TEST_CASE("two triangles: the 4-cycle stops respecting after its removal") {
  Graph g = corpus::two_triangles();
  Face pm = perfect_matching_face(g);
  // Alternating 4-cycle 1-4-5-2-1.
  ObligationVector y(9, 0);
  y[*g.find_edge(0, 3)] = 1;
  y[*g.find_edge(3, 4)] = -1;
  y[*g.find_edge(1, 4)] = 1;
  y[*g.find_edge(0, 1)] = -1;
  REQUIRE(respects_face(g, pm, y));
  std::vector<ObligationVector> ys{y};
  WitnessResult wr = lem23_witness(ys, 6, 9, 6 * 6 * 6);
  REQUIRE(wr.k);
  WeightFunction w = weight_function(6, 9, *wr.k);
  CHECK(inner_product(y, w.values) != 0);
  Face sub = face_min(pm, w);
  CHECK_FALSE(respects_face(g, sub, y));
  std::vector<VertexSet> before = tight_odd_sets(g, pm);
  std::vector<VertexSet> after = tight_odd_sets(g, sub);
  bool new_triple = false;
  for (VertexSet s : after) {
    if (s.size() == 3 && std::find(before.begin(), before.end(), s) == before.end()) new_triple = true;
  }
  CHECK(new_triple);
}

TEST_CASE("chain structure and phase schedule") {
  LaminarFamily l{L({1}), L({2}), L({3}), L({4}), L({5}), L({1, 2, 3}), L({1, 2, 3, 4, 5})};
  auto chains = chains_between(l, 2);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0] == std::vector<VertexSet>{L({1, 2, 3})});
  auto c3 = chains_between(l, 3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == std::vector<VertexSet>{L({1, 2, 3, 4, 5})});
  CHECK(chains_between(l, 8).empty());

  // Chain of 8 sets: phase t covers layers with r - p <= 2^(t-1) - 1.
  auto has = [](const std::vector<std::pair<int, int>>& v, int p, int r) {
    return std::find(v.begin(), v.end(), std::make_pair(p, r)) != v.end();
  };
  auto t1 = layers_for_phase(8, 1);
  CHECK(t1.size() == 8);
  auto t2 = layers_for_phase(8, 2);
  CHECK(has(t2, 1, 2));
  CHECK(has(t2, 3, 4));
  CHECK_FALSE(has(t2, 1, 3));
  auto t3 = layers_for_phase(8, 3);
  CHECK(has(t3, 1, 4));
  CHECK(has(t3, 5, 8));
  CHECK_FALSE(has(t3, 1, 5));
  auto t4 = layers_for_phase(8, 4);
  CHECK(has(t4, 1, 8));
  CHECK(t4.size() == 36);
  // An 8-set chain needs n >= 31; its run has enough phases.
  CHECK(chain_phase_count(31) >= 4);
  CHECK(chain_phase_count(8) == 3);
  CHECK(chain_phase_count(2) == 1);
}

TEST_CASE("make_chains_contractible trivial cases") {
  Graph c4 = corpus::cycle(4);
  FaceLaminarState st = initial_state(c4);
  ChainResult none = make_chains_contractible(c4, st);
  CHECK(none.weights.empty());
  CHECK(none.face.same_matchings(st.face));

  FaceLaminarState st2 = advance_lambda(c4, st);
  REQUIRE(st2.lambda == 2);
  ChainResult one = make_chains_contractible(c4, st2);
  REQUIRE(one.records.size() == 1);
  CHECK(one.records[0].phase == 1);
}

TEST_CASE("advance is a no-op on a unique matching") {
  Graph p4 = corpus::path(4);
  FaceLaminarState st = initial_state(p4);
  REQUIRE(st.face.is_singleton());
  FaceLaminarState next = advance_lambda(p4, st);
  CHECK(next.lambda == 2);
  CHECK(next.face.same_matchings(st.face));
}

TEST_CASE("two triangles: advance to 4 makes every small member contractible") {
  Graph g = corpus::two_triangles();
  FaceLaminarState st = initial_state(g);
  while (st.lambda < 4) st = advance_lambda(g, st);
  CHECK(is_lambda_good(g, st.face, st.laminar, 4).good);
  for (VertexSet s : st.laminar) {
    if (s.size() <= 4) CHECK(is_contractible(g, st.face, s));
  }
}

TEST_CASE("states stay good, faces shrink, laminar families grow") {
  for (int n = 2; n <= 6; n += 2) {
    for (const Graph& g : corpus::connected_graphs(n)) {
      if (!has_perfect_matching_brute_force(g)) continue;
      FaceLaminarState st = initial_state(g);
      while (st.lambda < n) {
        FaceLaminarState next = advance_lambda(g, st);
        REQUIRE(next.lambda == 2 * st.lambda);
        REQUIRE(is_lambda_good(g, next.face, next.laminar, next.lambda).good);
        REQUIRE(subset_faces(next.face, st.face));
        REQUIRE(contains_all(next.laminar, st.laminar));
        st = std::move(next);
      }
      REQUIRE(st.face.is_singleton());
    }
  }
}

TEST_CASE("derandomized certificates") {
  Graph p4 = corpus::path(4);
  IsolationCertificate cp = isolate_derandomized(p4);
  CHECK(cp.matching.labels() == std::vector<int>{1, 3});

  Graph c4 = corpus::cycle(4);
  IsolationCertificate cc = isolate_derandomized(c4);
  CHECK(cc.matching.labels() == std::vector<int>{1, 4});
  CHECK(cc.advances == 2);
  std::vector<std::uint64_t> ks;
  for (const auto& lw : cc.weight_log) ks.push_back(lw.k);
  CHECK(ks == std::vector<std::uint64_t>{2, 2, 7});
  CHECK(cc.mvv.matching == cc.matching);
  CHECK(cc.brute_force_isolating);

  for (const Graph& g : {corpus::complete(4), corpus::complete(6), corpus::prism(3), corpus::cube()}) {
    IsolationCertificate c = isolate_derandomized(g);
    auto best = oracle::argmin(oracle::matchings_by_subsets(g), c.weight.values);
    REQUIRE(best.size() == 1);
    CHECK(best.front() == c.matching.edges);
    const int n = g.num_vertices();
    const double l = std::log2(n);
    CHECK(static_cast<double>(c.weight_log.size()) <= (l + 1) * l);
    // Deterministic.
    IsolationCertificate again = isolate_derandomized(g);
    CHECK(again.weight.values == c.weight.values);
  }
  CHECK_THROWS_AS(isolate_derandomized(corpus::cycle(3)), DomainError);
  CHECK_THROWS_AS(isolate_derandomized(corpus::complete_bipartite(1, 3)), DomainError);
  EngineOptions small;
  small.limit = 4;
  CHECK_THROWS_AS(isolate_derandomized(corpus::cycle(6), small), SizeGuardError);
}

TEST_CASE("randomized isolation") {
  IsolationOutcome p = isolate_randomized(corpus::path(4), 3, 10);
  REQUIRE(p.status == IsolationStatus::kCertified);
  CHECK(p.trials == 1);
  CHECK(p.certificate->matching.labels() == std::vector<int>{1, 3});

  CHECK(isolate_randomized(corpus::cycle(3), 3, 10).status == IsolationStatus::kNoPerfectMatching);

  std::uint64_t total = 0;
  const int runs = 300;
  for (int s = 0; s < runs; ++s) {
    IsolationOutcome o = isolate_randomized(corpus::cycle(4), s, 50);
    REQUIRE(o.status == IsolationStatus::kCertified);
    total += o.trials;
  }
  CHECK(static_cast<double>(total) / runs <= 2.0);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pmiso/corpus.hpp"
#include "pmiso/error.hpp"
#include "pmiso/graph.hpp"

using namespace pmiso;

namespace {

Graph c4() { return parse_graph("4 4\n1 2\n2 3\n3 4\n4 1\n"); }

ParseErrorCode parse_code(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ParseErrorCode::kMalformed;
}

std::vector<int> ids(const std::vector<EdgeId>& v) {
  std::vector<int> out;
  for (EdgeId e : v) out.push_back(e + 1);
  return out;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("parse C4 with lexicographic edge numbering") {
  Graph g = c4();
  REQUIRE(g.num_vertices() == 4);
  REQUIRE(g.num_edges() == 4);
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 3});
  CHECK(g.edge(2) == Edge{1, 2});
  CHECK(g.edge(3) == Edge{2, 3});
}

TEST_CASE("parse FIG1 and comments") {
  Graph g = parse_graph("# Tutte example\n4 5\n1 2\n1 3\n# inner comment\n1 4\n2 4\n3 4\n");
  CHECK(g.num_edges() == 5);
  CHECK(g == corpus::fig1());
}

TEST_CASE("parse errors are distinct") {
  CHECK(parse_code("2 1\n1 1\n") == ParseErrorCode::kSelfLoop);
  CHECK(parse_code("3 2\n1 2\n2 1\n") == ParseErrorCode::kDuplicateEdge);
  CHECK(parse_code("3 1\n1 4\n") == ParseErrorCode::kVertexOutOfRange);
  CHECK(parse_code("3 2\n1 2\n") == ParseErrorCode::kCountMismatch);
  CHECK(parse_code("3 1\n1 x\n") == ParseErrorCode::kMalformed);
  CHECK(parse_code("") == ParseErrorCode::kMalformed);
  CHECK(parse_code("65 0\n") == ParseErrorCode::kTooManyVertices);
}

TEST_CASE("duplicate edge reports the second occurrence") {
  try {
    parse_graph("3 3\n1 2\n2 3\n2 1\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("edge indexing is invariant under input permutation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = corpus::random_graph(9, 1, 2, 100 + trial);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : g.edges()) {
      if (rng() & 1) edges.emplace_back(e.v, e.u);
      else edges.emplace_back(e.u, e.v);
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    CHECK(Graph::from_edges(9, edges) == g);
    CHECK(parse_graph(format_graph(g)) == g);
  }
}

TEST_CASE("cut and interior") {
  Graph g = c4();
  CutAndInterior ci = cut_and_interior(g, VertexSet::from_labels({1, 2, 3}));
  CHECK(ids(ci.cut) == std::vector<int>{2, 4});
  CHECK(ids(ci.interior) == std::vector<int>{1, 3});
  CHECK(cut_and_interior(g, VertexSet{}).cut.empty());
  CHECK(cut_and_interior(g, VertexSet{}).interior.empty());
  CHECK(cut_and_interior(g, g.all_vertices()).cut.empty());
  CHECK(cut_and_interior(g, g.all_vertices()).interior.size() == 4);
}

TEST_CASE("handshake identity on every subset") {
  for (const Graph& g : {corpus::petersen(), corpus::fig1(), corpus::random_graph(10, 1, 3, 9)}) {
    const int n = g.num_vertices();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      VertexSet set(s);
      CutAndInterior ci = cut_and_interior(g, set);
      int deg = 0;
      for (Vertex v : set.members()) deg += static_cast<int>(g.incident(v).size());
      REQUIRE(static_cast<int>(ci.cut.size() + 2 * ci.interior.size()) == deg);
    }
  }
}

TEST_CASE("enumerate perfect matchings") {
  Graph g = c4();
  std::vector<Matching> ms = enumerate_perfect_matchings(g);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].labels() == std::vector<int>{1, 4});
  CHECK(ms[1].labels() == std::vector<int>{2, 3});
  CHECK(enumerate_perfect_matchings(corpus::complete(4)).size() == 3);
  CHECK(enumerate_perfect_matchings(corpus::cycle(3)).empty());
  CHECK_THROWS_AS(enumerate_perfect_matchings(corpus::complete(18)), SizeGuardError);
  CHECK(enumerate_perfect_matchings(corpus::petersen()).size() == 6);
}

TEST_CASE("enumeration agrees with the subset oracle on the n <= 7 corpus") {
  for (int n = 1; n <= 7; ++n) {
    for (const Graph& g : corpus::all_graphs(n)) {
      std::vector<Matching> ms = enumerate_perfect_matchings(g);
      std::vector<std::vector<int>> ref = oracle::matchings_by_subsets(g);
      REQUIRE(ms.size() == ref.size());
      for (std::size_t i = 0; i < ms.size(); ++i) {
        REQUIRE(ms[i].edges == ref[i]);
        REQUIRE(is_perfect_matching(g, ms[i]));
      }
      REQUIRE(has_perfect_matching_brute_force(g) == oracle::pm_exists_dp(g));
    }
  }
}

TEST_CASE("is_perfect_matching") {
  Graph g = c4();
  CHECK(is_perfect_matching(g, Matching{{0, 3}}));
  CHECK_FALSE(is_perfect_matching(g, Matching{{0, 2}}));
  CHECK_FALSE(is_perfect_matching(g, Matching{{0}}));
}

TEST_CASE("laminar check") {
  using V = VertexSet;
  std::vector<V> a{V::from_labels({1}), V::from_labels({2}), V::from_labels({1, 2, 3})};
  CHECK(is_laminar(a));
  std::vector<V> b{V::from_labels({1, 2}), V::from_labels({2, 3})};
  CHECK_FALSE(is_laminar(b));
  auto pair = first_crossing_pair(b);
  REQUIRE(pair);
  CHECK(pair->first == V::from_labels({1, 2}));
  CHECK(pair->second == V::from_labels({2, 3}));
  std::vector<V> c{V::from_labels({1, 2}), V::from_labels({3, 4})};
  CHECK(is_laminar(c));
}

TEST_CASE("vertex set order and printing") {
  VertexSet a = VertexSet::from_labels({1, 2, 3});
  CHECK(a.to_string() == "{1,2,3}");
  CHECK(set_order_less(VertexSet::from_labels({4}), a));
  CHECK(set_order_less(a, VertexSet::from_labels({1, 2, 4})));
  CHECK(a.is_odd());
}

}  // TEST_SUITE

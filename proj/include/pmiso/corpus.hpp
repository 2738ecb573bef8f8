#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmiso/graph.hpp"

namespace pmiso::corpus {

// Canonical adjacency code (upper triangle, row-major bits) under the
// lexicographically smallest labelling reachable by colour refinement and
// individualization. Equal codes iff isomorphic. n <= 11.
std::uint64_t canonical_code(const Graph& g);
Graph graph_from_code(int n, std::uint64_t code);

// All graphs on n vertices up to isomorphism (n <= 8), by canonical code.
std::vector<Graph> all_graphs(int n);
std::vector<Graph> connected_graphs(int n);

// Connected graphs on 1..max_n vertices with a perfect matching.
std::vector<Graph> connected_with_perfect_matching(int max_n);

// G(n, p) with p = num / den.
Graph random_graph(int n, std::uint64_t num, std::uint64_t den, std::uint64_t seed);
// A random perfect matching plus G(n, p) edges; n even.
Graph random_graph_with_pm(int n, std::uint64_t num, std::uint64_t den, std::uint64_t seed);

Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph ladder(int rungs);
Graph prism(int k);
Graph cube();
Graph petersen();
Graph fig1();
// Triangles {1,2,3}, {4,5,6} joined by 1-4, 2-5, 3-6.
Graph two_triangles();

struct Named {
  std::string name;
  Graph graph;
};
std::vector<Named> named_fixtures();

}  // namespace pmiso::corpus

#include "pmiso/corpus.hpp"

#include <algorithm>
#include <set>

#include "pmiso/error.hpp"
#include "pmiso/rng.hpp"

namespace pmiso::corpus {

namespace {

using Adj = std::vector<std::uint32_t>;

Adj adjacency(const Graph& g) {
  Adj a(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) {
    a[e.u] |= 1u << e.v;
    a[e.v] |= 1u << e.u;
  }
  return a;
}

// Colours are 0..k-1; refinement renumbers by sorted (colour, neighbour
// colour multiset) signatures, which does not depend on the labels.
void refine(const Adj& a, std::vector<int>& colour) {
  const int n = static_cast<int>(a.size());
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{colour[v]};
      std::vector<int> nb;
      for (int u = 0; u < n; ++u) {
        if (a[v] >> u & 1u) nb.push_back(colour[u]);
      }
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& [s, v] : sig) keys.push_back(s);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(n);
    for (auto& [s, v] : sig) {
      next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), s) - keys.begin());
    }
    const int before = *std::max_element(colour.begin(), colour.end());
    const int after = *std::max_element(next.begin(), next.end());
    colour = std::move(next);
    if (after == before) return;
  }
}

std::uint64_t code_of(const Adj& a, const std::vector<int>& pos) {
  const int n = static_cast<int>(a.size());
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::uint64_t code = 0;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if (a[at[i]] >> at[j] & 1u) code |= std::uint64_t{1} << bit;
    }
  }
  return code;
}

void search(const Adj& a, std::vector<int> colour, std::uint64_t& best, bool& have) {
  refine(a, colour);
  const int n = static_cast<int>(a.size());
  std::vector<int> count(n, 0);
  for (int c : colour) ++count[c];
  int target = -1;
  for (int c = 0; c < n; ++c) {
    if (count[c] > 1) {
      target = c;
      break;
    }
  }
  if (target < 0) {
    std::uint64_t c = code_of(a, colour);
    if (!have || c < best) best = c;
    have = true;
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (colour[v] != target) continue;
    std::vector<int> next(colour);
    for (int u = 0; u < n; ++u) {
      if (next[u] > target || (next[u] == target && u != v)) ++next[u];
    }
    search(a, std::move(next), best, have);
  }
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 11) throw SizeGuardError("canonical_code: n > 11");
  if (n == 0) return 0;
  std::uint64_t best = 0;
  bool have = false;
  search(adjacency(g), std::vector<int>(static_cast<std::size_t>(n), 0), best, have);
  return best;
}

Graph graph_from_code(int n, std::uint64_t code) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if (code >> bit & 1u) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

std::vector<Graph> all_graphs(int n) {
  if (n < 0 || n > 8) throw SizeGuardError("all_graphs: n must be in [0, 8]");
  std::set<std::uint64_t> codes{0};
  for (int k = 1; k < n + 1; ++k) {
    if (k == 1) continue;
    std::set<std::uint64_t> next;
    for (std::uint64_t c : codes) {
      Graph base = graph_from_code(k - 1, c);
      for (std::uint32_t nb = 0; nb < (1u << (k - 1)); ++nb) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (const Edge& e : base.edges()) edges.emplace_back(e.u, e.v);
        for (int u = 0; u < k - 1; ++u) {
          if (nb >> u & 1u) edges.emplace_back(u, k - 1);
        }
        next.insert(canonical_code(Graph::from_edges(k, edges)));
      }
    }
    codes = std::move(next);
  }
  std::vector<Graph> out;
  for (std::uint64_t c : codes) out.push_back(graph_from_code(n, c));
  return out;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (Graph& g : all_graphs(n)) {
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Graph> connected_with_perfect_matching(int max_n) {
  std::vector<Graph> out;
  for (int n = 2; n <= max_n; n += 2) {
    for (Graph& g : connected_graphs(n)) {
      if (has_perfect_matching_brute_force(g)) out.push_back(std::move(g));
    }
  }
  return out;
}

Graph random_graph(int n, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.coin(num, den)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph random_graph_with_pm(int n, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  if (n % 2 != 0) throw DomainError("random_graph_with_pm: n must be even");
  Rng rng(seed);
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::set<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < n; i += 2) {
    edges.insert({std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1])});
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.coin(num, den)) edges.insert({u, v});
    }
  }
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n >= 3) e.emplace_back(0, n - 1);
  return Graph::from_edges(n, e);
}

Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph::from_edges(n, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int u = 0; u < a; ++u) {
    for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
  }
  return Graph::from_edges(a + b, e);
}

Graph ladder(int rungs) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < rungs; ++i) {
    e.emplace_back(2 * i, 2 * i + 1);
    if (i + 1 < rungs) {
      e.emplace_back(2 * i, 2 * i + 2);
      e.emplace_back(2 * i + 1, 2 * i + 3);
    }
  }
  return Graph::from_edges(2 * rungs, e);
}

Graph prism(int k) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < k; ++i) {
    e.emplace_back(i, (i + 1) % k);
    e.emplace_back(k + i, k + (i + 1) % k);
    e.emplace_back(i, k + i);
  }
  for (auto& [u, v] : e) {
    if (u > v) std::swap(u, v);
  }
  return Graph::from_edges(2 * k, e);
}

Graph cube() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 0; v < 8; ++v) {
    for (int b = 0; b < 3; ++b) {
      int u = v ^ (1 << b);
      if (v < u) e.emplace_back(v, u);
    }
  }
  return Graph::from_edges(8, e);
}

Graph petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
    e.emplace_back(i, 5 + i);
    int a = 5 + i;
    int b = 5 + (i + 2) % 5;
    e.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Graph::from_edges(10, e);
}

Graph fig1() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}); }

Graph two_triangles() {
  return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

std::vector<Named> named_fixtures() {
  return {{"P4", path(4)},       {"C4", cycle(4)},          {"K4", complete(4)},
          {"FIG1", fig1()},      {"two-triangles", two_triangles()},
          {"C6", cycle(6)},      {"K6", complete(6)},       {"K3,3", complete_bipartite(3, 3)},
          {"ladder4", ladder(4)}, {"prism4", prism(4)},     {"cube", cube()},
          {"petersen", petersen()}};
}

}  // namespace pmiso::corpus

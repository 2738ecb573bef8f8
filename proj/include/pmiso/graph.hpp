#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmiso {

using Vertex = int;
using EdgeId = int;

inline constexpr int kMaxVertices = 64;

// Default vertex limit for brute-force oracles and exhaustive set enumeration.
inline constexpr int kDefaultOracleLimit = 16;

// Subset of {0, ..., 63}. Vertices are 0-based internally; every printed form
// uses 1-based labels.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t mask) : mask_(mask) {}
  VertexSet(std::initializer_list<Vertex> vs);

  static VertexSet range(int n);  // {0, ..., n-1}
  // Builds a set from 1-based labels.
  static VertexSet from_labels(std::initializer_list<int> labels);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool contains(Vertex v) const { return (mask_ >> v) & 1u; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool is_odd() const { return (size() & 1) == 1; }
  constexpr Vertex min() const { return std::countr_zero(mask_); }

  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(mask_ & o.mask_); }
  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(mask_ | o.mask_); }
  constexpr VertexSet minus(VertexSet o) const { return VertexSet(mask_ & ~o.mask_); }
  constexpr bool subset_of(VertexSet o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool disjoint(VertexSet o) const { return (mask_ & o.mask_) == 0; }
  // Neither nested nor disjoint.
  constexpr bool crosses(VertexSet o) const {
    return !disjoint(o) && !subset_of(o) && !o.subset_of(*this);
  }

  std::vector<Vertex> members() const;
  std::vector<int> labels() const;  // 1-based
  std::string to_string() const;    // "{1,2,3}"

  constexpr bool operator==(const VertexSet&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

// Size first, then lexicographic on the sorted member list.
bool set_order_less(VertexSet a, VertexSet b);

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  bool operator==(const Edge&) const = default;
};

class Graph {
 public:
  Graph() = default;

  // Builds a simple graph. Edges are re-numbered in lexicographic (u, v)
  // order; the input order does not matter. Throws ParseError on self-loops,
  // duplicates or out-of-range endpoints.
  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const EdgeId> incident(Vertex v) const { return incident_[v]; }
  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  VertexSet endpoints(EdgeId e) const {
    return VertexSet((std::uint64_t{1} << edges_[e].u) | (std::uint64_t{1} << edges_[e].v));
  }
  VertexSet all_vertices() const { return VertexSet::range(n_); }
  bool is_connected() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// Text format: first non-comment line "n m", then m lines "u v" with 1-based
// labels. '#' starts a comment. Throws ParseError.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

// Sorted list of edge ids.
struct Matching {
  std::vector<EdgeId> edges;

  auto operator<=>(const Matching&) const = default;
  bool operator==(const Matching&) const = default;
  bool contains(EdgeId e) const;
  std::vector<int> labels() const;  // 1-based edge ids
};

bool is_perfect_matching(const Graph& g, const Matching& m);

// Every perfect matching, sorted lexicographically by edge-id list. Throws
// SizeGuardError above the vertex limit.
std::vector<Matching> enumerate_perfect_matchings(const Graph& g,
                                                  int limit = kDefaultOracleLimit);

bool has_perfect_matching_brute_force(const Graph& g, int limit = kDefaultOracleLimit);

struct CutAndInterior {
  std::vector<EdgeId> cut;       // delta(S)
  std::vector<EdgeId> interior;  // E(S)
};

CutAndInterior cut_and_interior(const Graph& g, VertexSet s);
bool in_cut(const Graph& g, EdgeId e, VertexSet s);
bool in_interior(const Graph& g, EdgeId e, VertexSet s);

bool is_laminar(std::span<const VertexSet> family);
// First crossing pair in family order, if any.
std::optional<std::pair<VertexSet, VertexSet>> first_crossing_pair(std::span<const VertexSet> family);

}  // namespace pmiso

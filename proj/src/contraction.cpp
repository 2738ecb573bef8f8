#include "pmiso/contraction.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "pmiso/error.hpp"

namespace pmiso {

ContractionMultigraph contraction_of(const Graph& g, const Face& f, const LaminarFamily& l,
                                     int lambda) {
  int n = g.num_vertices();
  if (lambda < 1 || lambda > 2 * n) {
    throw PreconditionError("contraction_of: lambda must lie in [1, 2n]");
  }
  for (VertexSet s : l) {
    if (!is_tight(g, f, s)) {
      throw PreconditionError("contraction_of: " + s.to_string() + " is not tight for the face");
    }
  }
  ContractionMultigraph h;
  h.lambda = lambda;
  h.num_graph_edges = g.num_edges();
  std::vector<VertexSet> large;
  for (VertexSet s : l) {
    if (s.size() > lambda) {
      large.push_back(s);
      continue;
    }
    bool maximal = true;
    for (VertexSet t : l) {
      if (t != s && t.size() <= lambda && s.subset_of(t)) {
        maximal = false;
        break;
      }
    }
    if (maximal) h.nodes.push_back(s);
  }
  std::sort(h.nodes.begin(), h.nodes.end(),
            [](VertexSet a, VertexSet b) { return a.min() < b.min(); });
  h.node_of_vertex.assign(n, -1);
  for (int i = 0; i < static_cast<int>(h.nodes.size()); ++i) {
    for (Vertex v : h.nodes[i].members()) h.node_of_vertex[v] = i;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (h.node_of_vertex[v] < 0) {
      throw PreconditionError("contraction_of: vertex " + std::to_string(v + 1) +
                              " lies in no family member of size <= lambda");
    }
  }
  for (EdgeId e : support_of(f)) {
    int a = h.node_of_vertex[g.edge(e).u];
    int b = h.node_of_vertex[g.edge(e).v];
    if (a == b) continue;
    bool erased = false;
    for (VertexSet t : large) {
      if (in_cut(g, e, t)) {
        erased = true;
        break;
      }
    }
    if (!erased) h.edges.push_back({a, b, e});
  }
  return h;
}

void canonicalize_sign(ObligationVector& y) {
  for (std::int64_t x : y) {
    if (x == 0) continue;
    if (x < 0) {
      for (std::int64_t& v : y) v = -v;
    }
    return;
  }
}

namespace {

struct Step {
  int edge;
  int to;
};

class CircuitSearch {
 public:
  CircuitSearch(const ContractionMultigraph& h, int bound, bool stop_at_first)
      : h_(h), bound_(bound), stop_(stop_at_first), adj_(h.nodes.size()) {
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) {
      adj_[h.edges[i].a].push_back({i, h.edges[i].b});
      adj_[h.edges[i].b].push_back({i, h.edges[i].a});
    }
    vec_.assign(h.edges.size(), 0);
  }

  std::vector<AlternatingCircuit> run() {
    int num_nodes = static_cast<int>(h_.nodes.size());
    for (start_ = 0; start_ < num_nodes && !done(); ++start_) {
      compute_return_costs();
      memo_.clear();
      walk_nodes_.assign(1, start_);
      walk_edges_.clear();
      dfs(start_, 0);
    }
    return std::move(found_);
  }

 private:
  static constexpr int kUnreachable = std::numeric_limits<int>::max() / 2;

  bool done() const { return stop_ && !found_.empty(); }

  // back_[x]: least node-weight of a walk from x to start_ through nodes
  // >= start_, counting tails.
  void compute_return_costs() {
    int num_nodes = static_cast<int>(h_.nodes.size());
    back_.assign(num_nodes, kUnreachable);
    back_[start_] = 0;
    std::vector<bool> fixed(num_nodes, false);
    for (;;) {
      int best = -1;
      for (int x = start_; x < num_nodes; ++x) {
        if (!fixed[x] && back_[x] < kUnreachable && (best < 0 || back_[x] < back_[best])) best = x;
      }
      if (best < 0) break;
      fixed[best] = true;
      for (const Step& s : adj_[best]) {
        int x = s.to;
        if (x < start_ || fixed[x]) continue;
        back_[x] = std::min(back_[x], back_[best] + h_.node_weight(x));
      }
    }
  }

  std::string state_key(int cur, int len, int used) const {
    std::string key;
    key.reserve(vec_.size() + 12);
    key.push_back(static_cast<char>(cur));
    key.push_back(static_cast<char>(len & 1));
    key.append(reinterpret_cast<const char*>(&used), sizeof(used));
    for (int x : vec_) key.push_back(static_cast<char>(x));
    return key;
  }

  void record(int weight) {
    ObligationVector y(h_.num_graph_edges, 0);
    for (std::size_t i = 0; i < vec_.size(); ++i) {
      if (vec_[i] != 0) y[h_.edges[i].original] = vec_[i];
    }
    canonicalize_sign(y);
    if (!seen_.insert(y).second) return;
    AlternatingCircuit c;
    c.nodes.assign(walk_nodes_.begin(), walk_nodes_.end() - 1);
    c.edges = walk_edges_;
    c.node_weight = weight;
    c.indicator = std::move(y);
    found_.push_back(std::move(c));
  }

  void dfs(int cur, int used) {
    if (done()) return;
    int len = static_cast<int>(walk_edges_.size());
    if (!memo_.insert(state_key(cur, len, used)).second) return;
    int next_used = used + h_.node_weight(cur);
    if (next_used > bound_) return;
    int sign = (len % 2 == 0) ? 1 : -1;
    for (const Step& s : adj_[cur]) {
      if (s.to < start_ || back_[s.to] >= kUnreachable) continue;
      if (next_used + back_[s.to] > bound_) continue;
      int before = vec_[s.edge];
      vec_[s.edge] += sign;
      nonzero_ += (before == 0) - (vec_[s.edge] == 0);
      walk_edges_.push_back(s.edge);
      walk_nodes_.push_back(s.to);
      if (s.to == start_ && (len + 1) % 2 == 0 && nonzero_ > 0) record(next_used);
      dfs(s.to, next_used);
      walk_nodes_.pop_back();
      walk_edges_.pop_back();
      nonzero_ -= (before == 0) - (vec_[s.edge] == 0);
      vec_[s.edge] = before;
      if (done()) return;
    }
  }

  const ContractionMultigraph& h_;
  int bound_;
  bool stop_;
  std::vector<std::vector<Step>> adj_;
  int start_ = 0;
  std::vector<int> back_;
  std::vector<int> vec_;
  int nonzero_ = 0;
  std::vector<int> walk_nodes_;
  std::vector<int> walk_edges_;
  std::unordered_set<std::string> memo_;
  std::set<ObligationVector> seen_;
  std::vector<AlternatingCircuit> found_;
};

void check_length(const Graph& g, const ObligationVector& y) {
  if (static_cast<int>(y.size()) != g.num_edges()) {
    throw PreconditionError("edge vector length " + std::to_string(y.size()) +
                            " does not match edge count " + std::to_string(g.num_edges()));
  }
}

std::int64_t cut_product(const Graph& g, const ObligationVector& y, VertexSet s) {
  std::int64_t acc = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (y[e] != 0 && in_cut(g, e, s)) acc += y[e];
  }
  return acc;
}

bool support_within(const ObligationVector& y, const std::vector<EdgeId>& supp) {
  for (std::size_t e = 0; e < y.size(); ++e) {
    if (y[e] != 0 && !std::binary_search(supp.begin(), supp.end(), static_cast<EdgeId>(e))) {
      return false;
    }
  }
  return true;
}

bool is_union_of_nodes(const ContractionMultigraph& h, VertexSet s) {
  for (VertexSet node : h.nodes) {
    if (!node.subset_of(s) && !node.disjoint(s)) return false;
  }
  return true;
}

}  // namespace

std::vector<AlternatingCircuit> enumerate_alternating_circuits(const ContractionMultigraph& h,
                                                               int bound, bool stop_at_first) {
  if (bound < 2) return {};
  return CircuitSearch(h, bound, stop_at_first).run();
}

bool respects_face(const Graph& g, const Face& f, const ObligationVector& y, int limit) {
  check_length(g, y);
  if (!support_within(y, support_of(f))) return false;
  for (VertexSet s : tight_odd_sets(g, f, limit)) {
    if (cut_product(g, y, s) != 0) return false;
  }
  return true;
}

bool respects_face_in_contraction(const Graph& g, const Face& f, const ContractionMultigraph& h,
                                  const ObligationVector& z, int limit) {
  check_length(g, z);
  if (!support_within(z, support_of(f))) return false;
  for (VertexSet s : tight_odd_sets(g, f, limit)) {
    if (!is_union_of_nodes(h, s)) continue;
    if (cut_product(g, z, s) != 0) return false;
  }
  return true;
}

ObligationVector lift_circuit_vector(const Graph& g, const Face& f,
                                     const ContractionMultigraph& h, const ObligationVector& z) {
  check_length(g, z);
  std::vector<int> h_edge_of(g.num_edges(), -1);
  for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) h_edge_of[h.edges[i].original] = i;
  std::vector<EdgeId> supp = support_of(f);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (z[e] == 0) continue;
    if (h_edge_of[e] < 0) throw PreconditionError("lift_circuit_vector: z is not supported on E(H)");
    if (!std::binary_search(supp.begin(), supp.end(), e)) {
      throw PreconditionError("lift_circuit_vector: z leaves supp(F)");
    }
  }
  ObligationVector y = z;
  // Forced part of the face inside `node` given boundary edge e.
  auto forced = [&](VertexSet node, EdgeId e) {
    std::optional<std::vector<EdgeId>> inside;
    for (const Matching& m : f.matchings) {
      if (!m.contains(e)) continue;
      std::vector<EdgeId> part = interior_part(g, m, node);
      if (!inside) {
        inside = std::move(part);
      } else if (*inside != part) {
        throw PreconditionError("lift_circuit_vector: interior matching of " + node.to_string() +
                                " is not unique");
      }
    }
    return *inside;
  };
  for (int i = 0; i < static_cast<int>(h.nodes.size()); ++i) {
    VertexSet node = h.nodes[i];
    std::vector<EdgeId> plus, minus;
    std::int64_t balance = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (z[e] == 0 || !in_cut(g, e, node)) continue;
      balance += z[e];
      auto& side = z[e] > 0 ? plus : minus;
      for (std::int64_t c = 0; c < (z[e] > 0 ? z[e] : -z[e]); ++c) side.push_back(e);
    }
    if (balance != 0) {
      throw PreconditionError("lift_circuit_vector: z is unbalanced at node " + node.to_string());
    }
    if (node.size() == 1) continue;
    for (std::size_t p = 0; p < plus.size(); ++p) {
      for (EdgeId e : forced(node, plus[p])) ++y[e];
      for (EdgeId e : forced(node, minus[p])) --y[e];
    }
  }
  std::int64_t zn = 0, yn = 0;
  for (std::int64_t x : z) zn += x < 0 ? -x : x;
  for (std::int64_t x : y) yn += x < 0 ? -x : x;
  if (yn > static_cast<std::int64_t>(g.num_vertices()) * zn) {
    throw VerificationError("lift_circuit_vector: ||y||_1 exceeds n ||z||_1");
  }
  return y;
}

const char* clause_name(GoodnessReport::Clause c) {
  switch (c) {
    case GoodnessReport::Clause::kNone: return "none";
    case GoodnessReport::Clause::kNotMaximalLaminar: return "laminar-not-maximal";
    case GoodnessReport::Clause::kNotContractible: return "small-set-not-contractible";
    case GoodnessReport::Clause::kShortCircuit: return "short-circuit";
  }
  return "unknown";
}

GoodnessReport is_lambda_good(const Graph& g, const Face& f, const LaminarFamily& l, int lambda,
                              int limit) {
  GoodnessReport r;
  std::vector<VertexSet> tight = tight_odd_sets(g, f, limit);
  for (VertexSet s : l) {
    if (std::find(tight.begin(), tight.end(), s) == tight.end()) {
      r.failed = GoodnessReport::Clause::kNotMaximalLaminar;
      r.set_witness = s;
      r.detail = "member " + s.to_string() + " is not tight";
      return r;
    }
  }
  if (auto bad = first_crossing_pair(l)) {
    r.failed = GoodnessReport::Clause::kNotMaximalLaminar;
    r.set_witness = bad->first;
    r.detail = bad->first.to_string() + " crosses " + bad->second.to_string();
    return r;
  }
  for (VertexSet t : tight) {
    if (std::find(l.begin(), l.end(), t) != l.end()) continue;
    bool crosses = std::any_of(l.begin(), l.end(), [&](VertexSet s) { return s.crosses(t); });
    if (!crosses) {
      r.failed = GoodnessReport::Clause::kNotMaximalLaminar;
      r.set_witness = t;
      r.detail = "tight set " + t.to_string() + " can be added";
      return r;
    }
  }
  for (VertexSet s : l) {
    if (s.size() <= lambda && !is_contractible(g, f, s)) {
      r.failed = GoodnessReport::Clause::kNotContractible;
      r.set_witness = s;
      r.detail = s.to_string() + " is not contractible";
      return r;
    }
  }
  ContractionMultigraph h = contraction_of(g, f, l, std::min(lambda, 2 * g.num_vertices()));
  std::vector<AlternatingCircuit> c = enumerate_alternating_circuits(h, lambda, true);
  if (!c.empty()) {
    r.failed = GoodnessReport::Clause::kShortCircuit;
    r.circuit_witness = std::move(c.front());
    r.detail = "alternating circuit of node-weight " +
               std::to_string(r.circuit_witness->node_weight);
    return r;
  }
  r.good = true;
  return r;
}

}  // namespace pmiso

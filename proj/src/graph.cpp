#include "pmiso/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "pmiso/error.hpp"

namespace pmiso {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSizeGuard: return "size-guard";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kVerification: return "verification";
  }
  return "unknown";
}

VertexSet::VertexSet(std::initializer_list<Vertex> vs) {
  for (Vertex v : vs) mask_ |= std::uint64_t{1} << v;
}

VertexSet VertexSet::range(int n) {
  return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

VertexSet VertexSet::from_labels(std::initializer_list<int> labels) {
  std::uint64_t m = 0;
  for (int l : labels) m |= std::uint64_t{1} << (l - 1);
  return VertexSet(m);
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::vector<int> VertexSet::labels() const {
  std::vector<int> out = members();
  for (int& v : out) ++v;
  return out;
}

std::string VertexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int l : labels()) {
    if (!first) s += ',';
    s += std::to_string(l);
    first = false;
  }
  return s + "}";
}

bool set_order_less(VertexSet a, VertexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Lexicographic on sorted members: the first differing element decides.
  std::uint64_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  int first = std::countr_zero(diff);
  return a.contains(first);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n < 0) throw ParseError(ParseErrorCode::kMalformed, 0, "negative vertex count");
  if (n > kMaxVertices) {
    throw ParseError(ParseErrorCode::kTooManyVertices, 0,
                     "at most " + std::to_string(kMaxVertices) + " vertices supported");
  }
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ParseError(ParseErrorCode::kVertexOutOfRange, 0,
                       "edge endpoint out of range: " + std::to_string(a + 1) + " " +
                           std::to_string(b + 1));
    }
    if (a == b) {
      throw ParseError(ParseErrorCode::kSelfLoop, 0,
                       "self-loop at vertex " + std::to_string(a + 1));
    }
    g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i] == g.edges_[i - 1]) {
      throw ParseError(ParseErrorCode::kDuplicateEdge, 0,
                       "duplicate edge " + std::to_string(g.edges_[i].u + 1) + " " +
                           std::to_string(g.edges_[i].v + 1));
    }
  }
  g.incident_.assign(n, {});
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    g.incident_[g.edges_[e].u].push_back(e);
    g.incident_[g.edges_[e].v].push_back(e);
  }
  return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  Edge key{a, b};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& x, const Edge& y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  if (it == edges_.end() || !(*it == key)) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t m = frontier; m != 0; m &= m - 1) {
      Vertex v = std::countr_zero(m);
      for (EdgeId e : incident_[v]) {
        Vertex w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
        next |= std::uint64_t{1} << w;
      }
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == VertexSet::range(n_).mask();
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  long long n = -1, m = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<int> edge_lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    long long a = 0, b = 0;
    if (toks.size() != 2 || !parse_int(toks[0], a) || !parse_int(toks[1], b)) {
      throw ParseError(ParseErrorCode::kMalformed, line_no,
                       "line " + std::to_string(line_no) + ": expected two integers");
    }
    if (n < 0) {
      if (a < 0 || b < 0) {
        throw ParseError(ParseErrorCode::kMalformed, line_no, "negative header value");
      }
      if (a > kMaxVertices) {
        throw ParseError(ParseErrorCode::kTooManyVertices, line_no,
                         "at most " + std::to_string(kMaxVertices) + " vertices supported");
      }
      n = a;
      m = b;
      continue;
    }
    if (a < 1 || a > n || b < 1 || b > n) {
      throw ParseError(ParseErrorCode::kVertexOutOfRange, line_no,
                       "line " + std::to_string(line_no) + ": vertex label out of range 1.." +
                           std::to_string(n));
    }
    if (a == b) {
      throw ParseError(ParseErrorCode::kSelfLoop, line_no,
                       "line " + std::to_string(line_no) + ": self-loop");
    }
    edges.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    edge_lines.push_back(line_no);
  }
  if (n < 0) throw ParseError(ParseErrorCode::kMalformed, 0, "missing header line");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(ParseErrorCode::kCountMismatch, line_no,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  try {
    return Graph::from_edges(static_cast<int>(n), edges);
  } catch (const ParseError& e) {
    if (e.code() != ParseErrorCode::kDuplicateEdge) throw;
    // Report the line of the second occurrence.
    std::vector<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::pair<Vertex, Vertex> key{std::min(edges[i].first, edges[i].second),
                                    std::max(edges[i].first, edges[i].second)};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        throw ParseError(ParseErrorCode::kDuplicateEdge, edge_lines[i],
                         "line " + std::to_string(edge_lines[i]) + ": duplicate edge");
      }
      seen.emplace_back(key);
    }
    throw;
  }
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

bool Matching::contains(EdgeId e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> Matching::labels() const {
  std::vector<int> out(edges.begin(), edges.end());
  for (int& e : out) ++e;
  return out;
}

bool is_perfect_matching(const Graph& g, const Matching& m) {
  std::uint64_t covered = 0;
  for (EdgeId e : m.edges) {
    if (e < 0 || e >= g.num_edges()) return false;
    std::uint64_t ends = g.endpoints(e).mask();
    if (covered & ends) return false;
    covered |= ends;
  }
  return covered == g.all_vertices().mask();
}

namespace {

void check_limit(const Graph& g, int limit, const char* what) {
  if (g.num_vertices() > limit) {
    throw SizeGuardError(std::string(what) + ": n = " + std::to_string(g.num_vertices()) +
                         " exceeds oracle limit " + std::to_string(limit));
  }
}

// Matches the lowest uncovered vertex through each of its edges in turn.
template <typename Visit>
bool match_rec(const Graph& g, std::uint64_t covered, std::vector<EdgeId>& stack,
               Visit& visit) {
  std::uint64_t full = g.all_vertices().mask();
  if (covered == full) return visit(stack);
  Vertex v = std::countr_zero(~covered);
  for (EdgeId e : g.incident(v)) {
    std::uint64_t ends = g.endpoints(e).mask();
    if (covered & (ends & ~(std::uint64_t{1} << v))) continue;
    stack.push_back(e);
    bool stop = match_rec(g, covered | ends, stack, visit);
    stack.pop_back();
    if (stop) return true;
  }
  return false;
}

}  // namespace

std::vector<Matching> enumerate_perfect_matchings(const Graph& g, int limit) {
  check_limit(g, limit, "enumerate_perfect_matchings");
  std::vector<Matching> out;
  if (g.num_vertices() % 2 != 0) return out;
  std::vector<EdgeId> stack;
  auto visit = [&](const std::vector<EdgeId>& es) {
    Matching m{es};
    std::sort(m.edges.begin(), m.edges.end());
    out.push_back(std::move(m));
    return false;
  };
  match_rec(g, 0, stack, visit);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_perfect_matching_brute_force(const Graph& g, int limit) {
  check_limit(g, limit, "has_perfect_matching_brute_force");
  if (g.num_vertices() % 2 != 0) return false;
  std::vector<EdgeId> stack;
  auto visit = [](const std::vector<EdgeId>&) { return true; };
  return match_rec(g, 0, stack, visit);
}

bool in_cut(const Graph& g, EdgeId e, VertexSet s) {
  return (g.endpoints(e) & s).size() == 1;
}

bool in_interior(const Graph& g, EdgeId e, VertexSet s) {
  return g.endpoints(e).subset_of(s);
}

CutAndInterior cut_and_interior(const Graph& g, VertexSet s) {
  CutAndInterior out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    int k = (g.endpoints(e) & s).size();
    if (k == 1) out.cut.push_back(e);
    else if (k == 2) out.interior.push_back(e);
  }
  return out;
}

std::optional<std::pair<VertexSet, VertexSet>> first_crossing_pair(std::span<const VertexSet> family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (family[i].crosses(family[j])) return std::pair(family[i], family[j]);
    }
  }
  return std::nullopt;
}

bool is_laminar(std::span<const VertexSet> family) { return !first_crossing_pair(family); }

}  // namespace pmiso

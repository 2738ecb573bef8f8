#include "pmiso/face.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pmiso/error.hpp"

namespace pmiso {

Face make_face(std::vector<Matching> matchings) {
  if (matchings.empty()) throw PreconditionError("a face must contain a matching");
  std::sort(matchings.begin(), matchings.end());
  matchings.erase(std::unique(matchings.begin(), matchings.end()), matchings.end());
  Face f;
  f.matchings = std::move(matchings);
  return f;
}

Face perfect_matching_face(const Graph& g, int limit) {
  std::vector<Matching> all = enumerate_perfect_matchings(g, limit);
  if (all.empty()) throw DomainError("graph has no perfect matching");
  return make_face(std::move(all));
}

Face face_min(const Face& f, const WeightFunction& w) {
  Face out;
  BigInt best;
  for (const Matching& m : f.matchings) {
    BigInt x = matching_weight(m, w.values);
    if (out.matchings.empty() || x < best) {
      out.matchings.clear();
      best = x;
    }
    if (x == best) out.matchings.push_back(m);
  }
  out.defining_weights = f.defining_weights;
  out.defining_weights.push_back(w);
  return out;
}

std::vector<EdgeId> support_of(const Face& f) {
  std::vector<EdgeId> out;
  for (const Matching& m : f.matchings) out.insert(out.end(), m.edges.begin(), m.edges.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cut_count(const Graph& g, const Matching& m, VertexSet s) {
  int c = 0;
  for (EdgeId e : m.edges) c += in_cut(g, e, s) ? 1 : 0;
  return c;
}

bool is_tight(const Graph& g, const Face& f, VertexSet s) {
  if (!s.is_odd()) return false;
  for (const Matching& m : f.matchings) {
    if (cut_count(g, m, s) != 1) return false;
  }
  return true;
}

std::vector<VertexSet> tight_odd_sets(const Graph& g, const Face& f, int limit) {
  int n = g.num_vertices();
  if (n > limit) {
    throw SizeGuardError("tight_odd_sets: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(limit));
  }
  // Edge masks per matching, so each test is a few popcounts.
  std::vector<std::vector<std::uint64_t>> masks;
  masks.reserve(f.matchings.size());
  for (const Matching& m : f.matchings) {
    std::vector<std::uint64_t> em;
    for (EdgeId e : m.edges) em.push_back(g.endpoints(e).mask());
    masks.push_back(std::move(em));
  }
  std::vector<VertexSet> out;
  std::uint64_t full = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < full; ++s) {
    if ((std::popcount(s) & 1) == 0) continue;
    bool tight = true;
    for (const auto& em : masks) {
      int c = 0;
      for (std::uint64_t x : em) c += std::popcount(x & s) == 1;
      if (c != 1) {
        tight = false;
        break;
      }
    }
    if (tight) out.push_back(VertexSet(s));
  }
  std::sort(out.begin(), out.end(), set_order_less);
  return out;
}

LaminarFamily singleton_family(int n) {
  LaminarFamily l;
  for (Vertex v = 0; v < n; ++v) l.push_back(VertexSet{v});
  return l;
}

void sort_family(LaminarFamily& l) {
  std::sort(l.begin(), l.end(), set_order_less);
  l.erase(std::unique(l.begin(), l.end()), l.end());
}

LaminarFamily extend_maximal_laminar(const LaminarFamily& base,
                                     std::span<const VertexSet> candidates, int n) {
  if (base.empty()) throw PreconditionError("laminar family must contain all singletons");
  if (auto bad = first_crossing_pair(base)) {
    throw PreconditionError("base family is not laminar: " + bad->first.to_string() + " crosses " +
                            bad->second.to_string());
  }
  for (Vertex v = 0; v < n; ++v) {
    if (std::find(base.begin(), base.end(), VertexSet{v}) == base.end()) {
      throw PreconditionError("laminar family lacks singleton {" + std::to_string(v + 1) + "}");
    }
  }
  LaminarFamily out = base;
  std::vector<VertexSet> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), set_order_less);
  for (VertexSet c : order) {
    bool ok = true;
    for (VertexSet s : out) {
      if (s == c || s.crosses(c)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(c);
  }
  sort_family(out);
  return out;
}

bool is_maximal_laminar(const LaminarFamily& l, std::span<const VertexSet> tight) {
  for (VertexSet s : l) {
    if (std::find(tight.begin(), tight.end(), s) == tight.end()) return false;
  }
  if (!is_laminar(l)) return false;
  for (VertexSet t : tight) {
    if (std::find(l.begin(), l.end(), t) != l.end()) continue;
    bool crosses = false;
    for (VertexSet s : l) {
      if (s.crosses(t)) {
        crosses = true;
        break;
      }
    }
    if (!crosses) return false;
  }
  return true;
}

namespace {

std::optional<std::size_t> rank_small(const std::vector<std::vector<std::int64_t>>& in) {
  using I = __int128;
  const I cap = I{1} << 100;
  std::vector<std::vector<I>> rows;
  std::size_t cols = 0;
  for (const auto& r : in) {
    rows.emplace_back(r.begin(), r.end());
    cols = std::max(cols, r.size());
  }
  for (auto& r : rows) r.resize(cols, 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const auto& p = rows[rank];
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      auto& r = rows[i];
      if (r[c] == 0) continue;
      I a = p[c], b = r[c];
      I g = 0;
      for (std::size_t j = c; j < cols; ++j) {
        r[j] = a * r[j] - b * p[j];
        if (r[j] > cap || r[j] < -cap) return std::nullopt;
        I x = r[j] < 0 ? -r[j] : r[j];
        while (x != 0) {
          I t = g % x;
          g = x;
          x = t;
        }
      }
      if (g > 1) {
        for (std::size_t j = c; j < cols; ++j) r[j] /= g;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_big(const std::vector<std::vector<std::int64_t>>& in) {
  std::vector<std::vector<BigInt>> rows;
  std::size_t cols = 0;
  for (const auto& r : in) cols = std::max(cols, r.size());
  for (const auto& r : in) {
    std::vector<BigInt> row(cols);
    for (std::size_t j = 0; j < r.size(); ++j) row[j] = big_from_i64(r[j]);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const auto& p = rows[rank];
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      auto& r = rows[i];
      if (sgn(r[c]) == 0) continue;
      BigInt a = p[c], b = r[c], g = 0;
      for (std::size_t j = c; j < cols; ++j) {
        r[j] = a * r[j] - b * p[j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[j].get_mpz_t());
      }
      if (g > 1) {
        for (std::size_t j = c; j < cols; ++j) mpz_divexact(r[j].get_mpz_t(), r[j].get_mpz_t(), g.get_mpz_t());
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::int64_t> cut_vector_on(const Graph& g, VertexSet s,
                                        std::span<const EdgeId> coords) {
  std::vector<std::int64_t> v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = in_cut(g, coords[i], s) ? 1 : 0;
  return v;
}

}  // namespace

std::size_t exact_rank(std::vector<std::vector<std::int64_t>> rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (auto r = rank_small(rows)) return *r;
  return rank_big(rows);
}

SpanCheck span_equality_check(const Graph& g, const Face& f, const LaminarFamily& l, int limit) {
  std::vector<VertexSet> tight = tight_odd_sets(g, f, limit);
  if (!is_maximal_laminar(l, tight)) {
    throw PreconditionError("span_equality_check: family is not a maximal laminar subset of tight(F)");
  }
  std::vector<EdgeId> supp = support_of(f);
  std::vector<std::vector<std::int64_t>> lam, all;
  for (VertexSet s : l) lam.push_back(cut_vector_on(g, s, supp));
  for (VertexSet s : tight) all.push_back(cut_vector_on(g, s, supp));
  SpanCheck out;
  out.laminar_rank = exact_rank(lam);
  out.tight_rank = exact_rank(all);
  // l is a subset of tight(f), so equal ranks mean equal spans.
  out.equal = out.laminar_rank == out.tight_rank;
  return out;
}

UncrossResult uncross_pair(const Graph& g, const Face& f, VertexSet s, VertexSet t) {
  if (!is_tight(g, f, s) || !is_tight(g, f, t)) {
    throw PreconditionError("uncross_pair: both sets must be tight");
  }
  if (!s.crosses(t)) throw PreconditionError("uncross_pair: sets do not cross");
  UncrossResult out;
  out.odd_intersection = (s & t).is_odd();
  if (out.odd_intersection) {
    out.first = s & t;
    out.second = s | t;
  } else {
    out.first = s.minus(t);
    out.second = t.minus(s);
  }
  out.identity_holds = true;
  for (EdgeId e : support_of(f)) {
    int lhs = in_cut(g, e, s) + in_cut(g, e, t);
    int rhs = in_cut(g, e, out.first) + in_cut(g, e, out.second);
    if (lhs != rhs) {
      out.identity_holds = false;
      break;
    }
  }
  out.results_tight = is_tight(g, f, out.first) && is_tight(g, f, out.second);
  return out;
}

std::vector<EdgeId> interior_part(const Graph& g, const Matching& m, VertexSet s) {
  std::vector<EdgeId> out;
  for (EdgeId e : m.edges) {
    if (in_interior(g, e, s)) out.push_back(e);
  }
  return out;
}

bool is_contractible(const Graph& g, const Face& f, VertexSet s) {
  if (!is_tight(g, f, s)) {
    throw PreconditionError("is_contractible: " + s.to_string() + " is not tight");
  }
  std::vector<std::optional<std::vector<EdgeId>>> seen(g.num_edges());
  for (const Matching& m : f.matchings) {
    EdgeId boundary = -1;
    for (EdgeId e : m.edges) {
      if (in_cut(g, e, s)) boundary = e;
    }
    std::vector<EdgeId> inside = interior_part(g, m, s);
    auto& slot = seen[boundary];
    if (!slot) {
      slot = std::move(inside);
    } else if (*slot != inside) {
      return false;
    }
  }
  return true;
}

bool is_layer_contractible(const Graph& g, const Face& f, std::span<const VertexSet> chain,
                           int p, int r) {
  int k = static_cast<int>(chain.size());
  if (p < 1 || r < p || r > k) throw PreconditionError("is_layer_contractible: need 1 <= p <= r <= k");
  for (int i = 1; i < k; ++i) {
    if (!(chain[i - 1].subset_of(chain[i]) && chain[i - 1] != chain[i])) {
      throw PreconditionError("is_layer_contractible: chain is not strictly increasing");
    }
  }
  VertexSet outer = chain[r - 1];
  VertexSet inner = p == 1 ? VertexSet() : chain[p - 2];
  if (!is_tight(g, f, outer) || (p > 1 && !is_tight(g, f, inner))) {
    throw PreconditionError("is_layer_contractible: chain sets must be tight");
  }
  VertexSet layer = outer.minus(inner);
  std::map<std::pair<EdgeId, EdgeId>, std::vector<EdgeId>> seen;
  for (const Matching& m : f.matchings) {
    EdgeId e_in = -1, e_out = -1;
    for (EdgeId e : m.edges) {
      if (p > 1 && in_cut(g, e, inner)) e_in = e;
      if (in_cut(g, e, outer)) e_out = e;
    }
    std::vector<EdgeId> inside = interior_part(g, m, layer);
    auto [it, fresh] = seen.try_emplace({e_in, e_out}, inside);
    if (!fresh && it->second != inside) return false;
  }
  return true;
}

}  // namespace pmiso

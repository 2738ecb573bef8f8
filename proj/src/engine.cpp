#include "pmiso/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "pmiso/error.hpp"
#include "pmiso/rng.hpp"

namespace pmiso {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / base) return cap;
    r *= base;
  }
  return std::min(r, cap);
}

struct Witness {
  std::uint64_t k = 2;
  std::uint64_t t_max = 0;
};

// Smallest family member hitting every obligation, with the tMax schedule
// max(7, n^3 s), doubling up to min(n^20, 2^62).
Witness escalating_witness(const std::vector<ObligationVector>& ys, int n, int num_edges) {
  constexpr std::uint64_t kHardCap = std::uint64_t{1} << 62;
  const auto nn = static_cast<std::uint64_t>(std::max(n, 2));
  const std::uint64_t cap = saturating_pow(nn, 20, kHardCap);
  std::uint64_t t_max = saturating_pow(nn, 3, kHardCap);
  t_max = std::max<std::uint64_t>(7, t_max > kHardCap / std::max<std::size_t>(ys.size(), 1)
                                         ? kHardCap
                                         : t_max * std::max<std::size_t>(ys.size(), 1));
  t_max = std::min(t_max, cap);
  for (;;) {
    WitnessResult r = lem23_witness(ys, n, num_edges, t_max);
    if (r.k) return {*r.k, t_max};
    if (t_max >= cap) break;
    t_max = t_max > cap / 2 ? cap : t_max * 2;
  }
  throw VerificationError("no family member up to tMax = " + std::to_string(t_max) +
                          " separates the obligations");
}

int ceil_log2(int n) {
  int t = 0;
  while ((1 << t) < n) ++t;
  return t;
}

// Edge of m in delta(s), or -1. Tight sets give exactly one.
EdgeId cut_edge(const Graph& g, const Matching& m, VertexSet s) {
  for (EdgeId e : m.edges) {
    const Edge& ed = g.edge(e);
    if (s.contains(ed.u) != s.contains(ed.v)) return e;
  }
  return -1;
}

std::vector<EdgeId> inside(const Graph& g, const Matching& m, VertexSet u) {
  std::vector<EdgeId> out;
  for (EdgeId e : m.edges) {
    const Edge& ed = g.edge(e);
    if (u.contains(ed.u) && u.contains(ed.v)) out.push_back(e);
  }
  return out;
}

// Differences of distinct interiors on U = S_r \ S_{p-1} among matchings
// sharing both boundary edges.
void layer_obligations(const Graph& g, const Face& f, const std::vector<VertexSet>& chain, int p,
                       int r, std::set<ObligationVector>& out) {
  const VertexSet outer = chain[r - 1];
  const VertexSet inner = p > 1 ? chain[p - 2] : VertexSet{};
  const VertexSet u = outer.minus(inner);
  std::map<std::pair<EdgeId, EdgeId>, std::set<std::vector<EdgeId>>> groups;
  for (const Matching& m : f.matchings) {
    EdgeId lo = p > 1 ? cut_edge(g, m, inner) : -1;
    EdgeId hi = cut_edge(g, m, outer);
    groups[{lo, hi}].insert(inside(g, m, u));
  }
  const auto num_edges = static_cast<std::size_t>(g.num_edges());
  for (const auto& [key, interiors] : groups) {
    std::vector<std::vector<EdgeId>> list(interiors.begin(), interiors.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        ObligationVector y(num_edges, 0);
        for (EdgeId e : list[i]) y[e] += 1;
        for (EdgeId e : list[j]) y[e] -= 1;
        canonicalize_sign(y);
        out.insert(std::move(y));
      }
    }
  }
}

void check_members_contractible(const Graph& g, const Face& f, const LaminarFamily& l, int bound,
                                const char* where) {
  for (VertexSet s : l) {
    if (s.size() <= bound && !is_contractible(g, f, s)) {
      throw VerificationError(std::string(where) + ": member " + s.to_string() +
                              " is not contractible");
    }
  }
}

}  // namespace

FaceLaminarState initial_state(const Graph& g, const EngineOptions& opt) {
  FaceLaminarState st;
  st.face = perfect_matching_face(g, opt.limit);
  std::vector<VertexSet> tight = tight_odd_sets(g, st.face, opt.limit);
  st.laminar = extend_maximal_laminar(singleton_family(g.num_vertices()), tight, g.num_vertices());
  st.lambda = 1;
  GoodnessReport rep = is_lambda_good(g, st.face, st.laminar, 1, opt.limit);
  if (!rep.good) throw VerificationError("initial state is not 1-good: " + rep.detail);
  return st;
}

RemovalResult remove_short_circuits(const Graph& g, const Face& face, const LaminarFamily& laminar,
                                    int bound, int beta, const EngineOptions& opt) {
  for (VertexSet s : laminar) {
    if (s.size() <= beta && !is_contractible(g, face, s)) {
      throw PreconditionError("remove_short_circuits: member " + s.to_string() +
                              " of size <= beta is not contractible");
    }
  }
  ContractionMultigraph h = contraction_of(g, face, laminar, beta);
  if (!enumerate_alternating_circuits(h, bound / 2, true).empty()) {
    throw PreconditionError("remove_short_circuits: contraction has a circuit of node-weight <= " +
                            std::to_string(bound / 2));
  }
  std::vector<AlternatingCircuit> circuits = enumerate_alternating_circuits(h, bound);
  std::set<ObligationVector> lifted;
  for (const AlternatingCircuit& c : circuits) {
    ObligationVector y = lift_circuit_vector(g, face, h, c.indicator);
    canonicalize_sign(y);
    lifted.insert(std::move(y));
  }
  std::vector<ObligationVector> ys(lifted.begin(), lifted.end());
  const int n = g.num_vertices();
  Witness wit = escalating_witness(ys, n, g.num_edges());

  RemovalResult out;
  out.k = wit.k;
  out.t_max = wit.t_max;
  out.weight = weight_function(n, g.num_edges(), wit.k);
  out.face = face_min(face, out.weight);
  out.circuits = circuits.size();
  out.obligations = ys.size();
  for (const AlternatingCircuit& c : circuits) {
    if (respects_face_in_contraction(g, out.face, h, c.indicator, opt.limit)) {
      throw VerificationError("remove_short_circuits: a circuit still respects the new face");
    }
  }
  return out;
}

std::vector<std::vector<VertexSet>> chains_between(const LaminarFamily& l, int lambda) {
  std::vector<VertexSet> mid;
  for (VertexSet s : l) {
    if (s.size() > lambda && s.size() <= 2 * lambda) mid.push_back(s);
  }
  std::sort(mid.begin(), mid.end(),
            [](VertexSet a, VertexSet b) { return a.size() != b.size() ? a.size() < b.size() : set_order_less(a, b); });
  // Two disjoint members above lambda cannot fit in one of size <= 2 lambda,
  // so each member has at most one member of the range directly below it.
  std::vector<bool> used(mid.size(), false);
  std::vector<std::vector<VertexSet>> chains;
  for (std::size_t i = 0; i < mid.size(); ++i) {
    if (used[i]) continue;
    std::vector<VertexSet> chain{mid[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < mid.size(); ++j) {
      if (!used[j] && chain.back().subset_of(mid[j])) {
        chain.push_back(mid[j]);
        used[j] = true;
      }
    }
    chains.push_back(std::move(chain));
  }
  std::sort(chains.begin(), chains.end(),
            [](const auto& a, const auto& b) { return set_order_less(a.front(), b.front()); });
  return chains;
}

std::vector<std::pair<int, int>> layers_for_phase(int chain_length, int t) {
  std::vector<std::pair<int, int>> out;
  const int span = t <= 1 ? 0 : (1 << (t - 1)) - 1;
  for (int p = 1; p <= chain_length; ++p) {
    for (int r = p; r <= chain_length && r - p <= span; ++r) out.emplace_back(p, r);
  }
  return out;
}

int chain_phase_count(int n) { return std::max(1, ceil_log2(n)); }

ChainResult make_chains_contractible(const Graph& g, const FaceLaminarState& state,
                                     const EngineOptions& opt) {
  const int lambda = state.lambda;
  const int n = g.num_vertices();
  ChainResult out;
  out.face = state.face;
  std::vector<std::vector<VertexSet>> chains = chains_between(state.laminar, lambda);
  if (chains.empty()) return out;
  std::size_t longest = 0;
  for (const auto& c : chains) longest = std::max(longest, c.size());

  // Phase 1: circuits of node-weight <= 2 lambda in the lambda-contraction.
  {
    PhaseRecord rec;
    rec.kind = "chains-phase";
    rec.lambda_from = lambda;
    rec.lambda_to = 2 * lambda;
    rec.phase = 1;
    rec.bound = 2 * lambda;
    rec.beta = lambda;
    rec.face_before = out.face.size();
    RemovalResult rr = remove_short_circuits(g, out.face, state.laminar, 2 * lambda, lambda, opt);
    out.face = rr.face;
    rec.k = rr.k;
    rec.t_max = rr.t_max;
    rec.circuits = rr.circuits;
    rec.obligations = rr.obligations;
    rec.face_after = out.face.size();
    out.records.push_back(rec);
    out.weights.push_back({"chains t=1", 0, rr.k, rr.weight});
    for (const auto& c : chains) {
      for (int p = 1; p <= static_cast<int>(c.size()); ++p) {
        if (!is_layer_contractible(g, out.face, c, p, p)) {
          throw VerificationError("chain phase 1: layer " + std::to_string(p) + " of chain " +
                                  c.front().to_string() + " is not contractible");
        }
      }
    }
  }

  const int phases = chain_phase_count(n);
  for (int t = 2; t <= phases; ++t) {
    // Nothing new once every layer was already covered by phase t-1.
    if (longest <= (std::size_t{1} << (t - 2))) break;
    PhaseRecord rec;
    rec.kind = "chains-phase";
    rec.lambda_from = lambda;
    rec.lambda_to = 2 * lambda;
    rec.phase = t;
    rec.face_before = out.face.size();
    std::set<ObligationVector> obligations;
    for (const auto& c : chains) {
      for (auto [p, r] : layers_for_phase(static_cast<int>(c.size()), t)) {
        layer_obligations(g, out.face, c, p, r, obligations);
        ++rec.layers;
      }
    }
    std::vector<ObligationVector> ys(obligations.begin(), obligations.end());
    Witness wit = escalating_witness(ys, n, g.num_edges());
    WeightFunction w = weight_function(n, g.num_edges(), wit.k);
    out.face = face_min(out.face, w);
    rec.k = wit.k;
    rec.t_max = wit.t_max;
    rec.obligations = ys.size();
    rec.face_after = out.face.size();
    out.records.push_back(rec);
    out.weights.push_back({"chains t=" + std::to_string(t), 0, wit.k, std::move(w)});
    for (const auto& c : chains) {
      for (auto [p, r] : layers_for_phase(static_cast<int>(c.size()), t)) {
        if (!is_layer_contractible(g, out.face, c, p, r)) {
          throw VerificationError("chain phase " + std::to_string(t) + ": layer (" +
                                  std::to_string(p) + "," + std::to_string(r) +
                                  ") is not contractible");
        }
      }
    }
  }
  check_members_contractible(g, out.face, state.laminar, 2 * lambda, "make_chains_contractible");
  return out;
}

FaceLaminarState advance_lambda(const Graph& g, const FaceLaminarState& state,
                                const EngineOptions& opt) {
  const int lambda = state.lambda;
  const int advance = 1 + ceil_log2(lambda);
  ChainResult chains = make_chains_contractible(g, state, opt);

  FaceLaminarState next;
  next.weight_log = state.weight_log;
  next.audit = state.audit;
  for (LoggedWeight& lw : chains.weights) {
    lw.advance = advance;
    next.weight_log.push_back(std::move(lw));
  }
  for (PhaseRecord& rec : chains.records) {
    rec.advance = advance;
    next.audit.push_back(rec);
  }

  PhaseRecord rec;
  rec.kind = "remove-circuits";
  rec.advance = advance;
  rec.lambda_from = lambda;
  rec.lambda_to = 2 * lambda;
  rec.bound = 2 * lambda;
  rec.beta = 2 * lambda;
  rec.face_before = chains.face.size();
  RemovalResult rr =
      remove_short_circuits(g, chains.face, state.laminar, 2 * lambda, 2 * lambda, opt);
  rec.k = rr.k;
  rec.t_max = rr.t_max;
  rec.circuits = rr.circuits;
  rec.obligations = rr.obligations;
  rec.face_after = rr.face.size();
  next.audit.push_back(rec);
  next.weight_log.push_back({"remove-circuits", advance, rr.k, rr.weight});

  next.face = std::move(rr.face);
  next.lambda = 2 * lambda;
  std::vector<VertexSet> tight = tight_odd_sets(g, next.face, opt.limit);
  next.laminar = extend_maximal_laminar(state.laminar, tight, g.num_vertices());
  GoodnessReport rep = is_lambda_good(g, next.face, next.laminar, next.lambda, opt.limit);
  if (!rep.good) {
    throw VerificationError("advance to lambda = " + std::to_string(next.lambda) +
                            " is not good: " + rep.detail);
  }
  return next;
}

WeightFunction compose_advance(const std::vector<WeightFunction>& ws, int n) {
  if (ws.empty()) throw PreconditionError("compose_advance: empty weight sequence");
  WeightFunction acc = ws.front();
  const BigInt padding = concat_padding(n);
  for (std::size_t i = 1; i < ws.size(); ++i) acc = concat(acc, ws[i], padding, n);
  return acc;
}

namespace {

WeightFunction compose_log(const std::vector<LoggedWeight>& log, int n, int num_edges) {
  std::map<int, std::vector<WeightFunction>> by_advance;
  for (const LoggedWeight& lw : log) by_advance[lw.advance].push_back(lw.weight);
  if (by_advance.empty()) {
    return WeightFunction{std::vector<BigInt>(static_cast<std::size_t>(num_edges), BigInt(0)),
                          "zero"};
  }
  const int l = chain_phase_count(n);
  const BigInt padding = big_pow(BigInt(n), static_cast<unsigned long>(21 * (l + 1)));
  std::optional<WeightFunction> acc;
  for (const auto& [adv, ws] : by_advance) {
    WeightFunction step = compose_advance(ws, n);
    acc = acc ? concat(*acc, step, padding, n) : step;
  }
  acc->provenance = "derandomized(" + std::to_string(log.size()) + " family members)";
  return *acc;
}

}  // namespace

IsolationCertificate isolate_derandomized(const Graph& g, const EngineOptions& opt) {
  const int n = g.num_vertices();
  if (n > opt.limit) {
    throw SizeGuardError("isolate_derandomized: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(opt.limit));
  }
  FaceLaminarState st = initial_state(g, opt);
  int advances = 0;
  while (st.lambda < n) {
    st = advance_lambda(g, st, opt);
    ++advances;
  }
  if (!st.face.is_singleton()) {
    throw VerificationError("final face has " + std::to_string(st.face.size()) + " matchings");
  }
  IsolationCertificate cert;
  cert.mode = "derandomized";
  cert.weight = compose_log(st.weight_log, n, g.num_edges());
  cert.matching = st.face.matchings.front();
  cert.audit = std::move(st.audit);
  cert.weight_log = std::move(st.weight_log);
  cert.advances = advances;
  cert.final_lambda = st.lambda;

  std::vector<Matching> argmin = minimum_weight_matchings(g, cert.weight.values, opt.limit);
  cert.brute_force_isolating = argmin.size() == 1;
  if (!cert.brute_force_isolating || argmin.front() != cert.matching) {
    throw VerificationError("composed weight does not isolate the final face's matching");
  }
  SearchOptions so;
  so.weight_hint = matching_weight(cert.matching, cert.weight.values);
  so.dyadic_vertex_limit = opt.limit;
  cert.mvv = mvv_search(g, cert.weight.values, so);
  if (cert.mvv.status != SearchStatus::kFound || cert.mvv.matching != cert.matching) {
    throw VerificationError("mvv_search disagrees with the final face: " + cert.mvv.detail);
  }
  return cert;
}

bool has_perfect_matching(const Graph& g, std::uint64_t seed, int limit) {
  if (g.num_vertices() <= limit) return has_perfect_matching_brute_force(g, limit);
  constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;
  return decide_random(g, derive_seed(seed, ~std::uint64_t{0}), 8, kMersenne61).has_perfect_matching;
}

IsolationOutcome isolate_randomized(const Graph& g, std::uint64_t seed, std::uint64_t max_trials,
                                    const EngineOptions& opt) {
  IsolationOutcome out;
  const int n = g.num_vertices();
  const bool brute = n <= opt.limit;
  // D = 0 on a draw does not rule out a perfect matching (tied minimum terms
  // can cancel), so existence is settled once, up front.
  if (!has_perfect_matching(g, seed, opt.limit)) {
    out.status = IsolationStatus::kNoPerfectMatching;
    return out;
  }
  for (std::uint64_t trial = 1; trial <= max_trials; ++trial) {
    out.trials = trial;
    WeightFunction w = random_weights(g, derive_seed(seed, trial - 1));
    SearchOutcome so = mvv_search(g, w.values);
    bool isolating = false;
    if (brute) {
      std::vector<Matching> argmin = minimum_weight_matchings(g, w.values, opt.limit);
      isolating = argmin.size() == 1;
      if (isolating && (so.status != SearchStatus::kFound || so.matching != argmin.front())) {
        throw VerificationError("mvv_search missed the unique minimum on an isolating draw");
      }
    } else {
      isolating = so.status == SearchStatus::kFound;
    }
    if (!isolating) continue;
    IsolationCertificate cert;
    cert.mode = "randomized";
    cert.weight = std::move(w);
    cert.matching = so.matching;
    cert.trials = trial;
    cert.seed = seed;
    cert.brute_force_isolating = brute;
    cert.mvv = std::move(so);
    out.certificate = std::move(cert);
    out.status = IsolationStatus::kCertified;
    return out;
  }
  out.status = IsolationStatus::kTrialsExhausted;
  return out;
}

}  // namespace pmiso

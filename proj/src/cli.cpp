#include "pmiso/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pmiso/contraction.hpp"
#include "pmiso/engine.hpp"
#include "pmiso/error.hpp"
#include "pmiso/face.hpp"
#include "pmiso/graph.hpp"
#include "pmiso/kernels.hpp"
#include "pmiso/rng.hpp"
#include "pmiso/tutte.hpp"
#include "pmiso/weights.hpp"

namespace pmiso::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string graph_path;
  bool pretty = false;
  bool json = true;
  bool no_timing = false;
  int limit = kDefaultOracleLimit;
};

void add_common(CLI::App* sub, Common& c, bool with_graph) {
  if (with_graph) sub->add_option("--graph", c.graph_path, "graph file ('-' or absent: stdin)");
  sub->add_flag("--pretty", c.pretty, "indented JSON");
  sub->add_flag("--json", c.json, "JSON output (default)");
  sub->add_flag("--no-timing", c.no_timing, "report ms as 0");
  sub->add_option("--limit", c.limit, "brute-force size guard")->check(CLI::Range(1, kMaxVertices));
}

Graph load_graph(const Common& c, std::istream& in) {
  std::string text;
  if (c.graph_path.empty() || c.graph_path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(c.graph_path);
    if (!f) throw ParseError(ParseErrorCode::kMalformed, 0, "cannot open " + c.graph_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return parse_graph(text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

BigInt parse_big(const std::string& s) {
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) {
    throw ParseError(ParseErrorCode::kMalformed, 0, "not an integer: '" + s + "'");
  }
  return BigInt(s);
}

std::uint64_t parse_u64(const std::string& s) {
  BigInt b = parse_big(s);
  if (b < 0 || !big_fits_u64(b)) throw ParseError(ParseErrorCode::kMalformed, 0, "out of range: " + s);
  return big_to_u64(b);
}

Json big_list(std::span<const BigInt> v) {
  Json a = Json::array();
  for (const BigInt& x : v) a.push_back(to_decimal(x));
  return a;
}

Json label_list(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

Json edge_list(std::span<const EdgeId> v) {
  Json a = Json::array();
  for (EdgeId e : v) a.push_back(e + 1);
  return a;
}

Json set_list(std::span<const VertexSet> v) {
  Json a = Json::array();
  for (VertexSet s : v) a.push_back(label_list(s.labels()));
  return a;
}

Json search_json(const SearchOutcome& so) {
  Json r;
  r["status"] = search_status_name(so.status);
  r["backend"] = search_backend_name(so.backend);
  if (so.status == SearchStatus::kFound) r["matching"] = edge_list(so.matching.edges);
  r["minWeight"] = to_decimal(so.min_weight);
  r["ord2D"] = to_decimal(so.twice_min_weight);
  if (so.det_bit_length) r["detBitLength"] = *so.det_bit_length;
  Json verdicts = Json::array();
  for (const EdgeVerdict& v : so.verdicts) {
    Json e;
    e["edge"] = v.edge + 1;
    e["vanishes"] = v.vanishes;
    e["ord2"] = v.ord2 ? Json(to_decimal(*v.ord2)) : Json(nullptr);
    e["member"] = v.member;
    verdicts.push_back(e);
  }
  r["verdicts"] = verdicts;
  if (!so.detail.empty()) r["detail"] = so.detail;
  return r;
}

Json certificate_json(const IsolationCertificate& c) {
  Json r;
  r["mode"] = c.mode;
  r["matching"] = edge_list(c.matching.edges);
  r["weights"] = big_list(c.weight.values);
  r["provenance"] = c.weight.provenance;
  if (c.mode == "randomized") {
    r["trials"] = c.trials;
  } else {
    r["advances"] = c.advances;
    r["finalLambda"] = c.final_lambda;
    Json log = Json::array();
    for (const LoggedWeight& lw : c.weight_log) {
      Json e;
      e["advance"] = lw.advance;
      e["label"] = lw.label;
      e["k"] = lw.k;
      log.push_back(e);
    }
    r["weightLog"] = log;
    Json audit = Json::array();
    for (const PhaseRecord& p : c.audit) {
      Json e;
      e["kind"] = p.kind;
      e["advance"] = p.advance;
      e["lambdaFrom"] = p.lambda_from;
      e["lambdaTo"] = p.lambda_to;
      if (p.kind == "chains-phase") e["phase"] = p.phase;
      if (p.bound != 0) {
        e["bound"] = p.bound;
        e["beta"] = p.beta;
        e["circuits"] = p.circuits;
      }
      if (p.layers != 0) e["layers"] = p.layers;
      e["obligations"] = p.obligations;
      e["k"] = p.k;
      e["tMax"] = p.t_max;
      e["faceBefore"] = p.face_before;
      e["faceAfter"] = p.face_after;
      audit.push_back(e);
    }
    r["audit"] = audit;
  }
  Json v;
  v["bruteForceIsolating"] = c.brute_force_isolating;
  v["mvvBackend"] = search_backend_name(c.mvv.backend);
  v["mvvMatching"] = edge_list(c.mvv.matching.edges);
  v["minWeight"] = to_decimal(c.mvv.min_weight);
  r["verification"] = v;
  return r;
}

// Face of PM(G) cut down by an optional explicit weight vector and then by
// the listed family members, in order.
Face face_from_flags(const Graph& g, const std::string& edge_weights, const std::string& family,
                     int limit) {
  Face f = perfect_matching_face(g, limit);
  if (!edge_weights.empty()) {
    WeightFunction w;
    for (const std::string& s : split(edge_weights, ',')) w.values.push_back(parse_big(s));
    if (static_cast<int>(w.values.size()) != g.num_edges()) {
      throw DomainError("--edge-weights: expected " + std::to_string(g.num_edges()) + " values");
    }
    w.provenance = "explicit";
    f = face_min(f, w);
  }
  if (!family.empty()) {
    for (const std::string& s : split(family, ',')) {
      f = face_min(f, weight_function(g.num_vertices(), g.num_edges(), parse_u64(s)));
    }
  }
  return f;
}

Json face_json(const Graph& g, const Face& f, int limit) {
  Json r;
  Json ms = Json::array();
  for (const Matching& m : f.matchings) ms.push_back(edge_list(m.edges));
  r["size"] = f.size();
  r["matchings"] = ms;
  r["support"] = edge_list(support_of(f));
  std::vector<VertexSet> tight = tight_odd_sets(g, f, limit);
  r["tightSets"] = set_list(tight);
  LaminarFamily l = extend_maximal_laminar(singleton_family(g.num_vertices()), tight,
                                           g.num_vertices());
  r["laminarFamily"] = set_list(l);
  return r;
}

struct Options {
  Common common;
  // decide
  std::string prime = "1000003";
  std::uint64_t trials = 5;
  std::optional<std::uint64_t> seed;
  // search
  bool random_weights = false;
  std::string weights;
  std::optional<std::uint64_t> family_k;
  // isolate
  bool randomized = false;
  bool derandomized = false;
  std::uint64_t max_trials = 64;
  // weights
  int n = 0;
  std::optional<int> m;
  std::uint64_t k = 0;
  std::string concat;
  int padding_exp = 21;
  // face / goodness
  std::string edge_weights;
  std::string family;
  int lambda = 1;
  // bench
  int reps = 3;
};

Json run_decide(const Options& o, const Graph& g) {
  DecisionResult d = decide_random(g, *o.seed, o.trials, parse_u64(o.prime));
  Json r;
  r["hasPerfectMatching"] = d.has_perfect_matching;
  r["prime"] = o.prime;
  r["trials"] = d.trials_run;
  return r;
}

Json run_search(const Options& o, const Graph& g) {
  const int chosen = (o.random_weights ? 1 : 0) + (o.weights.empty() ? 0 : 1) + (o.family_k ? 1 : 0);
  if (chosen != 1) {
    throw ParseError(ParseErrorCode::kMalformed, 0,
                     "search needs exactly one of --random-weights, --weights, --family");
  }
  WeightFunction w;
  if (o.random_weights) {
    if (!o.seed) throw ParseError(ParseErrorCode::kMalformed, 0, "--random-weights requires --seed");
    w = random_weights(g, *o.seed);
  } else if (o.family_k) {
    w = weight_function(g.num_vertices(), g.num_edges(), *o.family_k);
  } else {
    for (const std::string& s : split(o.weights, ',')) w.values.push_back(parse_big(s));
    w.provenance = "explicit";
  }
  SearchOptions so;
  so.dyadic_vertex_limit = o.common.limit;
  SearchOutcome out = mvv_search(g, w.values, so);
  if (out.status == SearchStatus::kNoPerfectMatching) {
    if (!has_perfect_matching(g, o.seed.value_or(0), o.common.limit)) {
      throw DomainError("no perfect matching");
    }
    out.status = SearchStatus::kIsolationFailure;
    out.detail = "det(T) = 0 although G has a perfect matching: tied minimum terms cancel";
  }
  Json r;
  r["weights"] = big_list(w.values);
  r["provenance"] = w.provenance;
  r.update(search_json(out));
  return r;
}

Json run_isolate(const Options& o, const Graph& g) {
  if (o.randomized == o.derandomized) {
    throw ParseError(ParseErrorCode::kMalformed, 0,
                     "isolate needs exactly one of --randomized, --derandomized");
  }
  EngineOptions eo;
  eo.limit = o.common.limit;
  if (o.derandomized) return certificate_json(isolate_derandomized(g, eo));
  if (!o.seed) throw ParseError(ParseErrorCode::kMalformed, 0, "--randomized requires --seed");
  IsolationOutcome out = isolate_randomized(g, *o.seed, o.max_trials, eo);
  if (out.status == IsolationStatus::kNoPerfectMatching) throw DomainError("no perfect matching");
  if (out.status == IsolationStatus::kTrialsExhausted) {
    throw DomainError("no isolating draw in " + std::to_string(out.trials) + " trials");
  }
  return certificate_json(*out.certificate);
}

Json run_weights(const Options& o) {
  if (o.n < 1 || o.n > kMaxVertices) throw DomainError("--n must be in [1, 64]");
  const int m = o.m ? *o.m : o.n * (o.n - 1) / 2;
  if (m < 0) throw DomainError("--m must be nonnegative");
  WeightFunction w = weight_function(o.n, m, o.k);
  Json r;
  r["n"] = o.n;
  r["m"] = m;
  r["base"] = family_base(o.n);
  r["k"] = o.k;
  if (!o.concat.empty()) {
    const BigInt padding = big_pow(BigInt(o.n), static_cast<unsigned long>(o.padding_exp));
    Json chain = Json::array({o.k});
    for (const std::string& s : split(o.concat, ',')) {
      std::uint64_t k2 = parse_u64(s);
      w = concat(w, weight_function(o.n, m, k2), padding, o.n);
      chain.push_back(k2);
    }
    r["concat"] = chain;
    r["paddingExponent"] = o.padding_exp;
  }
  r["provenance"] = w.provenance;
  r["values"] = big_list(w.values);
  return r;
}

Json run_goodness(const Options& o, const Graph& g) {
  Face f = face_from_flags(g, o.edge_weights, o.family, o.common.limit);
  std::vector<VertexSet> tight = tight_odd_sets(g, f, o.common.limit);
  LaminarFamily l = extend_maximal_laminar(singleton_family(g.num_vertices()), tight,
                                           g.num_vertices());
  GoodnessReport rep = is_lambda_good(g, f, l, o.lambda, o.common.limit);
  Json r;
  r["lambda"] = o.lambda;
  r["faceSize"] = f.size();
  r["laminarFamily"] = set_list(l);
  r["good"] = rep.good;
  r["failedClause"] = clause_name(rep.failed);
  r["setWitness"] = rep.set_witness ? label_list(rep.set_witness->labels()) : Json(nullptr);
  if (rep.circuit_witness) {
    const AlternatingCircuit& c = *rep.circuit_witness;
    Json cw;
    cw["nodes"] = c.nodes;
    cw["edges"] = c.edges;
    cw["nodeWeight"] = c.node_weight;
    cw["indicator"] = c.indicator;
    r["circuitWitness"] = cw;
  } else {
    r["circuitWitness"] = nullptr;
  }
  if (!rep.detail.empty()) r["detail"] = rep.detail;
  return r;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json run_bench(const Options& o, std::optional<Graph> g) {
  Json r = Json::object();
  if (!g) return r;
  const int reps = std::max(1, o.reps);
  const bool timing = !o.common.no_timing;
  std::vector<std::uint64_t> mat;
  const int n = g->num_vertices();
  const std::uint64_t p = 2147483629;  // largest prime below 2^31
  Json det = Json::object();
  for (kernels::Variant v : {kernels::Variant::kScalar, kernels::Variant::kAvx2}) {
    const kernels::KernelTable* t =
        v == kernels::Variant::kScalar ? &kernels::scalar_table() : kernels::avx2_table();
    if (t == nullptr) continue;
    const kernels::Variant previous = kernels::active().variant;
    kernels::select(v);
    Rng rng(derive_seed(o.seed.value_or(0), 0));
    mat.assign(static_cast<std::size_t>(n) * n, 0);
    for (const Edge& e : g->edges()) {
      std::uint64_t x = rng.below(p - 1) + 1;
      mat[e.u * n + e.v] = x;
      mat[e.v * n + e.u] = p - x;
    }
    auto t0 = Clock::now();
    std::uint64_t acc = 0;
    for (int i = 0; i < reps; ++i) acc ^= determinant_mod_p(mat, n, p);
    Json e;
    e["ms"] = timing ? ms_since(t0) : 0.0;
    e["checksum"] = acc;
    det[t->name] = e;
    kernels::select(previous);
  }
  r["reps"] = reps;
  r["determinantModP"] = det;
  if (n <= o.common.limit && has_perfect_matching_brute_force(*g, o.common.limit)) {
    EngineOptions eo;
    eo.limit = o.common.limit;
    auto t0 = Clock::now();
    IsolationCertificate c = isolate_derandomized(*g, eo);
    Json e;
    e["ms"] = timing ? ms_since(t0) : 0.0;
    e["weightLogLength"] = c.weight_log.size();
    r["isolateDerandomized"] = e;
  }
  return r;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kParse: return kExitParse;
    case ErrorKind::kSizeGuard: return kExitSizeGuard;
    case ErrorKind::kDomain:
    case ErrorKind::kPrecondition: return kExitDomain;
    case ErrorKind::kVerification: return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  Options o;
  CLI::App app{"Perfect-matching isolation toolkit"};
  app.require_subcommand(1, 1);

  CLI::App* decide = app.add_subcommand("decide", "randomized Tutte-matrix decision");
  add_common(decide, o.common, true);
  decide->add_option("--prime", o.prime, "prime modulus > n^2");
  decide->add_option("--trials", o.trials, "independent trials");
  decide->add_option("--seed", o.seed, "RNG seed")->required();

  CLI::App* search = app.add_subcommand("search", "MVV search for the isolated matching");
  add_common(search, o.common, true);
  search->add_flag("--random-weights", o.random_weights, "uniform weights in [1, 2|E|]");
  search->add_option("--weights", o.weights, "comma-separated edge weights");
  search->add_option("--family", o.family_k, "family member w_k");
  search->add_option("--seed", o.seed, "RNG seed");

  CLI::App* isolate = app.add_subcommand("isolate", "isolating weight certificate");
  add_common(isolate, o.common, true);
  isolate->add_flag("--randomized", o.randomized, "seeded random draws");
  isolate->add_flag("--derandomized", o.derandomized, "deterministic construction");
  isolate->add_option("--seed", o.seed, "RNG seed");
  isolate->add_option("--max-trials", o.max_trials, "draw limit for --randomized");

  CLI::App* weights = app.add_subcommand("weights", "dump a family member");
  add_common(weights, o.common, false);
  weights->add_option("--n", o.n, "vertex count")->required();
  weights->add_option("--k", o.k, "modulus k >= 2")->required();
  weights->add_option("--m", o.m, "edge count (default n(n-1)/2)");
  weights->add_option("--concat", o.concat, "comma-separated k values appended in order");
  weights->add_option("--padding-exp", o.padding_exp, "padding n^E for --concat")
      ->check(CLI::Range(1, 4096));

  CLI::App* face = app.add_subcommand("face", "face of PM(G) under weights");
  add_common(face, o.common, true);
  face->add_option("--weights", o.family, "comma-separated family members k, applied in order");
  face->add_option("--edge-weights", o.edge_weights, "explicit weights, applied first");

  CLI::App* goodness = app.add_subcommand("goodness", "lambda-goodness verdict");
  add_common(goodness, o.common, true);
  goodness->add_option("--lambda", o.lambda, "threshold")->required()->check(CLI::PositiveNumber);
  goodness->add_option("--weights", o.family, "comma-separated family members k, applied in order");
  goodness->add_option("--edge-weights", o.edge_weights, "explicit weights, applied first");

  CLI::App* bench = app.add_subcommand("bench", "timings");
  add_common(bench, o.common, true);
  bench->add_option("--reps", o.reps, "repetitions");
  bench->add_option("--seed", o.seed, "RNG seed");

  std::vector<std::string> storage{"pmiso_cli"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  const Common& c = o.common;
  try {
    auto t0 = Clock::now();
    Json result;
    if (verb == "decide") {
      result = run_decide(o, load_graph(c, in));
    } else if (verb == "search") {
      result = run_search(o, load_graph(c, in));
    } else if (verb == "isolate") {
      result = run_isolate(o, load_graph(c, in));
    } else if (verb == "weights") {
      result = run_weights(o);
    } else if (verb == "face") {
      Graph g = load_graph(c, in);
      result = face_json(g, face_from_flags(g, o.edge_weights, o.family, c.limit), c.limit);
    } else if (verb == "goodness") {
      result = run_goodness(o, load_graph(c, in));
    } else {
      std::optional<Graph> g;
      if (!c.graph_path.empty()) g = load_graph(c, in);
      result = run_bench(o, g);
    }
    Json report;
    report["verb"] = verb;
    if (o.seed) report["seed"] = std::to_string(*o.seed);
    report["result"] = result;
    report["ms"] = c.no_timing ? std::int64_t{0}
                               : static_cast<std::int64_t>(ms_since(t0));
    out << (c.pretty ? report.dump(2) : report.dump()) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace pmiso::cli

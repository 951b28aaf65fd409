// ftcut: batch driver for the library. One verb per run; every run writes a
// JSON report (plus a timestamp sidecar) and exits 0 on success, 2 when the
// oracle disagrees, 1 on usage or runtime errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ftcut/certificates.hpp"
#include "ftcut/derand.hpp"
#include "ftcut/edgeconn.hpp"
#include "ftcut/mincut.hpp"
#include "ftcut/oracle.hpp"
#include "ftcut/report.hpp"

namespace {

using namespace ftcut;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kMismatch = 2;

struct Common {
  std::string graph_file;
  std::string gen_spec;
  std::uint64_t gen_seed = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string stem;
  std::size_t cap_n = 20;
  std::uint32_t cap_lambda = 3;
  bool no_oracle = false;
  std::uint32_t bit_budget = 0;
};

struct Params {
  std::uint32_t lambda = 1;
  std::uint32_t cap = kDefaultCutCap;  // oracle verb
  double epsilon = 0.0;
  std::uint32_t k = 2;
  std::uint32_t f = 1;
  double scale = 1.0;
  std::uint64_t iterations = 0;
  bool early_exit = false;
  bool deterministic = false;
  std::string preset = "conservative";
  std::string faults = "edges";
  std::vector<std::uint32_t> edges;
  std::size_t n = 0, a = 0, b = 0;
  std::string mode = "exhaustive";
  std::uint64_t trials = 10000;
  std::string output;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("FTCUT_OUT_DIR"); env && *env) return env;
  return "ftcut-out";
}

Multigraph load(const Common& c) {
  if (!c.graph_file.empty() && !c.gen_spec.empty()) throw Error("give either --graph or --gen, not both");
  if (!c.graph_file.empty()) return load_graph_file(c.graph_file);
  if (!c.gen_spec.empty()) return generate(GeneratorSpec::parse(c.gen_spec), c.gen_seed);
  throw Error("a graph source is required (--graph FILE or --gen SPEC)");
}

ordered_json common_config(const std::string& verb, const Common& c) {
  ordered_json j;
  j["command"] = verb;
  if (!c.graph_file.empty()) j["graph"] = c.graph_file;
  if (!c.gen_spec.empty()) {
    j["generator"] = GeneratorSpec::parse(c.gen_spec).to_string();
    j["generator_seed"] = c.gen_seed;
  }
  j["oracle_cap_n"] = c.cap_n;
  j["oracle_cap_lambda"] = c.cap_lambda;
  j["oracle"] = !c.no_oracle;
  j["bit_budget"] = c.bit_budget;
  return j;
}

bool oracle_allowed(const Common& c, const Multigraph& g, std::uint32_t lambda) {
  return !c.no_oracle && g.node_count() <= c.cap_n && lambda <= c.cap_lambda;
}

ordered_json unchecked(const Common& c) {
  return {{"status", c.no_oracle ? "disabled" : "unchecked"}};
}

int finish(Report& report, const Common& c, const std::string& verb, const RoundReport* rounds) {
  if (rounds) report.transcript = to_json(*rounds);
  const std::string dir = c.out_dir.empty() ? default_out_dir() : c.out_dir;
  const std::string path = write_report(report, dir, c.stem.empty() ? verb : c.stem);
  const std::string status = report.oracle.value("status", "not-applicable");
  std::cout << verb << ": " << report.result.dump() << "\n";
  std::cout << "oracle: " << status << "\nreport: " << path << "\n";
  return status == "disagree" ? kMismatch : kOk;
}

SimConfig sim_config(const Common& c) {
  SimConfig cfg;
  cfg.bit_budget = c.bit_budget;
  cfg.keep_log = false;
  return cfg;
}

// ---- verbs ---------------------------------------------------------------------

int run_mincut(const std::string& verb, const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  Report report;
  report.command = verb;
  report.config = common_config(verb, c);
  report.config["lambda"] = p.lambda;
  CutResult r;
  if (verb == "mincut-det") {
    r = deterministic_min_cut(sim, p.lambda);
    report.seeds = ordered_json::object();
  } else {
    CutOptions opt;
    opt.scale = p.scale;
    opt.early_exit = p.early_exit;
    if (p.iterations) opt.iterations = p.iterations;
    report.config["scale"] = p.scale;
    report.config["early_exit"] = p.early_exit;
    report.config["iterations"] = p.iterations;
    report.seeds["master"] = c.seed;
    r = randomized_min_cut(sim, p.lambda, c.seed, opt);
  }
  report.result = to_json(r);
  if (oracle_allowed(c, g, p.lambda)) {
    const OracleCut o = min_cut_oracle(g, std::nullopt, std::nullopt, p.lambda);
    const bool value_ok = o.above_cap ? !r.value.has_value() : (r.value && *r.value == o.value);
    const bool witness_ok = !r.value || disconnects(g, r.witness);
    report.oracle["status"] = value_ok && witness_ok ? "agree" : "disagree";
    report.oracle["value"] = o.above_cap ? ordered_json(">" + std::to_string(p.cap)) : ordered_json(o.value);
    report.oracle["witness_disconnects"] = witness_ok;
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, verb, &sim.totals());
}

int run_vertexcut(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  CutOptions opt;
  opt.scale = p.scale;
  opt.early_exit = p.early_exit;
  if (p.iterations) opt.iterations = p.iterations;
  const CutResult r = randomized_vertex_cut(sim, p.lambda, c.seed, opt);
  Report report;
  report.command = "vertexcut";
  report.config = common_config("vertexcut", c);
  report.config["lambda"] = p.lambda;
  report.config["scale"] = p.scale;
  report.config["early_exit"] = p.early_exit;
  report.config["iterations"] = p.iterations;
  report.seeds["master"] = c.seed;
  report.result = to_json(r);
  if (oracle_allowed(c, g, p.lambda)) {
    const OracleCut o = vertex_connectivity_oracle(g, p.lambda);
    const bool ok = o.above_cap ? !r.value.has_value() : (r.value && *r.value == o.value);
    report.oracle["status"] = ok ? "agree" : "disagree";
    report.oracle["value"] = o.above_cap ? ordered_json(">" + std::to_string(p.cap)) : ordered_json(o.value);
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, "vertexcut", &sim.totals());
}

int run_verify(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  const auto lambda = std::max<std::uint32_t>(p.lambda, static_cast<std::uint32_t>(std::max<std::size_t>(1, p.edges.size())));
  const VerifyResult v = verify_cut(sim, p.edges, lambda);
  Report report;
  report.command = "verify-cut";
  report.config = common_config("verify-cut", c);
  report.config["edges"] = p.edges;
  report.config["lambda"] = lambda;
  report.result = {{"is_cut", v.is_cut}, {"rounds", v.rounds}, {"depth_cap", v.depth_cap}};
  if (!c.no_oracle && g.node_count() <= c.cap_n) {
    const bool truth = disconnects(g, p.edges);
    report.oracle = {{"status", truth == v.is_cut ? "agree" : "disagree"}, {"is_cut", truth}};
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, "verify-cut", &sim.totals());
}

int run_edgeconn(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  EdgeConnOptions opt;
  opt.deterministic = p.deterministic;
  if (p.preset == "conservative")
    opt.preset = SamplingPreset::conservative;
  else if (p.preset == "lean")
    opt.preset = SamplingPreset::lean;
  else
    throw Error("unknown preset '" + p.preset + "'");
  opt.seed = c.seed;
  opt.scale = p.scale;
  opt.early_exit = p.early_exit;
  if (p.iterations) opt.iterations = p.iterations;
  const EdgeConnMap map = all_edge_connectivities(sim, p.lambda, opt);

  Report report;
  report.command = "edgeconn";
  report.config = common_config("edgeconn", c);
  report.config["lambda"] = p.lambda;
  report.config["deterministic"] = p.deterministic;
  report.config["preset"] = p.preset;
  report.config["scale"] = p.scale;
  report.config["early_exit"] = p.early_exit;
  report.config["iterations"] = p.iterations;
  if (!p.deterministic) report.seeds["master"] = c.seed;
  report.result = ordered_json::parse(edgeconn_summary_json(map));
  ordered_json per_edge = ordered_json::array();
  for (const Edge& e : g.edges()) {
    const auto v = map.lambda_e[e.id];
    per_edge.push_back(v > p.lambda ? ordered_json(">=" + std::to_string(p.lambda + 1)) : ordered_json(v));
  }
  report.result["lambda_e"] = per_edge;

  const std::string dir = c.out_dir.empty() ? default_out_dir() : c.out_dir;
  std::filesystem::create_directories(dir);
  const std::string csv = (std::filesystem::path(dir) / ((c.stem.empty() ? "edgeconn" : c.stem) + ".csv")).string();
  std::ofstream(csv) << edgeconn_csv(g, map);
  report.result["csv"] = std::filesystem::path(csv).filename().string();

  if (oracle_allowed(c, g, p.lambda)) {
    ordered_json diff = ordered_json::array();
    for (const Edge& e : g.edges()) {
      const auto truth = std::min<std::uint64_t>(max_flow_value(g, e.u, e.v, p.lambda + 1ULL), p.lambda);
      const auto got = std::min<std::uint64_t>(map.lambda_e[e.id], p.lambda);
      if (truth != got) diff.push_back({{"edge", e.id}, {"oracle", truth}, {"reported", got}});
    }
    report.oracle["status"] = diff.empty() ? "agree" : "disagree";
    report.oracle["mismatches"] = diff;
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, "edgeconn", &sim.totals());
}

int run_certificate(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  const bool karger = p.epsilon > 0.0;
  const CertificateResult cert =
      karger ? karger_certificate(sim, p.lambda, p.epsilon, c.seed) : sparse_certificate(sim, p.lambda, c.seed);
  Report report;
  report.command = "certificate";
  report.config = common_config("certificate", c);
  report.config["lambda"] = p.lambda;
  report.config["epsilon"] = p.epsilon;
  report.seeds["master"] = c.seed;
  report.result = ordered_json::parse(certificate_json(cert));

  const std::string dir = c.out_dir.empty() ? default_out_dir() : c.out_dir;
  std::filesystem::create_directories(dir);
  const std::string file = (std::filesystem::path(dir) / ((c.stem.empty() ? "certificate" : c.stem) + ".g")).string();
  std::ofstream(file) << certificate_graph(g, cert.edges);
  report.result["graph_file"] = std::filesystem::path(file).filename().string();

  if (!karger && oracle_allowed(c, g, p.lambda)) {
    std::vector<bool> keep(g.edge_count() + 1, false);
    for (EdgeId e : cert.edges) keep[e] = true;
    const Multigraph h = g.edge_subgraph(keep);
    const auto lg = min_cut_oracle(g, std::nullopt, std::nullopt, 0).value;
    const auto lh = min_cut_oracle(h, std::nullopt, std::nullopt, 0).value;
    const bool ok = (lg >= p.lambda) == (lh >= p.lambda);
    report.oracle = {{"status", ok ? "agree" : "disagree"}, {"graph_connectivity", lg}, {"certificate_connectivity", lh}};
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, "certificate", &sim.totals());
}

int run_spanner(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Simulator sim(g, sim_config(c));
  const bool vertices = p.faults == "vertices";
  if (!vertices && p.faults != "edges") throw Error("--faults must be 'edges' or 'vertices'");
  const SpannerResult sp = vertices ? ft_spanner_vertices(sim, p.k, p.f, c.seed) : ft_spanner_edges(sim, p.k, p.f, c.seed);
  Report report;
  report.command = "ft-spanner";
  report.config = common_config("ft-spanner", c);
  report.config["k"] = p.k;
  report.config["f"] = p.f;
  report.config["faults"] = p.faults;
  report.seeds["master"] = c.seed;
  report.result = ordered_json::parse(spanner_json(sp));
  if (oracle_allowed(c, g, p.f)) {
    const SpannerAudit a =
        audit_spanner(g, sp.edges, p.k, p.f, vertices ? FaultSet::Kind::vertices : FaultSet::Kind::edges);
    report.oracle = {{"status", a.violations == 0 ? "agree" : "disagree"},
                     {"fault_sets", a.fault_sets},
                     {"pairs_checked", a.pairs_checked},
                     {"violations", a.violations}};
  } else {
    report.oracle = unchecked(c);
  }
  return finish(report, c, "ft-spanner", &sim.totals());
}

int run_universal_build(const Common& c, const Params& p) {
  const UniversalFamily fam = UniversalFamily::build(p.n, p.a, p.b);
  Report report;
  report.command = "universal-build";
  report.config = {{"command", "universal-build"}, {"n", p.n}, {"a", p.a}, {"b", p.b}};
  report.result = ordered_json::parse(fam.to_json());
  report.oracle = {{"status", "not-applicable"}};
  if (!p.output.empty()) {
    std::ofstream out(p.output);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto member = fam.member(i);
      const char* sep = "";
      for (std::size_t x = 0; x < p.n; ++x) {
        if (!member->contains(x)) continue;
        out << sep << x;
        sep = " ";
      }
      out << "\n";
    }
    report.result["members_file"] = p.output;
  }
  return finish(report, c, "universal-build", nullptr);
}

int run_universal_verify(const Common& c, const Params& p) {
  if (p.n > 64) throw Error("universal-verify audits bitmask families, n <= 64");
  const UniversalFamily fam = UniversalFamily::build(p.n, p.a, p.b);
  const auto masks = member_masks(fam);
  UniversalAudit audit;
  if (p.mode == "exhaustive")
    audit = verify_universal(p.n, p.a, p.b, masks);
  else if (p.mode == "sampled")
    audit = verify_universal_sampled(p.n, p.a, p.b, masks, p.trials, c.seed);
  else
    throw Error("--mode must be 'exhaustive' or 'sampled'");
  Report report;
  report.command = "universal-verify";
  report.config = {{"command", "universal-verify"}, {"n", p.n}, {"a", p.a}, {"b", p.b}, {"mode", p.mode}};
  if (p.mode == "sampled") {
    report.config["trials"] = p.trials;
    report.seeds["master"] = c.seed;
  }
  report.result = {{"members", fam.size()},
                   {"nominal_members", fam.nominal_size()},
                   {"perfect_family_size", fam.perfect().size()},
                   {"pairs_checked", audit.pairs_checked},
                   {"violations", audit.violations}};
  ordered_json examples = ordered_json::array();
  for (const auto& [a, b] : audit.examples) examples.push_back({{"A", a}, {"B", b}});
  report.result["examples"] = examples;
  report.oracle = {{"status", audit.violations == 0 ? "agree" : "disagree"}};
  return finish(report, c, "universal-verify", nullptr);
}

int run_oracle(const Common& c, const Params& p) {
  const Multigraph g = load(c);
  Report report;
  report.command = "oracle";
  report.config = common_config("oracle", c);
  report.config["cap"] = p.cap;
  const OracleCut edge = min_cut_oracle(g, std::nullopt, std::nullopt, p.cap);
  const OracleCut vertex = vertex_connectivity_oracle(g, p.cap);
  report.result["nodes"] = g.node_count();
  report.result["edges"] = g.edge_count();
  report.result["diameter"] = diameter(g);
  report.result["max_degree"] = g.max_degree();
  report.result["edge_connectivity"] = edge.value;
  report.result["edge_witnesses"] = edge.witnesses;
  report.result["vertex_connectivity"] =
      vertex.above_cap ? ordered_json(">" + std::to_string(p.cap)) : ordered_json(vertex.value);
  report.result["vertex_witnesses"] = vertex.witnesses;
  report.oracle = {{"status", "not-applicable"}};
  return finish(report, c, "oracle", nullptr);
}

int run_gen(const Common& c, const Params& p) {
  if (c.gen_spec.empty()) throw Error("gen needs --gen SPEC");
  const Multigraph g = generate(GeneratorSpec::parse(c.gen_spec), c.gen_seed);
  const std::string text = write_graph(g);
  if (p.output.empty())
    std::cout << text;
  else
    std::ofstream(p.output) << text;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact small cuts, FT-universal sets and sparse certificates in a simulated CONGEST network"};
  app.set_version_flag("--version", std::string(ftcut::version()));
  app.require_subcommand(1);

  Common c;
  Params p;
  auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph_file, "Graph file ('n m' then m lines 'u v')");
    sub->add_option("--gen", c.gen_spec, "Generator spec, e.g. cycle:6 or random-lambda:12,2,0.3");
    sub->add_option("--gen-seed", c.gen_seed, "Generator seed");
  };
  auto run_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--out", c.out_dir, "Report directory (default $FTCUT_OUT_DIR or ./ftcut-out)");
    sub->add_option("--stem", c.stem, "Report file stem (default: the verb)");
    sub->add_option("--oracle-cap-n", c.cap_n, "Largest n cross-checked against the oracle");
    sub->add_option("--oracle-cap-lambda", c.cap_lambda, "Largest lambda (or f) cross-checked");
    sub->add_flag("--no-oracle", c.no_oracle, "Skip the oracle cross-check");
    sub->add_option("--bit-budget", c.bit_budget, "Bits per message (0: 2 ceil(log2 n) + 16)");
  };
  auto sampling_opts = [&](CLI::App* sub) {
    sub->add_option("--scale", p.scale, "Factor applied to the analytic iteration count");
    sub->add_option("--iterations", p.iterations, "Exact iteration count (overrides --scale)");
    sub->add_flag("--early-exit", p.early_exit, "Stop after iterations/10 rounds without certificate growth");
  };

  auto* mrand = app.add_subcommand("mincut-rand", "Randomized exact min cut up to lambda");
  auto* mdet = app.add_subcommand("mincut-det", "Deterministic exact min cut up to lambda");
  auto* vcut = app.add_subcommand("vertexcut", "Randomized minimum vertex cut up to lambda");
  auto* verify = app.add_subcommand("verify-cut", "Distributed cut verification");
  auto* econn = app.add_subcommand("edgeconn", "lambda(e) for every edge");
  auto* cert = app.add_subcommand("certificate", "Sparse lambda-connectivity certificate");
  auto* span = app.add_subcommand("ft-spanner", "Fault-tolerant (2k-1)-spanner");
  auto* ubuild = app.add_subcommand("universal-build", "Build an (n,a,b) FT-universal family");
  auto* uverify = app.add_subcommand("universal-verify", "Audit an (n,a,b) FT-universal family");
  auto* orac = app.add_subcommand("oracle", "Brute-force connectivity facts");
  auto* gen = app.add_subcommand("gen", "Write a generated graph");

  for (auto* sub : {mrand, mdet, vcut, verify, econn, cert, span, orac}) {
    graph_opts(sub);
    run_opts(sub);
  }
  for (auto* sub : {ubuild, uverify}) run_opts(sub);
  for (auto* sub : {mrand, mdet, vcut, econn, cert})
    sub->add_option("--lambda", p.lambda, "Connectivity bound")->check(CLI::PositiveNumber);
  orac->add_option("--cap", p.cap, "Largest connectivity enumerated with witnesses")->check(CLI::PositiveNumber);
  verify->add_option("--lambda", p.lambda, "Verification bound (default |edges|)");
  for (auto* sub : {mrand, vcut, econn}) sampling_opts(sub);
  verify->add_option("--edges", p.edges, "Edge ids of the candidate cut")->delimiter(',');
  econn->add_flag("--deterministic", p.deterministic, "Walk the FT-universal family instead of sampling");
  econn->add_option("--preset", p.preset, "Sampling preset: conservative or lean");
  cert->add_option("--epsilon", p.epsilon, "Karger mode with this epsilon in (0,1)");
  span->add_option("--k", p.k, "Stretch parameter")->check(CLI::PositiveNumber);
  span->add_option("--f", p.f, "Fault budget");
  span->add_option("--faults", p.faults, "edges or vertices");
  for (auto* sub : {ubuild, uverify}) {
    sub->add_option("--n", p.n, "Universe size")->required();
    sub->add_option("--a", p.a, "Size of the set to include")->required();
    sub->add_option("--b", p.b, "Size of the set to exclude")->required();
  }
  ubuild->add_option("--members", p.output, "Write one member per line to this file");
  uverify->add_option("--mode", p.mode, "exhaustive or sampled");
  uverify->add_option("--trials", p.trials, "Sampled mode: number of (A,B) pairs");
  gen->add_option("--gen", c.gen_spec, "Generator spec")->required();
  gen->add_option("--gen-seed", c.gen_seed, "Generator seed");
  gen->add_option("--output,-o", p.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "mincut-rand" || verb == "mincut-det") return run_mincut(verb, c, p);
    if (verb == "vertexcut") return run_vertexcut(c, p);
    if (verb == "verify-cut") return run_verify(c, p);
    if (verb == "edgeconn") return run_edgeconn(c, p);
    if (verb == "certificate") return run_certificate(c, p);
    if (verb == "ft-spanner") return run_spanner(c, p);
    if (verb == "universal-build") return run_universal_build(c, p);
    if (verb == "universal-verify") return run_universal_verify(c, p);
    if (verb == "oracle") return run_oracle(c, p);
    if (verb == "gen") return run_gen(c, p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

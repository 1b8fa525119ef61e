// congestion-lab: spectra, bounds, contraction trees and experiment sweeps
// from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 internal invariant violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "congestion/congestion.hpp"

namespace cl = congestion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitInvariant = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cl::DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cl::DomainError("cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) throw cl::DomainError("failed writing '" + path + "'");
}

cl::Graph load_graph(const std::string& path) {
  try {
    return cl::parse_edge_list(read_file(path));
  } catch (const cl::DomainError& e) {
    throw cl::DomainError(path + ": " + e.what());
  }
}

// Ten significant digits; roundoff-level values print as 0.
std::string sig10(double x) {
  if (std::isnan(x)) return "undefined";
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string vertex_list(const cl::VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

struct Options {
  std::string graph, method = "hsc", family, csv, summary, out, tree_out, terminals = "per-qubit";
  std::uint64_t seed = 0;
  std::size_t trials = 1, oracle_limit = cl::kDefaultOracleLimit;
  std::string d, m, n, p, q, depth, k;
  bool periodic = false, oracle = false, normalized = false, timing = false;
};

int cmd_spectrum(const Options& o) {
  const auto g = load_graph(o.graph);
  std::cout << "n = " << g.num_vertices() << '\n'
            << "m = " << sig10(g.total_weight()) << '\n'
            << "max_degree = " << sig10(g.max_degree()) << '\n';
  if (g.num_vertices() < 2) {
    std::cout << "lambda2 = undefined\nlambdan = undefined\nmu2 = undefined\nmun = undefined\n";
    return kExitOk;
  }
  const auto s = cl::spectral_summary(g);
  std::cout << "lambda2 = " << sig10(s.lambda2) << '\n'
            << "lambdan = " << sig10(s.lambda_n) << '\n'
            << "mu2 = " << sig10(s.mu2) << '\n'
            << "mun = " << sig10(s.mu_n) << '\n';
  if (std::isnan(s.mu2)) std::cout << "# mu undefined: graph has an isolated vertex\n";
  return kExitOk;
}

int cmd_bounds(const Options& o) {
  const auto g = load_graph(o.graph);
  const auto r = cl::bounds_report(g, o.seed);
  const std::pair<const char*, double> rows[] = {
      {"n", static_cast<double>(r.n)},
      {"m", r.m},
      {"max_degree", r.max_degree},
      {"lambda2", r.lambda2},
      {"lambdan", r.lambda_n},
      {"mu2", r.mu2},
      {"mun", r.mu_n},
      {"eps", r.eps},
      {"eps_prime", r.eps_prime},
      {"eps_root", r.eps_root},
      {"lower_thm1", r.lower_thm1},
      {"upper_trivial", r.upper_trivial},
      {"upper_equi", r.upper_equi},
      {"upper_hybrid", r.upper_hybrid},
      {"lower_thm2", r.lower_thm2},
      {"upper_thm2_trivial", r.upper_thm2_trivial},
      {"upper_thm2_equi", r.upper_thm2_equi},
      {"upper_thm2_hybrid", r.upper_thm2_hybrid},
      {"lower_gima", r.lower_gima},
      {"lower_markov_shi", r.lower_markov_shi},
      {"treewidth_upper", r.cor2_treewidth_upper},
  };
  for (const auto& [name, v] : rows) std::cout << name << " = " << sig10(v) << '\n';
  return kExitOk;
}

int cmd_contract(const Options& o) {
  const auto g = load_graph(o.graph);
  cl::ContractionTree t;
  if (o.method == "hsc")
    t = cl::hsc(g, o.seed, o.normalized);
  else if (o.method == "hybrid")
    t = cl::hybrid_sc_equipartition(g, o.normalized);
  else if (o.method == "equi")
    t = cl::recursive_equipartition(g);
  else if (o.method == "oracle")
    t = cl::oracle_optimal_tree(g, o.oracle_limit);
  else
    throw cl::DomainError("unknown method '" + o.method + "'");
  const auto cert = cl::congestion(g, t);
  const std::string tree = cl::serialize_tree(t);
  std::cout << "method = " << o.method << '\n'
            << "congestion = " << sig10(cert.congestion) << '\n'
            << "argmax_subset = " << vertex_list(t.nodes[cert.argmax_node].subset) << '\n'
            << "tree = " << tree << '\n';
  if (!o.tree_out.empty()) write_file(o.tree_out, tree + '\n');
  return kExitOk;
}

std::size_t single_int(const std::string& flag, const std::string& text) {
  if (text.empty()) throw cl::DomainError("--" + flag + " is required for this family");
  const auto v = cl::parse_int_range(text);
  if (v.size() != 1) throw cl::DomainError("--" + flag + " takes a single value here");
  return v.front();
}

int cmd_gen(const Options& o) {
  cl::GenSpec spec;
  spec.family = cl::parse_family(o.family);
  spec.seed = o.seed;
  auto& p = spec.params;
  std::string params;
  auto need = [&](const char* flag, const std::string& text, std::size_t& dst) {
    dst = single_int(flag, text);
    params += std::string(params.empty() ? "" : " ") + flag + "=" + std::to_string(dst);
  };
  switch (spec.family) {
    case cl::Family::hypercube: need("d", o.d, p.d); break;
    case cl::Family::path:
    case cl::Family::cycle: need("n", o.n, p.n); break;
    case cl::Family::grid:
      need("m", o.m, p.m);
      need("n", o.n, p.n);
      p.periodic = o.periodic;
      params += o.periodic ? " periodic=1" : " periodic=0";
      break;
    case cl::Family::random_regular:
      need("n", o.n, p.n);
      need("d", o.d, p.d);
      break;
    case cl::Family::gnp: {
      need("n", o.n, p.n);
      if (o.p.empty()) throw cl::DomainError("--p is required for gnp");
      const auto ps = cl::parse_real_list(o.p);
      if (ps.size() != 1) throw cl::DomainError("--p takes a single value here");
      p.p = ps.front();
      params += " p=" + cl::detail::format_double(p.p);
      break;
    }
    case cl::Family::rqc:
      need("q", o.q, p.q);
      need("depth", o.depth, p.depth);
      need("k", o.k, p.k);
      p.terminals = cl::parse_terminals(o.terminals);
      params += " terminals=" + o.terminals;
      break;
    case cl::Family::fig1: break;
  }
  const auto g = cl::generate(spec);
  std::string comment = "family=" + std::string(cl::family_name(spec.family));
  if (!params.empty()) comment += " " + params;
  comment += "\nseed=" + std::to_string(spec.seed) + " rng=" + std::string(cl::kRngName);
  if (spec.family == cl::Family::rqc)
    comment += "\nconstruction: random disjoint k-subsets per layer (interpretation, not a reference circuit)";
  const std::string text = cl::serialize_edge_list(g, comment);
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
  return kExitOk;
}

int cmd_experiment(const Options& o) {
  cl::ExperimentConfig cfg;
  cfg.family = cl::parse_family(o.family);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.oracle = o.oracle;
  cfg.oracle_limit = o.oracle_limit;
  cfg.normalized = o.normalized;
  cfg.timing = o.timing;

  cl::ParamRanges r;
  auto ints = [](const std::string& flag, const std::string& text) {
    if (text.empty()) throw cl::DomainError("--" + flag + " is required for this family");
    return cl::parse_int_range(text);
  };
  switch (cfg.family) {
    case cl::Family::hypercube: r.d = ints("d", o.d); break;
    case cl::Family::path:
    case cl::Family::cycle: r.n = ints("n", o.n); break;
    case cl::Family::grid:
      r.m = ints("m", o.m);
      r.n = ints("n", o.n);
      r.periodic = o.periodic;
      break;
    case cl::Family::random_regular:
      r.d = ints("d", o.d);
      r.n = ints("n", o.n);
      break;
    case cl::Family::gnp:
      r.n = ints("n", o.n);
      if (o.p.empty()) throw cl::DomainError("--p is required for gnp");
      r.p = cl::parse_real_list(o.p);
      break;
    case cl::Family::rqc:
      r.q = ints("q", o.q);
      r.depth = ints("depth", o.depth);
      r.k = ints("k", o.k);
      r.terminals = cl::parse_terminals(o.terminals);
      break;
    case cl::Family::fig1: break;
  }
  cfg.points = r.expand(cfg.family);

  // Open outputs before the sweep so an unwritable path fails fast.
  std::ofstream csv(o.csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw cl::DomainError("cannot write '" + o.csv + "'");
  std::ofstream summary;
  if (!o.summary.empty()) {
    summary.open(o.summary, std::ios::binary | std::ios::trunc);
    if (!summary) throw cl::DomainError("cannot write '" + o.summary + "'");
  }

  const auto rows = cl::run_experiment(cfg);
  cl::write_csv(csv, rows);
  if (!csv) throw cl::DomainError("failed writing '" + o.csv + "'");
  if (summary.is_open()) cl::write_summary_csv(summary, cl::summarize(rows));
  std::cerr << rows.size() << " rows written to " << o.csv << '\n';
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral congestion bounds and contraction trees for tensor networks", "congestion-lab"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian and normalized Laplacian extremes of a graph file");
  spectrum->add_option("--graph", o.graph, "edge-list file")->required();

  auto* bounds = app.add_subcommand("bounds", "All congestion bounds for a connected graph file");
  bounds->add_option("--graph", o.graph, "edge-list file")->required();
  bounds->add_option("--seed", o.seed, "seed");

  auto* contract = app.add_subcommand("contract", "Build a contraction tree and report its congestion");
  contract->add_option("--graph", o.graph, "edge-list file")->required();
  contract->add_option("--method", o.method, "hsc | hybrid | equi | oracle")
      ->check(CLI::IsMember({"hsc", "hybrid", "equi", "oracle"}));
  contract->add_option("--seed", o.seed, "k-means seed for hsc");
  contract->add_flag("--normalized", o.normalized, "use the normalized Laplacian");
  contract->add_option("--tree-out", o.tree_out, "write the serialized tree here");
  contract->add_option("--oracle-limit", o.oracle_limit, "largest n accepted by the oracle");

  auto add_family_flags = [&](CLI::App* c) {
    c->add_option("--family", o.family, "hypercube | path | cycle | grid | lattice | rrg | random_regular | gnp | rqc | fig1")
        ->required();
    c->add_option("--d", o.d, "hypercube dimension or regular degree");
    c->add_option("--m", o.m, "grid rows");
    c->add_option("--n", o.n, "vertex count, or grid columns");
    c->add_option("--p", o.p, "edge probability");
    c->add_option("--q", o.q, "qubits");
    c->add_option("--depth", o.depth, "circuit depth");
    c->add_option("--k", o.k, "qubits per gate");
    c->add_flag("--periodic", o.periodic, "torus instead of grid");
    c->add_option("--terminals", o.terminals, "per-qubit | single")
        ->check(CLI::IsMember({"per-qubit", "single"}));
    c->add_option("--seed", o.seed, "seed");
  };

  auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
  add_family_flags(gen);
  gen->add_option("--out", o.out, "output file (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "Sweep a family and write one CSV row per instance");
  add_family_flags(experiment);
  experiment->add_option("--trials", o.trials, "instances per parameter point")->check(CLI::PositiveNumber);
  experiment->add_option("--csv", o.csv, "output CSV")->required();
  experiment->add_option("--summary", o.summary, "per-point mean/stddev CSV");
  experiment->add_flag("--oracle", o.oracle, "add the exact oracle column where n <= limit");
  experiment->add_option("--oracle-limit", o.oracle_limit, "largest n given to the oracle");
  experiment->add_flag("--normalized", o.normalized, "normalized spectral steps in hsc and hybrid");
  experiment->add_flag("--timing", o.timing, "fill the runtime columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(o);
    if (*bounds) return cmd_bounds(o);
    if (*contract) return cmd_contract(o);
    if (*gen) return cmd_gen(o);
    if (*experiment) return cmd_experiment(o);
  } catch (const cl::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const cl::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

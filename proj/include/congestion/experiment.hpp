#pragma once

// Experiment harness: sweeps a generator family over a parameter grid,
// measures spectra, bounds and tree congestions, and writes CSV rows.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "congestion/bounds.hpp"
#include "congestion/clustering.hpp"
#include "congestion/contraction.hpp"
#include "congestion/error.hpp"
#include "congestion/generators.hpp"
#include "congestion/graph.hpp"
#include "congestion/spectra.hpp"

namespace congestion {

inline constexpr int kConnectRetryCap = 10000;

// "a..b" (inclusive), "a,b,c", or a single value.
inline std::vector<std::size_t> parse_int_range(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw DomainError("empty range");
  auto to_int = [&](std::string_view s) {
    s = detail::trim(s);
    std::size_t v = 0;
    if (s.empty() || !detail::parse_number(s, v))
      throw DomainError("invalid integer '" + std::string(s) + "' in range '" + std::string(text) + "'");
    return v;
  };
  std::vector<std::size_t> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::size_t lo = to_int(text.substr(0, dots));
    const std::size_t hi = to_int(text.substr(dots + 2));
    if (lo > hi) throw DomainError("range '" + std::string(text) + "' is empty");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(to_int(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

// "a,b,c" or a single value.
inline std::vector<double> parse_real_list(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw DomainError("empty list");
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const auto item = detail::trim(text.substr(start, comma - start));
    double v = 0.0;
    if (item.empty() || !detail::parse_number(item, v) || !std::isfinite(v))
      throw DomainError("invalid number '" + std::string(item) + "'");
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

struct ParamRanges {
  std::vector<std::size_t> d{0}, m{0}, n{0}, q{0}, depth{0}, k{0};
  std::vector<double> p{0.0};
  bool periodic = false;
  Terminals terminals = Terminals::per_qubit;

  // Cartesian product in the order d, m, n, p, q, depth, k. Random regular
  // points with n*d odd are dropped.
  std::vector<GenParams> expand(Family family) const {
    std::vector<GenParams> out;
    for (auto dd : d)
      for (auto mm : m)
        for (auto nn : n)
          for (auto pp : p)
            for (auto qq : q)
              for (auto de : depth)
                for (auto kk : k) {
                  if (family == Family::random_regular && (nn * dd) % 2 != 0) continue;
                  out.push_back({dd, mm, nn, pp, qq, de, kk, periodic, terminals});
                }
    return out;
  }
};

struct ExperimentConfig {
  Family family = Family::hypercube;
  std::vector<GenParams> points;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool oracle = false;
  std::size_t oracle_limit = kDefaultOracleLimit;
  bool normalized = false;
  bool timing = false;
};

struct ExperimentRecord {
  Family family = Family::hypercube;
  GenParams params;
  std::uint64_t seed = 0;  // trial seed, base seed + trial
  std::size_t trial = 0;
  std::size_t n = 0;
  double m = 0.0;
  double lambda2 = 0.0, lambdan = 0.0, mu2 = 0.0, mun = 0.0;
  double eps = 0.0, eps_prime = 0.0, eps_root = 0.0;
  double lower_thm1 = 0.0, upper_trivial = 0.0, upper_equi = 0.0, upper_hybrid = 0.0;
  double lower_thm2 = 0.0, upper_thm2_hybrid = 0.0;
  double cng_hsc = 0.0, cng_hybrid = 0.0, cng_equi = 0.0;
  std::optional<double> cng_oracle;
  std::optional<double> runtime_spectra_ms, runtime_hsc_ms, runtime_hybrid_ms, runtime_equi_ms, runtime_oracle_ms;
};

// Draws the graph for one trial. Random families are redrawn from the same
// stream until connected.
inline Graph trial_graph(Family family, const GenParams& p, std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  for (int attempt = 0; attempt < kConnectRetryCap; ++attempt) {
    Graph g = generate(family, p, rng);
    if (is_connected(g)) return g;
    if (!is_random_family(family)) break;
  }
  throw DomainError(std::string("no connected ") + std::string(family_name(family)) + " instance for seed " +
                    std::to_string(trial_seed));
}

// Violated record invariants, each naming the inequality.
inline std::vector<std::string> check_record(const ExperimentRecord& r) {
  std::vector<std::string> bad;
  auto below = [&](const char* name, double c) {
    if (c < r.lower_thm1 - 1e-6)
      bad.push_back(std::string(name) + " = " + detail::format_double(c) + " < lower_thm1 = " +
                    detail::format_double(r.lower_thm1));
  };
  below("cng_hsc", r.cng_hsc);
  below("cng_hybrid", r.cng_hybrid);
  below("cng_equi", r.cng_equi);
  if (r.cng_oracle) {
    below("cng_oracle", *r.cng_oracle);
    for (auto [name, c] : {std::pair{"cng_hsc", r.cng_hsc}, {"cng_hybrid", r.cng_hybrid}, {"cng_equi", r.cng_equi}})
      if (*r.cng_oracle > c + 1e-9)
        bad.push_back("cng_oracle = " + detail::format_double(*r.cng_oracle) + " > " + name + " = " +
                      detail::format_double(c));
  }
  return bad;
}

inline ExperimentRecord measure(Family family, const GenParams& p, std::uint64_t trial_seed, std::size_t trial,
                                const ExperimentConfig& cfg) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  const Graph g = trial_graph(family, p, trial_seed);
  ExperimentRecord r;
  r.family = family;
  r.params = p;
  r.seed = trial_seed;
  r.trial = trial;
  r.n = g.num_vertices();
  r.m = g.total_weight();
  const double n = static_cast<double>(r.n);

  auto t0 = clock::now();
  const auto s = spectral_summary(g);
  r.lambda2 = s.lambda2;
  r.lambdan = s.lambda_n;
  r.mu2 = s.mu2;
  r.mun = s.mu_n;
  r.eps = balance_epsilon(g, false);
  r.eps_prime = balance_epsilon(g, true);
  if (cfg.timing) r.runtime_spectra_ms = ms_since(t0);

  t0 = clock::now();
  r.cng_hsc = congestion(g, hsc(g, trial_seed, cfg.normalized)).congestion;
  if (cfg.timing) r.runtime_hsc_ms = ms_since(t0);

  t0 = clock::now();
  const auto hybrid = hybrid_sc_equipartition(g, cfg.normalized);
  r.cng_hybrid = congestion(g, hybrid).congestion;
  r.eps_root = root_balance(hybrid);
  if (cfg.timing) r.runtime_hybrid_ms = ms_since(t0);

  t0 = clock::now();
  r.cng_equi = congestion(g, recursive_equipartition(g)).congestion;
  if (cfg.timing) r.runtime_equi_ms = ms_since(t0);

  if (cfg.oracle && r.n <= cfg.oracle_limit) {
    t0 = clock::now();
    r.cng_oracle = oracle_min_congestion(g, cfg.oracle_limit);
    if (cfg.timing) r.runtime_oracle_ms = ms_since(t0);
  }

  r.lower_thm1 = bound::lower(n, r.lambda2);
  r.upper_trivial = bound::upper_trivial(n, r.lambdan);
  r.upper_equi = bound::upper_equi(n, r.lambdan);
  r.upper_hybrid = bound::upper_hybrid(n, g.max_degree(), r.lambda2, r.lambdan, r.eps_root);
  const auto t2 = thm2_bounds(g, r.eps_prime);
  r.lower_thm2 = t2.lower;
  r.upper_thm2_hybrid = t2.upper_hybrid;
  return r;
}

// Rows in (param point, trial) order. Throws InvariantError on the first
// row that breaks a record invariant.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw DomainError("trials must be at least 1");
  if (cfg.points.empty()) throw DomainError("parameter grid is empty");
  std::vector<ExperimentRecord> rows;
  rows.reserve(cfg.points.size() * cfg.trials);
  for (const auto& p : cfg.points)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      auto r = measure(cfg.family, p, cfg.seed + t, t, cfg);
      if (auto bad = check_record(r); !bad.empty())
        throw InvariantError("record invariant violated (" + std::string(family_name(cfg.family)) + ", seed " +
                             std::to_string(r.seed) + "): " + bad.front());
      rows.push_back(std::move(r));
    }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string csv_real(double x) {
  if (!std::isfinite(x)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string csv_real(const std::optional<double>& x) { return x ? csv_real(*x) : std::string{}; }

} // namespace detail

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "family", "param_d", "param_m", "param_n", "param_p", "param_q", "param_depth", "param_k", "param_periodic",
      "param_terminals", "rng", "seed", "trial", "n", "m", "lambda2", "lambdan", "mu2", "mun", "eps", "eps_prime",
      "eps_root", "lower_thm1", "upper_trivial", "upper_equi", "upper_hybrid", "lower_thm2", "upper_thm2_hybrid",
      "cng_hsc", "cng_hybrid", "cng_equi", "cng_oracle", "runtime_spectra_ms", "runtime_hsc_ms",
      "runtime_hybrid_ms", "runtime_equi_ms", "runtime_oracle_ms", "hyper_greedy", "cotengra_auto", "hyper_opt"};
  return cols;
}

inline std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

// Only the parameters the family uses are written; the rest stay empty.
inline std::string csv_row(const ExperimentRecord& r) {
  const auto& p = r.params;
  auto num = [](std::size_t v) { return std::to_string(v); };
  std::string d, m, n, pp, q, depth, k, periodic, terminals;
  switch (r.family) {
    case Family::hypercube: d = num(p.d); break;
    case Family::path:
    case Family::cycle: n = num(p.n); break;
    case Family::grid:
      m = num(p.m);
      n = num(p.n);
      periodic = p.periodic ? "1" : "0";
      break;
    case Family::random_regular:
      d = num(p.d);
      n = num(p.n);
      break;
    case Family::gnp:
      n = num(p.n);
      pp = detail::csv_real(p.p);
      break;
    case Family::rqc:
      q = num(p.q);
      depth = num(p.depth);
      k = num(p.k);
      terminals = p.terminals == Terminals::single ? "single" : "per-qubit";
      break;
    case Family::fig1: break;
  }
  using detail::csv_real;
  const std::vector<std::string> cells = {
      std::string(family_name(r.family)), d, m, n, pp, q, depth, k, periodic, terminals, std::string(kRngName),
      std::to_string(r.seed), num(r.trial), num(r.n), csv_real(r.m), csv_real(r.lambda2), csv_real(r.lambdan),
      csv_real(r.mu2), csv_real(r.mun), csv_real(r.eps), csv_real(r.eps_prime), csv_real(r.eps_root),
      csv_real(r.lower_thm1), csv_real(r.upper_trivial), csv_real(r.upper_equi), csv_real(r.upper_hybrid),
      csv_real(r.lower_thm2), csv_real(r.upper_thm2_hybrid), csv_real(r.cng_hsc), csv_real(r.cng_hybrid),
      csv_real(r.cng_equi), csv_real(r.cng_oracle), csv_real(r.runtime_spectra_ms), csv_real(r.runtime_hsc_ms),
      csv_real(r.runtime_hybrid_ms), csv_real(r.runtime_equi_ms), csv_real(r.runtime_oracle_ms), "", "", ""};
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_row(r) << '\n';
}

// ---------------------------------------------------------------------------
// Per-point mean and sample standard deviation.

struct SummaryRow {
  std::string point;  // the parameter cells of the first row, comma-joined
  std::size_t trials = 0;
  std::vector<std::optional<double>> mean, stddev;  // aligned with summary_fields()
};

inline const std::vector<std::string>& summary_fields() {
  static const std::vector<std::string> f = {
      "n", "m", "lambda2", "lambdan", "mu2", "mun", "eps", "lower_thm1", "upper_trivial", "upper_equi",
      "upper_hybrid", "lower_thm2", "upper_thm2_hybrid", "cng_hsc", "cng_hybrid", "cng_equi", "cng_oracle"};
  return f;
}

namespace detail {

inline std::vector<std::optional<double>> summary_values(const ExperimentRecord& r) {
  return {static_cast<double>(r.n), r.m, r.lambda2, r.lambdan, r.mu2, r.mun, r.eps, r.lower_thm1,
          r.upper_trivial, r.upper_equi, r.upper_hybrid, r.lower_thm2, r.upper_thm2_hybrid, r.cng_hsc,
          r.cng_hybrid, r.cng_equi, r.cng_oracle};
}

inline std::string point_key(const ExperimentRecord& r) {
  const std::string row = csv_row(r);
  // family plus the nine parameter cells
  std::size_t pos = 0;
  for (int i = 0; i < 10 && pos != std::string::npos; ++i) pos = row.find(',', pos + 1);
  return row.substr(0, pos);
}

} // namespace detail

// Groups consecutive rows that share a parameter point.
inline std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& rows) {
  std::vector<SummaryRow> out;
  const std::size_t f = summary_fields().size();
  std::size_t i = 0;
  while (i < rows.size()) {
    const std::string key = detail::point_key(rows[i]);
    std::size_t j = i;
    while (j < rows.size() && detail::point_key(rows[j]) == key) ++j;
    SummaryRow s;
    s.point = key;
    s.trials = j - i;
    s.mean.assign(f, std::nullopt);
    s.stddev.assign(f, std::nullopt);
    for (std::size_t c = 0; c < f; ++c) {
      std::vector<double> xs;
      for (std::size_t r = i; r < j; ++r)
        if (auto v = detail::summary_values(rows[r])[c]; v && std::isfinite(*v)) xs.push_back(*v);
      if (xs.empty()) continue;
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double ss = 0.0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      s.mean[c] = mean;
      s.stddev[c] = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    }
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  std::string header;
  for (std::size_t i = 0; i < 10; ++i) header += (i ? "," : "") + csv_columns()[i];
  header += ",trials";
  for (const auto& f : summary_fields()) header += "," + f + "_mean," + f + "_std";
  os << header << '\n';
  for (const auto& r : rows) {
    os << r.point << ',' << r.trials;
    for (std::size_t c = 0; c < r.mean.size(); ++c)
      os << ',' << detail::csv_real(r.mean[c]) << ',' << detail::csv_real(r.stddev[c]);
    os << '\n';
  }
}

} // namespace congestion

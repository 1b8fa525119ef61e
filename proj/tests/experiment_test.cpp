#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "congestion/experiment.hpp"

using namespace congestion;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::size_t column(const std::string& name) {
  const auto& cols = csv_columns();
  return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
}

ExperimentConfig small_rrg(bool oracle) {
  ExperimentConfig cfg;
  cfg.family = Family::random_regular;
  ParamRanges r;
  r.d = {3};
  r.n = {8, 10};
  cfg.points = r.expand(cfg.family);
  cfg.trials = 4;
  cfg.seed = 17;
  cfg.oracle = oracle;
  return cfg;
}

} // namespace

TEST(Ranges, IntForms) {
  EXPECT_EQ(parse_int_range("3..6"), (std::vector<std::size_t>{3, 4, 5, 6}));
  EXPECT_EQ(parse_int_range("4,8 ,16"), (std::vector<std::size_t>{4, 8, 16}));
  EXPECT_EQ(parse_int_range(" 7 "), (std::vector<std::size_t>{7}));
  EXPECT_EQ(parse_int_range("5..5"), (std::vector<std::size_t>{5}));
  EXPECT_THROW(parse_int_range("6..3"), DomainError);
  EXPECT_THROW(parse_int_range(""), DomainError);
  EXPECT_THROW(parse_int_range("a..3"), DomainError);
  EXPECT_THROW(parse_int_range("1,,2"), DomainError);
  EXPECT_THROW(parse_int_range("-1"), DomainError);
}

TEST(Ranges, RealList) {
  EXPECT_EQ(parse_real_list("0.1,0.25"), (std::vector<double>{0.1, 0.25}));
  EXPECT_EQ(parse_real_list("0.5"), (std::vector<double>{0.5}));
  EXPECT_THROW(parse_real_list("0.1,x"), DomainError);
  EXPECT_THROW(parse_real_list("inf"), DomainError);
}

TEST(Ranges, ExpandCartesianAndRrgParity) {
  ParamRanges r;
  r.d = {3, 4};
  r.n = {9, 10};
  const auto rrg = r.expand(Family::random_regular);
  ASSERT_EQ(rrg.size(), 3u);  // (3,9) dropped
  EXPECT_EQ(rrg[0].d, 3u);
  EXPECT_EQ(rrg[0].n, 10u);
  EXPECT_EQ(rrg[1].d, 4u);
  EXPECT_EQ(rrg[1].n, 9u);
  EXPECT_EQ(r.expand(Family::grid).size(), 4u);
}

TEST(Csv, HeaderAndSchema) {
  const auto cols = split_csv(csv_header());
  EXPECT_EQ(cols, csv_columns());
  EXPECT_EQ(cols.front(), "family");
  EXPECT_EQ(cols.back(), "hyper_opt");
  const auto rows = run_experiment(small_rrg(false));
  for (const auto& r : rows) {
    const auto cells = split_csv(csv_row(r));
    ASSERT_EQ(cells.size(), cols.size());
    EXPECT_EQ(cells[column("family")], "random_regular");
    EXPECT_EQ(cells[column("rng")], "mt19937_64");
    EXPECT_EQ(cells[column("param_d")], "3");
    EXPECT_EQ(cells[column("param_q")], "");
    EXPECT_EQ(cells[column("cng_oracle")], "");
    EXPECT_EQ(cells[column("runtime_hsc_ms")], "");
    for (const char* ext : {"hyper_greedy", "cotengra_auto", "hyper_opt"}) EXPECT_EQ(cells[column(ext)], "");
  }
}

TEST(Csv, TimingFillsRuntimeColumns) {
  auto cfg = small_rrg(true);
  cfg.timing = true;
  cfg.trials = 1;
  for (const auto& r : run_experiment(cfg)) {
    const auto cells = split_csv(csv_row(r));
    for (const char* c : {"runtime_spectra_ms", "runtime_hsc_ms", "runtime_hybrid_ms", "runtime_equi_ms",
                          "runtime_oracle_ms"})
      EXPECT_NE(cells[column(c)], "") << c;
  }
}

TEST(Experiment, ReRunIsByteIdentical) {
  std::ostringstream a, b;
  write_csv(a, run_experiment(small_rrg(true)));
  write_csv(b, run_experiment(small_rrg(true)));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Experiment, TrialSeedsAndOrder) {
  const auto rows = run_experiment(small_rrg(true));
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].trial, i % 4);
    EXPECT_EQ(rows[i].seed, 17 + i % 4);
    EXPECT_EQ(rows[i].n, i < 4 ? 8u : 10u);
    ASSERT_TRUE(rows[i].cng_oracle.has_value());
    EXPECT_LE(*rows[i].cng_oracle, rows[i].cng_hsc + 1e-9);
    EXPECT_TRUE(check_record(rows[i]).empty());
  }
}

TEST(Experiment, OracleSkippedAboveLimit) {
  auto cfg = small_rrg(true);
  cfg.oracle_limit = 9;
  const auto rows = run_experiment(cfg);
  EXPECT_TRUE(rows[0].cng_oracle.has_value());
  EXPECT_FALSE(rows[4].cng_oracle.has_value());
}

TEST(Experiment, RejectsEmptyConfig) {
  ExperimentConfig cfg;
  EXPECT_THROW(run_experiment(cfg), DomainError);
  cfg.points = {GenParams{3}};
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), DomainError);
}

TEST(Experiment, DeterministicDisconnectedFamilyFails) {
  EXPECT_THROW(trial_graph(Family::rqc, {0, 0, 0, 0.0, 4, 1, 2}, 0), DomainError);
}

TEST(CheckRecord, NamesViolations) {
  ExperimentRecord r;
  r.lower_thm1 = 5.0;
  r.cng_hsc = 4.0;
  r.cng_hybrid = 6.0;
  r.cng_equi = 7.0;
  r.cng_oracle = 6.5;
  const auto bad = check_record(r);
  ASSERT_EQ(bad.size(), 3u);
  EXPECT_NE(bad[0].find("cng_hsc"), std::string::npos);
  EXPECT_NE(bad[0].find("lower_thm1"), std::string::npos);
  EXPECT_NE(bad[1].find("cng_oracle = 6.5 > cng_hsc"), std::string::npos);
  EXPECT_NE(bad[2].find("cng_oracle = 6.5 > cng_hybrid"), std::string::npos);
}

TEST(Summary, MeanAndSampleStd) {
  const auto rows = run_experiment(small_rrg(true));
  const auto summary = summarize(rows);
  ASSERT_EQ(summary.size(), 2u);
  const auto& fields = summary_fields();
  const std::size_t hsc = static_cast<std::size_t>(std::find(fields.begin(), fields.end(), "cng_hsc") - fields.begin());
  for (std::size_t s = 0; s < 2; ++s) {
    EXPECT_EQ(summary[s].trials, 4u);
    double mean = 0.0;
    for (std::size_t t = 0; t < 4; ++t) mean += rows[4 * s + t].cng_hsc / 4.0;
    double var = 0.0;
    for (std::size_t t = 0; t < 4; ++t) var += std::pow(rows[4 * s + t].cng_hsc - mean, 2) / 3.0;
    EXPECT_NEAR(*summary[s].mean[hsc], mean, 1e-12);
    EXPECT_NEAR(*summary[s].stddev[hsc], std::sqrt(var), 1e-12);
  }
  EXPECT_EQ(summary[0].point, "random_regular,3,,8,,,,,,");
}

TEST(Summary, SingleTrialHasZeroStdAndAbsentOracleIsEmpty) {
  ExperimentConfig cfg;
  cfg.family = Family::grid;
  cfg.points = {GenParams{0, 3, 4}};
  const auto summary = summarize(run_experiment(cfg));
  ASSERT_EQ(summary.size(), 1u);
  for (std::size_t c = 0; c + 1 < summary_fields().size(); ++c) EXPECT_EQ(*summary[0].stddev[c], 0.0);
  EXPECT_FALSE(summary[0].mean.back().has_value());

  std::ostringstream os;
  write_summary_csv(os, summary);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  EXPECT_EQ(split_csv(header).size(), split_csv(line).size());
  EXPECT_EQ(line.substr(0, 16), "grid,,3,4,,,,,0,");
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "geophase/commands.hpp"

using namespace geophase;

TEST(Table, CsvLayout) {
  Table t;
  t.meta = {{"command", "demo"}, {"x", 0.1}};
  t.columns = {"a", "b"};
  t.add_row({0.1, 1.0 / 3.0});
  const std::string csv = to_csv(t);
  std::istringstream in(csv);
  std::string meta, header, row;
  std::getline(in, meta);
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(meta, R"(# {"command":"demo","x":0.1})");
  EXPECT_EQ(header, "a,b");
  EXPECT_EQ(row, "0.10000000000000001,0.33333333333333331");
  const auto comma = row.find(',');
  EXPECT_EQ(std::strtod(row.substr(comma + 1).c_str(), nullptr), 1.0 / 3.0);
}

TEST(Table, JsonCarriesSummary) {
  Table t;
  t.columns = {"a"};
  t.add_row({2.0});
  t.summary = {{"pass", true}};
  const auto j = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(j["columns"][0], "a");
  EXPECT_EQ(j["rows"][0][0], 2.0);
  EXPECT_EQ(j["summary"]["pass"], true);
}

TEST(CmdExact, RowsAndNorms) {
  const CommandResult r = cmd_exact({1.0, 0.0, 1.0, 1.0}, 10.0, 37);
  ASSERT_EQ(r.table.rows.size(), 37u);
  const auto re = r.table.column_values("re_up_plus");
  const auto im = r.table.column_values("im_up_plus");
  for (std::size_t i = 0; i < re.size(); ++i) EXPECT_NEAR(std::hypot(re[i], im[i]), 1.0, 1e-15);
  for (const char* c : {"norm_plus", "norm_minus"})
    for (double n : r.table.column_values(c)) EXPECT_NEAR(n, 1.0, 1e-12);
  EXPECT_EQ(r.table.rows.back()[0], 10.0);
}

TEST(CmdExact, RejectsBadInput) {
  EXPECT_THROW(cmd_exact({-1.0, 0.0, 1.0, 1.0}, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(cmd_exact({1.0, 0.0, 1.0, 1.0}, 1.0, 1), std::invalid_argument);
}

TEST(CmdEvolve, DeviationWithinToleranceAtDefaultResolution) {
  const ModelParams p{1.0, 1.0, 0.8, 1.0};
  const CommandResult r = cmd_evolve(p, 100000, p.period());
  EXPECT_EQ(r.exit_code, 0);
  for (double d : r.table.column_values("max_deviation")) EXPECT_LE(d, 1e-6);
}

TEST(CmdEvolve, CoarseResolutionBreachesTolerance) {
  const ModelParams p{1.0, 1.0, 0.8, 1.0};
  EXPECT_EQ(cmd_evolve(p, 50, p.period()).exit_code, 1);
}

TEST(CmdSweep, LimitsAndMonotonicity) {
  SweepSpec spec;
  spec.theta = pi / 3;
  const CommandResult r = cmd_sweep(spec, 4);
  const auto eta = r.table.column_values("eta");
  const auto om = r.table.column_values("omega_plus");
  ASSERT_EQ(om.size(), 60u);
  EXPECT_DOUBLE_EQ(eta.front(), 1e-3);
  EXPECT_DOUBLE_EQ(eta.back(), 1e3);
  EXPECT_NEAR(om.front(), pi, 1e-2);
  EXPECT_LE(om.back(), 1e-2);
  for (std::size_t i = 1; i < om.size(); ++i) EXPECT_LT(om[i], om[i - 1]);
  // The unwrapped geometric phase is continuous along the grid.
  const auto geo = r.table.column_values("geometric");
  for (std::size_t i = 1; i < geo.size(); ++i) EXPECT_LT(std::abs(geo[i] - geo[i - 1]), 0.25);
}

TEST(CmdSweep, OutputIndependentOfWorkerCount) {
  SweepSpec spec;
  spec.points = 33;
  spec.spacing = Spacing::Linear;
  spec.eta_min = 0.01;
  spec.eta_max = 5.0;
  EXPECT_EQ(to_csv(cmd_sweep(spec, 1).table), to_csv(cmd_sweep(spec, 7).table));
}

TEST(CmdSweep, RejectsBadGrid) {
  SweepSpec spec;
  spec.eta_min = 0.0;
  EXPECT_THROW(cmd_sweep(spec), std::invalid_argument);
  spec = {};
  spec.points = 1;
  EXPECT_THROW(cmd_sweep(spec), std::invalid_argument);
  spec = {};
  spec.eta_max = spec.eta_min;
  EXPECT_THROW(cmd_sweep(spec), std::invalid_argument);
}

TEST(CmdGaugeCheck, ConstantGauge) {
  const CommandResult r = cmd_gauge_check({1.0, 1.0, 1.0, 1.0}, 42, 1, 0);
  EXPECT_LE(r.table.summary["max_overlap_deviation"].get<double>(), 1e-15);
  EXPECT_LE(r.table.summary["max_geometric_shift_error"].get<double>(), 1e-14);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(CmdGaugeCheck, SeededBatteryPasses) {
  const CommandResult r = cmd_gauge_check({1.0, pi / 3, 1.0, 1.0}, 42, 100);
  EXPECT_TRUE(r.table.summary["pass"].get<bool>());
  EXPECT_LE(r.table.summary["max_overlap_deviation"].get<double>(), 1e-12);
  EXPECT_LE(r.table.summary["max_factor_deviation"].get<double>(), 1e-12);
  EXPECT_EQ(r.table.rows.size(), 100u);
}

TEST(CmdGaugeCheck, NonPeriodicGaugeStillOnlyRephases) {
  const CommandResult r = cmd_gauge_check({1.0, pi / 3, 1.0, 1.0}, 7, 20, 8, true);
  EXPECT_TRUE(r.table.summary["pass"].get<bool>());
  EXPECT_LE(r.table.summary["max_geometric_shift_error"].get<double>(), 1e-11);
  bool drifted = false;
  for (const auto& row : r.table.rows) drifted |= std::abs(row[2] - row[1]) > 1e-3;
  EXPECT_TRUE(drifted);
}

TEST(CmdGaugeCheck, SameSeedSameReport) {
  const ModelParams p{1.0, 0.5, 2.0, 1.0};
  EXPECT_EQ(to_json(cmd_gauge_check(p, 9, 10).table), to_json(cmd_gauge_check(p, 9, 10).table));
}

TEST(CmdInterfere, MeasuredMatchesClosedForm) {
  for (auto br : {Branch::Plus, Branch::Minus}) {
    const CommandResult r = cmd_interfere({1.3, 0.9, 0.4, 1.0}, br);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_LE(r.table.column_values("deviation")[0], 1e-9);
  }
  EXPECT_THROW(cmd_interfere({1.0, 0.9, 0.0, 1.0}), std::invalid_argument);
}

TEST(CmdAbRing, SpeedIndependence) {
  const CommandResult r =
      cmd_ab_ring({256, 1.0, 0.17}, {pi / 8, pi / 4, pi / 2, 5 * pi / 8});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_LE(r.table.summary["phase_spread"].get<double>(), 1e-3 * two_pi);
  EXPECT_THROW(cmd_ab_ring({256, 1.0, 0.17}, {}), std::invalid_argument);
}

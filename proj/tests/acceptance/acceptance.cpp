// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "geophase/commands.hpp"
#include "oracles.hpp"

using namespace geophase;

namespace {

constexpr std::uint64_t seed = 42;
constexpr std::size_t steps_per_period = 100000;

int failures = 0;

void report(const char* id, const char* what, bool ok, const std::string& detail) {
  std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id, what, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

double extracted_phase(double eta, double theta) {
  const ModelParams p = ModelParams::from_eta(1.0, theta, eta);
  const ExactBasis b = ExactBasis::make(p, Branch::Plus);
  return extract_geometric_phase(evolve(p, b.spinor(0.0), 0.0, p.period(), steps_per_period), b);
}

void ac1() {
  constexpr double tol = 1e-6;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = oracle::random_params(rng, 1e-2, 1e2);
    for (Branch br : {Branch::Plus, Branch::Minus}) {
      const ExactBasis b = ExactBasis::make(p, br);
      const Trajectory traj = evolve(p, b.spinor(0.0), 0.0, p.period(), steps_per_period);
      worst = std::max(worst, max_deviation_from_exact(traj, b));
    }
  }
  report("AC1", "oracle equivalence (50 cases x 2 branches)", worst <= tol,
         fmt("max deviation %.3g (tol %.0e)", worst, tol));
}

void ac2() {
  constexpr double tol = 5e-3;
  double worst = 0.0;
  for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3})
    worst = std::max(worst, angle_distance(extracted_phase(1e-3, theta), pi * (1 + std::cos(theta))));
  const complex factor = std::polar(1.0, extracted_phase(1e-3, pi / 2));
  const double factor_dev = std::abs(factor + 1.0);
  report("AC2", "adiabatic Berry phase at eta=1e-3", worst <= tol && factor_dev <= tol,
         fmt("max |phase - pi(1+cos theta)| %.3g, |factor + 1| at pi/2 %.3g (tol 5e-3)", worst,
             factor_dev));
}

void ac3() {
  constexpr double tol = 1e-2;
  const double theta = pi / 3;
  const double phase = angle_distance(extracted_phase(1e3, theta), 0.0);
  const double omega =
      solid_angle(ExactBasis::make(ModelParams::from_eta(1.0, theta, 1e3), Branch::Plus));
  report("AC3", "non-adiabatic triviality at eta=1e3", phase <= tol && omega <= tol,
         fmt("|phase mod 2pi| %.3g, Omega+ %.3g (tol 1e-2)", phase, omega));
}

std::vector<SweepRow> ac4_rows;

void ac4() {
  SweepSpec spec;
  spec.theta = pi / 3;
  spec.eta_min = 1e-3;
  spec.eta_max = 1e3;
  spec.points = 60;
  spec.spacing = Spacing::Log;
  ac4_rows = run_sweep(spec);
  bool decreasing = true;
  double max_jump = 0.0;
  for (std::size_t i = 1; i < ac4_rows.size(); ++i) {
    decreasing &= ac4_rows[i].omega_plus < ac4_rows[i - 1].omega_plus;
    max_jump = std::max(max_jump, std::abs(ac4_rows[i].omega_plus - ac4_rows[i - 1].omega_plus));
  }
  const double first = ac4_rows.front().omega_plus, last = ac4_rows.back().omega_plus;
  const bool ok = decreasing && first >= pi - 1e-2 && last <= 1e-2 && max_jump <= 0.25;
  report("AC4", "smooth interpolation of Omega+ over 60 log points", ok,
         fmt("Omega+ %.6f -> ", first, 0) + fmt("%.3g, max jump %.3g rad", last, max_jump) +
             (decreasing ? ", strictly decreasing" : ", NOT strictly decreasing"));
}

void ac5() {
  constexpr double tol = 1e-12;
  const CommandResult r = cmd_gauge_check({1.0, pi / 3, 1.0, 1.0}, seed, 100);
  const double overlap = r.table.summary["max_overlap_deviation"].get<double>();
  const double factor = r.table.summary["max_factor_deviation"].get<double>();
  report("AC5", "hidden-gauge battery (100 periodic gauges)", overlap <= tol && factor <= tol,
         fmt("max |d overlap| %.3g, max amplitude factor deviation %.3g (tol 1e-12)", overlap,
             factor));
}

void ac6() {
  constexpr double tol = 1e-9;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = pi * (i + 0.5) / 20;
    for (int j = 0; j < 20; ++j) {
      const double eta = std::pow(10.0, -2.0 + 4.0 * j / 19);
      const InterferenceResult r = interference_intensity(ModelParams::from_eta(1.0, theta, eta));
      worst = std::max(worst, std::abs(r.measured - r.closed_form));
    }
  }
  // mu = 1/(2 hbar): the dynamical phase per cycle is mu B cos(theta0) T.
  double mu_dev = 0.0;
  for (double hbar : {1.0, 0.37, 2.5}) {
    const ModelParams p = ModelParams::from_eta(1.3, 1.1, 0.8, hbar);
    const ExactBasis b = ExactBasis::make(p, Branch::Plus);
    const double mu = 1.0 / (2.0 * hbar);
    const double dyn = decompose(b, p.period()).dynamical;
    mu_dev = std::max(mu_dev, std::abs(dyn - mu * p.B * std::cos(b.theta0) * p.period()));
    const InterferenceResult r = interference_intensity(p);
    mu_dev = std::max(mu_dev, std::abs(r.measured - r.closed_form));
  }
  report("AC6", "interference identity on 20x20 (theta, eta) grid", worst <= tol && mu_dev <= tol,
         fmt("max deviation %.3g, mu=1/(2 hbar) check %.3g (tol 1e-9)", worst, mu_dev));
}

void ac7() {
  const double tol = 1e-3 * two_pi;
  const RingConfig cfg{256, 1.0, 0.17};
  const CommandResult r = cmd_ab_ring(cfg, {pi / 8, pi / 4, pi / 2, 5 * pi / 8});
  const double spread = r.table.summary["phase_spread"].get<double>();
  const double dev = r.table.summary["max_deviation"].get<double>();

  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto e0 = sorted(ring_spectrum(cfg));
  const auto e1 = sorted(ring_spectrum({256, 1.0, 1.17}));
  const RingConfig shifted{256, 1.0, 1.17};
  const auto n0 = ring_spectrum_numeric(cfg, uniform_bond_phases(cfg));
  const auto n1 = ring_spectrum_numeric(shifted, uniform_bond_phases(shifted));
  double periodicity = 0.0;
  for (std::size_t i = 0; i < e0.size(); ++i)
    periodicity = std::max({periodicity, std::abs(e0[i] - e1[i]), std::abs(n0[i] - n1[i])});

  const double berry_range = ac4_rows.empty()
                                 ? 0.0
                                 : ac4_rows.front().omega_plus - ac4_rows.back().omega_plus;
  const bool ok = spread <= tol && dev <= tol && periodicity <= 1e-12 && berry_range >= pi / 2;
  report("AC7", "AB phase speed independence vs Berry phase variation", ok,
         fmt("ring phase spread %.3g rad over 4 k (tol 6.28e-3), ", spread, 0) +
             fmt("max |phase - 2 pi f| %.3g, Omega+ range %.3f rad, ", dev, berry_range) +
             fmt("spectrum periodicity %.3g (tol 1e-12)", periodicity, 0));
}

void ac8() {
  std::mt19937_64 rng(seed);
  double lo = 1e300, hi = 0.0;
  for (int c = 0; c < 5; ++c) {
    const ModelParams p = oracle::random_params(rng, 1e-1, 1e1);
    const ExactBasis b = ExactBasis::make(p, Branch::Plus);
    double prev = 0.0;
    for (std::size_t n : {1000u, 2000u, 4000u}) {
      const double d = max_deviation_from_exact(evolve(p, b.spinor(0.0), 0.0, p.period(), n), b);
      if (prev > 0.0) {
        lo = std::min(lo, prev / d);
        hi = std::max(hi, prev / d);
      }
      prev = d;
    }
  }
  report("AC8", "second-order convergence at 1000/2000/4000 steps", lo >= 3.5 && hi <= 4.5,
         fmt("ratios in [%.4f, %.4f] (required [3.5, 4.5])", lo, hi));
}

}  // namespace

int main() {
  try {
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#pragma once

// Adiabaticity sweep: at fixed B and theta, scan eta = hbar w0 / B and record
// how the tilt angle, solid angle and phases interpolate between the
// adiabatic (eta << 1) and sudden (eta >> 1) regimes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "geophase/phase_kit.hpp"
#include "geophase/spin_model.hpp"

namespace geophase {

enum class Spacing { Log, Linear };

struct SweepSpec {
  double theta = pi / 3.0;
  double eta_min = 1e-3;
  double eta_max = 1e3;
  int points = 60;
  Spacing spacing = Spacing::Log;
  double B = 1.0;
  double hbar = 1.0;

  void validate() const {
    if (!(eta_min > 0.0)) throw std::invalid_argument("eta_min must be > 0");
    if (!(eta_max > eta_min)) throw std::invalid_argument("eta_max must exceed eta_min");
    if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
    if (!(B > 0.0)) throw std::invalid_argument("sweep needs B > 0");
    ModelParams{B, theta, 0.0, hbar}.validate();
  }

  std::vector<double> grid() const {
    validate();
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
      const double f = static_cast<double>(i) / (points - 1);
      g[i] = spacing == Spacing::Log
                 ? std::exp(std::log(eta_min) + f * (std::log(eta_max) - std::log(eta_min)))
                 : eta_min + f * (eta_max - eta_min);
    }
    g.front() = eta_min;
    g.back() = eta_max;
    return g;
  }
};

struct SweepRow {
  double eta;
  double theta0;
  double vartheta;
  double omega_plus;
  double geometric;         // per period, branch +, unwrapped
  double geometric_mod_2pi;  // (-pi, pi]
  double energy_plus;
  double energy_minus;
  double dynamical;  // per period, branch +
};

inline SweepRow sweep_point(const SweepSpec& spec, double eta) {
  const ModelParams p = ModelParams::from_eta(spec.B, spec.theta, eta, spec.hbar);
  const ExactBasis plus = ExactBasis::make(p, Branch::Plus);
  const ExactBasis minus = ExactBasis::make(p, Branch::Minus);
  const PhaseDecomposition d = decompose(plus, p.period());
  return {eta,
          plus.theta0,
          plus.vartheta,
          solid_angle(plus),
          d.geometric,
          wrap_angle(d.geometric),
          effective_energy(plus),
          effective_energy(minus),
          d.dynamical};
}

/// Evaluates every grid point on a worker pool; rows come back in grid order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 0) {
  const std::vector<double> etas = spec.grid();
  std::vector<SweepRow> rows(etas.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(etas.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < etas.size(); i = next++)
        rows[i] = sweep_point(spec, etas[i]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace geophase

#pragma once

// Numerical oracle for i hbar d/dt psi = H(t) psi: midpoint Magnus stepping
// with the closed-form 2x2 exponential. Each step is exactly unitary, so no
// renormalization is ever applied.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "geophase/spin_model.hpp"

namespace geophase {

struct Trajectory {
  std::vector<double> times;
  std::vector<Spinor2> states;
  ModelParams params;

  std::size_t size() const { return times.size(); }
};

/// exp(-i H dt / hbar) psi. For H = h0 I + h.sigma this is
/// e^{-i h0 dt/hbar} [cos(a) I - i sin(a) hhat.sigma], a = |h| dt / hbar.
inline Spinor2 step_unitary(const Hermitian2& H, double dt, const Spinor2& psi,
                            double hbar = 1.0) {
  const auto [h0, hx, hy, hz] = H.pauli();
  const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
  const double a = r * dt / hbar;
  const complex global = std::polar(1.0, -h0 * dt / hbar);
  if (r == 0.0) return psi * global;
  const double c = std::cos(a);
  const double s = std::sin(a) / r;
  // -i sin(a) hhat.sigma, with hhat.sigma = [[hz, hx - i hy], [hx + i hy, -hz]]
  const complex m00{c, -s * hz};
  const complex m11{c, s * hz};
  const complex m01 = -I * s * complex{hx, -hy};
  const complex m10 = -I * s * complex{hx, hy};
  return Spinor2{m00 * psi.up + m01 * psi.down, m10 * psi.up + m11 * psi.down} * global;
}

inline constexpr std::size_t default_max_samples = 4096;

/// Integrates from t0 to t1 in nsteps midpoint-Magnus steps (global error
/// O(dt^2)). Backward integration (t1 < t0) applies the exact inverse steps.
/// Every k-th state is stored, k chosen so at most max_samples are kept; the
/// endpoint is always stored.
inline Trajectory evolve(const ModelParams& p, const Spinor2& psi0, double t0, double t1,
                         std::size_t nsteps,
                         std::size_t max_samples = default_max_samples) {
  p.validate();
  if (nsteps == 0) throw std::invalid_argument("evolve: nsteps must be >= 1");
  if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw std::invalid_argument("evolve: need finite t0 != t1");
  if (max_samples < 2) throw std::invalid_argument("evolve: max_samples must be >= 2");

  const std::size_t stride =
      std::max<std::size_t>(1, (nsteps + max_samples - 2) / (max_samples - 1));
  const double dt = (t1 - t0) / static_cast<double>(nsteps);

  Trajectory traj;
  traj.params = p;
  traj.times.reserve(nsteps / stride + 2);
  traj.states.reserve(nsteps / stride + 2);
  traj.times.push_back(t0);
  traj.states.push_back(psi0);

  Spinor2 psi = psi0;
  for (std::size_t n = 0; n < nsteps; ++n) {
    const double tn = t0 + static_cast<double>(n) * dt;
    psi = step_unitary(hamiltonian_at(p, tn + 0.5 * dt), dt, psi, p.hbar);
    const std::size_t done = n + 1;
    if (done % stride == 0 || done == nsteps) {
      traj.times.push_back(done == nsteps ? t1 : t0 + static_cast<double>(done) * dt);
      traj.states.push_back(psi);
    }
  }
  return traj;
}

/// Samples the closed-form amplitude on n equally spaced times in [t0, t1].
inline Trajectory sample_exact(const ExactBasis& b, double t0, double t1, std::size_t n) {
  if (n < 2) throw std::invalid_argument("sample_exact: need at least 2 samples");
  Trajectory traj;
  traj.params = b.params;
  traj.times.resize(n);
  traj.states.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = k + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / (n - 1);
    traj.times[k] = t;
    traj.states[k] = exact_amplitude(b, t);
  }
  return traj;
}

/// Max over interior samples of || i hbar (psi_{k+1} - psi_{k-1}) / (t_{k+1} - t_{k-1})
/// - H(t_k) psi_k ||.
inline double schrodinger_defect(const Trajectory& traj) {
  if (traj.size() < 3) throw std::invalid_argument("schrodinger_defect: need >= 3 samples");
  const auto& p = traj.params;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double span = traj.times[k + 1] - traj.times[k - 1];
    const Spinor2 lhs = (traj.states[k + 1] - traj.states[k - 1]) * (I * p.hbar / span);
    const Spinor2 rhs = hamiltonian_at(p, traj.times[k]).apply(traj.states[k]);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

/// Max component deviation of a trajectory from the closed-form amplitude.
inline double max_deviation_from_exact(const Trajectory& traj, const ExactBasis& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k)
    worst = std::max(worst, max_abs_diff(traj.states[k], exact_amplitude(b, traj.times[k])));
  return worst;
}

}  // namespace geophase

#pragma once

// Phase bookkeeping for cyclic evolution.
//
// A "frame" is any smooth spinor family w(t) with a known time derivative.
// The exact amplitude built on a frame is
//   psi(t) = w(t) exp[-(i/hbar) int_0^t w^dag (H - i hbar d/dt) w dt'],
// and its phase splits into a dynamical part (from w^dag H w) and a
// geometric part (from the connection w^dag (-i hbar d/dt) w). Rephasing the
// frame by e^{i alpha(t)} is a redundancy: psi changes only by e^{i alpha(0)}.

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <stdexcept>
#include <vector>

#include "geophase/propagator.hpp"
#include "geophase/spin_model.hpp"

namespace geophase {

template <class F>
concept Frame = requires(const F& f, double t) {
  { f.spinor(t) } -> std::convertible_to<Spinor2>;
  { f.time_derivative(t) } -> std::convertible_to<Spinor2>;
  { f.params } -> std::convertible_to<ModelParams>;
};

struct PhaseDecomposition {
  double total = 0.0;      // reduced to (-pi, pi]
  double dynamical = 0.0;  // -(1/hbar) int w^dag H w dt, unwrapped
  double geometric = 0.0;  // -(1/hbar) int w^dag (-i hbar d/dt) w dt, unwrapped
  long winding = 0;        // dynamical + geometric = total + 2 pi winding

  double unwrapped_total() const { return dynamical + geometric; }
};

/// alpha(t) = mean + sum_n [a_n cos(n w t) + b_n sin(n w t)] + slope t.
/// A nonzero slope makes the function non-periodic.
struct GaugeFunction {
  double mean = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  double frequency = 0.0;
  double slope = 0.0;

  static constexpr int max_harmonics = 8;

  int harmonics() const { return static_cast<int>(cos_coeffs.size()); }
  bool periodic() const { return slope == 0.0; }

  double value(double t) const {
    double a = mean + slope * t;
    for (int n = 0; n < harmonics(); ++n) {
      const double x = (n + 1) * frequency * t;
      a += cos_coeffs[n] * std::cos(x) + sin_coeffs[n] * std::sin(x);
    }
    return a;
  }

  double derivative(double t) const {
    double d = slope;
    for (int n = 0; n < harmonics(); ++n) {
      const double k = (n + 1) * frequency;
      d += k * (sin_coeffs[n] * std::cos(k * t) - cos_coeffs[n] * std::sin(k * t));
    }
    return d;
  }

  /// alpha(0), summed without evaluating trigonometric functions.
  double at_origin() const {
    double a = mean;
    for (double c : cos_coeffs) a += c;
    return a;
  }

  static GaugeFunction constant(double c) { return {c, {}, {}, 0.0, 0.0}; }

  static GaugeFunction linear(double slope, double offset = 0.0) {
    return {offset, {}, {}, 0.0, slope};
  }

  /// Coefficients uniform in [-1, 1]; a slope is drawn too when requested.
  template <class Rng>
  static GaugeFunction random(Rng& rng, double frequency, int harmonics = max_harmonics,
                              bool non_periodic = false) {
    if (harmonics < 0 || harmonics > max_harmonics)
      throw std::invalid_argument("GaugeFunction: harmonics must be in [0, 8]");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GaugeFunction g;
    g.frequency = frequency;
    g.mean = u(rng);
    g.cos_coeffs.resize(harmonics);
    g.sin_coeffs.resize(harmonics);
    for (int n = 0; n < harmonics; ++n) {
      g.cos_coeffs[n] = u(rng);
      g.sin_coeffs[n] = u(rng);
    }
    if (non_periodic) g.slope = u(rng) * frequency;
    return g;
  }
};

/// Exact basis rephased by e^{i alpha(t)}.
struct GaugedBasis {
  ExactBasis base;
  GaugeFunction alpha;
  ModelParams params;

  GaugedBasis(ExactBasis b, GaugeFunction a) : base(b), alpha(std::move(a)), params(b.params) {}

  Spinor2 spinor(double t) const { return base.spinor(t) * std::polar(1.0, alpha.value(t)); }

  Spinor2 time_derivative(double t) const {
    const complex ph = std::polar(1.0, alpha.value(t));
    return (base.time_derivative(t) + base.spinor(t) * (I * alpha.derivative(t))) * ph;
  }
};

namespace detail {

inline double quadrature_panel(const ExactBasis& b) {
  if (b.params.omega0 == 0.0) return std::numeric_limits<double>::infinity();
  return b.params.period() / 8.0;
}

inline double quadrature_panel(const GaugedBasis& g) {
  double panel = quadrature_panel(g.base);
  if (g.alpha.harmonics() > 0 && g.alpha.frequency != 0.0)
    panel = std::min(panel, two_pi / (std::abs(g.alpha.frequency) * g.alpha.harmonics()) / 4.0);
  return panel;
}

/// Composite 30-point Gauss-Legendre on panels no longer than max_panel.
template <class Fn>
double integrate(Fn&& f, double a, double b, double max_panel) {
  if (a == b) return 0.0;
  const double span = b - a;
  const std::size_t panels =
      std::isfinite(max_panel)
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(span) / max_panel)))
          : 1;
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + span * static_cast<double>(k) / panels;
    const double hi = k + 1 == panels ? b : a + span * static_cast<double>(k + 1) / panels;
    sum += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, hi);
  }
  return sum;
}

}  // namespace detail

/// Real integrand w^dag H w.
template <Frame F>
double dynamical_integrand(const F& f, double t) {
  const Spinor2 w = f.spinor(t);
  return dot(w, hamiltonian_at(f.params, t).apply(w)).real();
}

/// Real integrand w^dag (-i hbar d/dt) w.
template <Frame F>
double connection_integrand(const F& f, double t) {
  return dot(f.spinor(t), f.time_derivative(t) * (-I * f.params.hbar)).real();
}

template <Frame F>
PhaseDecomposition decompose(const F& f, double t_end) {
  const double hbar = f.params.hbar;
  const double panel = detail::quadrature_panel(f);
  PhaseDecomposition d;
  d.dynamical =
      -detail::integrate([&](double t) { return dynamical_integrand(f, t); }, 0.0, t_end, panel) /
      hbar;
  d.geometric =
      -detail::integrate([&](double t) { return connection_integrand(f, t); }, 0.0, t_end, panel) /
      hbar;
  const double u = d.unwrapped_total();
  d.total = wrap_angle(u);
  d.winding = std::lround((u - d.total) / two_pi);
  return d;
}

/// psi(t) = w(t) exp[-(i/hbar) int_0^t w^dag (H - i hbar d/dt) w dt'], with
/// the integral done by quadrature.
template <Frame F>
Spinor2 reconstructed_amplitude(const F& f, double t) {
  const PhaseDecomposition d = decompose(f, t);
  return f.spinor(t) * std::polar(1.0, d.unwrapped_total());
}

/// psi0^dag psiT; invariant under any rephasing of the frame.
inline complex pancharatnam_overlap(const Spinor2& psi0, const Spinor2& psiT) {
  return dot(psi0, psiT);
}

struct GaugeTransform {
  GaugedBasis basis;
  PhaseDecomposition decomposition;  // over [0, t_end]
};

/// Rephases the basis by e^{i alpha(t)} and recomputes its decomposition over
/// [0, t_end] (default: one period).
inline GaugeTransform apply_gauge(const ExactBasis& b, const GaugeFunction& alpha,
                                  std::optional<double> t_end = std::nullopt) {
  GaugedBasis g(b, alpha);
  const double te = t_end ? *t_end : b.params.period();
  PhaseDecomposition d = decompose(g, te);
  return {std::move(g), d};
}

/// Geometric phase read off a numerical trajectory spanning one period.
///
/// Each state is rephased onto the basis gauge (w~ = psi e^{-i arg(w^dag psi)}),
/// which makes the sampled family single-valued; the connection
/// w~^dag (-i hbar d/dt) w~ is then differenced along the samples and
/// integrated by the trapezoid rule. Returned in [0, 2 pi).
inline double extract_geometric_phase(const Trajectory& traj, const ExactBasis& b) {
  const auto& p = traj.params;
  if (p.omega0 == 0.0)
    throw std::invalid_argument("extract_geometric_phase: omega0 = 0 has no period");
  const double T = p.period();
  const std::size_t n = traj.size();
  if (n < 4) throw std::invalid_argument("extract_geometric_phase: too few samples");
  const double tol = 1e-9 * T;
  if (std::abs(traj.times.front()) > tol || std::abs(traj.times.back() - T) > tol)
    throw std::invalid_argument("extract_geometric_phase: trajectory must span [0, T]");

  std::vector<Spinor2> lifted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const complex z = dot(b.spinor(traj.times[k]), traj.states[k]);
    if (std::abs(z) < 1e-6)
      throw std::invalid_argument("extract_geometric_phase: trajectory left the basis ray");
    lifted[k] = traj.states[k] * (std::conj(z) / std::abs(z));
  }

  // Samples 0 and n-1 coincide on the lifted loop, so differences wrap.
  auto integrand = [&](std::size_t k) {
    const std::size_t prev = k == 0 ? n - 2 : k - 1;
    const std::size_t next = k == n - 1 ? 1 : k + 1;
    const double h_prev = k == 0 ? T - traj.times[n - 2] : traj.times[k] - traj.times[k - 1];
    const double h_next = k == n - 1 ? traj.times[1] : traj.times[k + 1] - traj.times[k];
    const Spinor2 deriv = (lifted[next] - lifted[prev]) * complex{1.0 / (h_prev + h_next)};
    return dot(lifted[k], deriv * (-I * p.hbar)).real();
  };

  double integral = 0.0;
  double prev_val = integrand(0);
  for (std::size_t k = 1; k < n; ++k) {
    const double val = integrand(k);
    integral += 0.5 * (prev_val + val) * (traj.times[k] - traj.times[k - 1]);
    prev_val = val;
  }
  double g = std::fmod(-integral / p.hbar, two_pi);
  if (g < 0.0) g += two_pi;
  return g;
}

/// Basis-free cyclic phase: arg(psi0^dag psiT) + (1/hbar) int psi^dag H psi dt.
/// Returned in (-pi, pi].
inline double aharonov_anandan_phase(const Trajectory& traj) {
  if (traj.size() < 2) throw std::invalid_argument("aharonov_anandan_phase: too few samples");
  const auto& p = traj.params;
  double integral = 0.0;
  auto energy = [&](std::size_t k) {
    return dot(traj.states[k], hamiltonian_at(p, traj.times[k]).apply(traj.states[k])).real();
  };
  double prev = energy(0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double cur = energy(k);
    integral += 0.5 * (prev + cur) * (traj.times[k] - traj.times[k - 1]);
    prev = cur;
  }
  const double total = std::arg(pancharatnam_overlap(traj.states.front(), traj.states.back()));
  return wrap_angle(total + integral / p.hbar);
}

}  // namespace geophase

#pragma once

// Spin-1/2 in a uniformly rotating magnetic field, solved in closed form.
//
// The field B(t) = B (sin th cos w0 t, sin th sin w0 t, cos th) couples as
// H(t) = -B(t).sigma/2. In the frame co-rotating with the field the problem
// is static, so the cyclic basis w+-(t) and the effective energies E+- are
// exact for every rotation speed, not only in the adiabatic regime.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geophase {

using complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

/// Reduce an angle to (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, two_pi);
  if (r <= -pi) r += two_pi;
  return r;
}

struct Spinor2 {
  complex up{};
  complex down{};

  double norm2() const { return std::norm(up) + std::norm(down); }
  double norm() const { return std::sqrt(norm2()); }

  Spinor2& operator+=(const Spinor2& o) { up += o.up; down += o.down; return *this; }
  Spinor2& operator-=(const Spinor2& o) { up -= o.up; down -= o.down; return *this; }
  Spinor2& operator*=(complex s) { up *= s; down *= s; return *this; }

  friend Spinor2 operator+(Spinor2 a, const Spinor2& b) { return a += b; }
  friend Spinor2 operator-(Spinor2 a, const Spinor2& b) { return a -= b; }
  friend Spinor2 operator*(complex s, Spinor2 a) { return a *= s; }
  friend Spinor2 operator*(Spinor2 a, complex s) { return a *= s; }
};

/// a^dagger b
inline complex dot(const Spinor2& a, const Spinor2& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

/// Component-wise max |a_i - b_i|.
inline double max_abs_diff(const Spinor2& a, const Spinor2& b) {
  return std::max(std::abs(a.up - b.up), std::abs(a.down - b.down));
}

/// Expectation value <sigma> of a normalized spinor.
inline Vec3 bloch_vector(const Spinor2& s) {
  const complex c = std::conj(s.up) * s.down;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s.up) - std::norm(s.down)};
}

/// 2x2 Hermitian matrix, stored so that hermiticity holds by construction.
struct Hermitian2 {
  double h00 = 0.0;
  double h11 = 0.0;
  complex h01{};  // h10 = conj(h01)

  complex h10() const { return std::conj(h01); }

  /// H = h0 I + hx sx + hy sy + hz sz
  static Hermitian2 from_pauli(double h0, double hx, double hy, double hz) {
    return {h0 + hz, h0 - hz, complex{hx, -hy}};
  }

  /// Returns {h0, hx, hy, hz}.
  std::array<double, 4> pauli() const {
    return {0.5 * (h00 + h11), h01.real(), -h01.imag(), 0.5 * (h00 - h11)};
  }

  Spinor2 apply(const Spinor2& s) const {
    return {h00 * s.up + h01 * s.down, h10() * s.up + h11 * s.down};
  }

  /// Ascending eigenvalues.
  std::array<double, 2> eigenvalues() const {
    const auto [h0, hx, hy, hz] = pauli();
    const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
    return {h0 - r, h0 + r};
  }

  double trace() const { return h00 + h11; }
};

struct ModelParams {
  double B = 1.0;       // field magnitude (energy units)
  double theta = 0.0;   // polar angle of the field, [0, pi]
  double omega0 = 0.0;  // rotation frequency
  double hbar = 1.0;

  void validate() const {
    if (!std::isfinite(B) || B < 0.0)
      throw std::invalid_argument("field magnitude B must be finite and >= 0");
    if (!std::isfinite(theta) || theta < 0.0 || theta > pi)
      throw std::invalid_argument("theta must lie in [0, pi]");
    if (!std::isfinite(omega0))
      throw std::invalid_argument("omega0 must be finite");
    if (!std::isfinite(hbar) || hbar <= 0.0)
      throw std::invalid_argument("hbar must be > 0");
  }

  double period() const {
    if (omega0 == 0.0) throw std::invalid_argument("period undefined for omega0 = 0");
    return two_pi / std::abs(omega0);
  }

  /// Adiabaticity ratio hbar |omega0| / B.
  double eta() const {
    if (B <= 0.0) throw std::invalid_argument("adiabaticity ratio undefined for B = 0");
    return hbar * std::abs(omega0) / B;
  }

  static ModelParams from_eta(double B, double theta, double eta, double hbar = 1.0) {
    if (!(B > 0.0)) throw std::invalid_argument("from_eta requires B > 0");
    ModelParams p{B, theta, eta * B / hbar, hbar};
    p.validate();
    return p;
  }
};

enum class Branch { Plus, Minus };

inline double sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }
inline const char* to_string(Branch b) { return b == Branch::Plus ? "+" : "-"; }

inline Vec3 field_at(const ModelParams& p, double t) {
  const double phi = p.omega0 * t;
  const double st = std::sin(p.theta);
  return {p.B * st * std::cos(phi), p.B * st * std::sin(phi), p.B * std::cos(p.theta)};
}

/// H(t) = -B(t).sigma / 2
inline Hermitian2 hamiltonian_at(const ModelParams& p, double t) {
  const Vec3 b = field_at(p, t);
  return Hermitian2::from_pauli(0.0, -0.5 * b[0], -0.5 * b[1], -0.5 * b[2]);
}

/// Tilt of the effective quantization axis away from the field direction:
/// tan th0 = hbar w0 sin th / (B + hbar w0 cos th). For w0 >= 0 the result
/// lies in [0, th].
inline double tilt_angle(const ModelParams& p) {
  p.validate();
  if (p.B == 0.0 && p.omega0 == 0.0)
    throw std::invalid_argument("tilt angle undefined for B = 0 and omega0 = 0");
  const double hw = p.hbar * p.omega0;
  return std::atan2(hw * std::sin(p.theta), p.B + hw * std::cos(p.theta));
}

/// The cyclic basis w+-(t) that diagonalizes the effective Hamiltonian,
/// in the phase convention with e^{-i phi(t)} on the upper component.
struct ExactBasis {
  ModelParams params;
  Branch branch = Branch::Plus;
  double theta0 = 0.0;
  double vartheta = 0.0;  // theta - theta0

  static ExactBasis make(const ModelParams& p, Branch b) {
    const double t0 = tilt_angle(p);
    return {p, b, t0, p.theta - t0};
  }

  /// Basis with theta0 forced to 0: the instantaneous field eigenvector.
  static ExactBasis adiabatic(const ModelParams& p, Branch b) {
    p.validate();
    return {p, b, 0.0, p.theta};
  }

  Spinor2 spinor(double t) const {
    const complex ph = std::polar(1.0, -params.omega0 * t);
    const double c = std::cos(0.5 * vartheta);
    const double s = std::sin(0.5 * vartheta);
    if (branch == Branch::Plus) return {ph * c, complex{s}};
    return {ph * s, complex{-c}};
  }

  Spinor2 time_derivative(double t) const {
    const complex dph = -I * params.omega0 * std::polar(1.0, -params.omega0 * t);
    const double amp = branch == Branch::Plus ? std::cos(0.5 * vartheta)
                                              : std::sin(0.5 * vartheta);
    return {dph * amp, complex{}};
  }
};

inline Spinor2 basis_spinor(const ExactBasis& b, double t) { return b.spinor(t); }

/// E+- = w^dag (H - i hbar d/dt) w, constant in time.
inline double effective_energy(const ExactBasis& b) {
  const double s = sign(b.branch);
  const auto& p = b.params;
  return -s * 0.5 * p.B * std::cos(b.theta0) -
         0.5 * p.hbar * p.omega0 * (1.0 + s * std::cos(b.vartheta));
}

/// psi(t) = w(t) exp(-i E t / hbar); solves the Schroedinger equation exactly.
inline Spinor2 exact_amplitude(const ExactBasis& b, double t) {
  return b.spinor(t) * std::polar(1.0, -effective_energy(b) * t / b.params.hbar);
}

/// w^dag (-i hbar d/dt) w along the circular protocol.
inline double connection_pullback(const ExactBasis& b, double /*t*/) {
  return -0.5 * b.params.hbar * b.params.omega0 *
         (1.0 + sign(b.branch) * std::cos(b.vartheta));
}

/// Solid angle enclosed by the Bloch vector of w(t) over one cycle.
/// Omega+ = 2 pi [1 - cos(vartheta)], Omega- = 2 pi [1 + cos(vartheta)].
inline double solid_angle(const ExactBasis& b) {
  return two_pi * (1.0 - sign(b.branch) * std::cos(b.vartheta));
}

struct AdiabaticAmplitude {
  Spinor2 amplitude;
  complex geometric_factor;
  complex dynamical_factor;
};

/// Adiabatic approximant: instantaneous eigenvector times a geometric factor
/// exp[(i/2) w0 (1 +- cos th) t] and a dynamical factor exp[+-i B t / (2 hbar)].
inline AdiabaticAmplitude adiabatic_amplitude(const ExactBasis& b, double t) {
  const auto& p = b.params;
  const double s = sign(b.branch);
  const ExactBasis w = ExactBasis::adiabatic(p, b.branch);
  const complex geo = std::polar(1.0, 0.5 * p.omega0 * (1.0 + s * std::cos(p.theta)) * t);
  const complex dyn = std::polar(1.0, s * p.B * t / (2.0 * p.hbar));
  return {w.spinor(t) * (geo * dyn), geo, dyn};
}

/// exp[i pi (1 +- cos th)]
inline complex berry_phase_factor(double theta, Branch b) {
  return std::polar(1.0, pi * (1.0 + sign(b) * std::cos(theta)));
}

struct InterferenceResult {
  double measured;     // |psi(T) + psi(0)|^2 from the exact amplitude
  double closed_form;  // 2 + 2 cos[+-(B cos th0 / 2 hbar) T - Omega/2]
};

inline InterferenceResult interference_intensity(const ModelParams& p,
                                                 Branch branch = Branch::Plus) {
  if (p.omega0 == 0.0)
    throw std::invalid_argument("interference needs omega0 != 0");
  const ExactBasis b = ExactBasis::make(p, branch);
  const double T = p.period();
  const Spinor2 sum = exact_amplitude(b, T) + exact_amplitude(b, 0.0);
  const double arg = sign(branch) * p.B * std::cos(b.theta0) * T / (2.0 * p.hbar) -
                     0.5 * solid_angle(b);
  return {sum.norm2(), 2.0 + 2.0 * std::cos(arg)};
}

}  // namespace geophase

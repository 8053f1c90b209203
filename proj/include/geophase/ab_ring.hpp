#pragma once

// Tight-binding ring threaded by a flux Phi. The vector potential enters as
// Peierls phases on the bonds; only their sum around the ring, 2 pi Phi/Phi0,
// is physical. The interference phase between the two arms is fixed by that
// sum for any carrier wavenumber, i.e. for slow and fast electrons alike.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "geophase/spin_model.hpp"

namespace geophase {

struct RingConfig {
  int nsites = 256;
  double hopping = 1.0;
  double flux_ratio = 0.0;  // Phi / Phi0
  double hbar = 1.0;

  void validate() const {
    if (nsites < 3) throw std::invalid_argument("ring needs at least 3 sites");
    if (!(hopping > 0.0) || !std::isfinite(hopping))
      throw std::invalid_argument("hopping must be > 0");
    if (!std::isfinite(flux_ratio)) throw std::invalid_argument("flux ratio must be finite");
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  }
};

/// Bond j joins site j to site (j+1) mod N.
inline std::vector<double> uniform_bond_phases(const RingConfig& cfg) {
  cfg.validate();
  return std::vector<double>(cfg.nsites, two_pi * cfg.flux_ratio / cfg.nsites);
}

/// H_{j+1,j} = -t e^{i phi_j}; a severed bond is simply left out.
inline Eigen::MatrixXcd ring_hamiltonian(const RingConfig& cfg,
                                         const std::vector<double>& bond_phases,
                                         std::optional<int> severed_bond = std::nullopt) {
  cfg.validate();
  const int n = cfg.nsites;
  if (static_cast<int>(bond_phases.size()) != n)
    throw std::invalid_argument("need one Peierls phase per bond");
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (severed_bond && *severed_bond == j) continue;
    const int next = (j + 1) % n;
    const complex hop = -cfg.hopping * std::polar(1.0, bond_phases[j]);
    H(next, j) += hop;
    H(j, next) += std::conj(hop);
  }
  return H;
}

/// E_n = -2 t cos(2 pi (n + Phi/Phi0) / N), n = 0..N-1.
inline std::vector<double> ring_spectrum(const RingConfig& cfg) {
  cfg.validate();
  std::vector<double> e(cfg.nsites);
  for (int n = 0; n < cfg.nsites; ++n)
    e[n] = -2.0 * cfg.hopping * std::cos(two_pi * (n + cfg.flux_ratio) / cfg.nsites);
  return e;
}

/// Ascending eigenvalues of the lattice Hamiltonian for arbitrary bond phases.
inline std::vector<double> ring_spectrum_numeric(const RingConfig& cfg,
                                                 const std::vector<double>& bond_phases) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ring_hamiltonian(cfg, bond_phases),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Exact time evolution U(t) = V exp(-i Lambda t / hbar) V^dag.
class RingPropagator {
 public:
  RingPropagator(const Eigen::MatrixXcd& H, double hbar) : solver_(H), hbar_(hbar) {
    if (solver_.info() != Eigen::Success)
      throw std::runtime_error("ring Hamiltonian diagonalization failed");
  }

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const {
    const Eigen::MatrixXcd& V = solver_.eigenvectors();
    Eigen::VectorXcd c = V.adjoint() * psi0;
    const Eigen::VectorXd& lam = solver_.eigenvalues();
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -lam[i] * t / hbar_);
    return V * c;
  }

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
  double hbar_;
};

struct TwoArmResult {
  double phase = 0.0;         // arg(A_plus / A_minus), (-pi, pi]
  double closed_phase = 0.0;  // |relative phase| from the unsevered ring, [0, pi]
  complex arm_plus{};         // antipodal amplitude, counterclockwise arm only
  complex arm_minus{};        // antipodal amplitude, clockwise arm only
  complex closed_amplitude{};
  double arrival_time = 0.0;
  double group_velocity = 0.0;
  double norm_drift = 0.0;  // max | ||psi(t)|| - ||psi(0)|| |
};

struct TwoArmOptions {
  double width = 8.0;  // Gaussian width in sites
};

/// Gaussian packet exp(-d^2 / 2 w^2) e^{i k d} centred on site 0, d the signed
/// distance around the ring. Each site also carries the Peierls phase
/// accumulated along the short path from site 0, so k is the kinetic
/// wavenumber whatever gauge the bond phases are written in.
inline Eigen::VectorXcd ring_wavepacket(int nsites, double k, double width,
                                        const std::vector<double>& bond_phases) {
  if (static_cast<int>(bond_phases.size()) != nsites)
    throw std::invalid_argument("need one Peierls phase per bond");
  std::vector<double> dressing(nsites, 0.0);
  for (int d = 1; d <= nsites / 2; ++d) dressing[d] = dressing[d - 1] + bond_phases[d - 1];
  double back = 0.0;
  for (int d = 1; d < nsites - nsites / 2; ++d) {
    back -= bond_phases[nsites - d];
    dressing[nsites - d] = back;
  }
  Eigen::VectorXcd psi(nsites);
  for (int j = 0; j < nsites; ++j) {
    const int d = j <= nsites / 2 ? j : j - nsites;
    psi[j] = std::exp(-0.5 * d * d / (width * width)) * std::polar(1.0, k * d + dressing[j]);
  }
  psi /= psi.norm();
  return psi;
}

/// Relative phase of the counterclockwise vs clockwise arrival amplitudes at
/// the antipodal site.
///
/// Each arm is measured with the other arm severed at its midpoint and a
/// packet launched towards the open arm (carrier +k or -k). The arrival time
/// is half the circumference over the group velocity 2 t sin(k) / hbar. The
/// unsevered ring is also evolved with both packets superposed; its antipodal
/// intensity gives |phase| independently.
inline TwoArmResult two_arm_phase(const RingConfig& cfg, double k,
                                  const std::vector<double>& bond_phases,
                                  const TwoArmOptions& opt = {}) {
  cfg.validate();
  const int n = cfg.nsites;
  if (!(k > 0.0 && k < pi)) throw std::invalid_argument("wavenumber k must lie in (0, pi)");
  if (n % 2 != 0) throw std::invalid_argument("two-arm phase needs an even number of sites");
  if (!(opt.width > 0.0) || opt.width >= n / 4.0)
    throw std::invalid_argument("packet width must be in (0, N/4)");

  const int antipode = n / 2;
  const int cut_minus_arm = n / 2 + n / 4;      // bond on the clockwise arm
  const int cut_plus_arm = n - 1 - cut_minus_arm;  // its mirror image

  TwoArmResult r;
  r.group_velocity = 2.0 * cfg.hopping * std::sin(k) / cfg.hbar;
  r.arrival_time = 0.5 * n / r.group_velocity;

  const Eigen::VectorXcd packet_plus = ring_wavepacket(n, k, opt.width, bond_phases);
  const Eigen::VectorXcd packet_minus = ring_wavepacket(n, -k, opt.width, bond_phases);

  auto run = [&](std::optional<int> cut, const Eigen::VectorXcd& psi0) {
    RingPropagator prop(ring_hamiltonian(cfg, bond_phases, cut), cfg.hbar);
    const Eigen::VectorXcd psi = prop.evolve(psi0, r.arrival_time);
    r.norm_drift = std::max(r.norm_drift, std::abs(psi.norm() - psi0.norm()));
    return psi[antipode];
  };

  r.arm_plus = run(cut_minus_arm, packet_plus);
  r.arm_minus = run(cut_plus_arm, packet_minus);
  r.closed_amplitude = run(std::nullopt, packet_plus + packet_minus);

  if (std::abs(r.arm_plus) < 1e-8 || std::abs(r.arm_minus) < 1e-8)
    throw std::runtime_error("two_arm_phase: packet did not reach the antipodal site");

  r.phase = std::arg(r.arm_plus / r.arm_minus);
  const double a1 = std::norm(r.arm_plus);
  const double a2 = std::norm(r.arm_minus);
  const double c = (std::norm(r.closed_amplitude) - a1 - a2) / (2.0 * std::sqrt(a1 * a2));
  r.closed_phase = std::acos(std::clamp(c, -1.0, 1.0));
  return r;
}

inline TwoArmResult two_arm_phase(const RingConfig& cfg, double k,
                                  const TwoArmOptions& opt = {}) {
  return two_arm_phase(cfg, k, uniform_bond_phases(cfg), opt);
}

}  // namespace geophase

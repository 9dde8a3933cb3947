#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "plasticwalk/profile.hpp"
#include "plasticwalk/types.hpp"

namespace plasticwalk {

/// Nearest-neighbour one-particle lattice fermion Hamiltonian on a ring,
///   (H psi)_l = (i / (2 dx)) sigma_x (c_{l-1/2} psi_{l-1} - c_{l+1/2} psi_{l+1}) - m sigma_z psi_l,
/// where c_{l+1/2} is the hopping rate on the link between sites l and l+1.
class LatticeHamiltonian {
 public:
  LatticeHamiltonian(double dx, double m, std::vector<double> link_speeds);

  std::size_t sites() const { return links_.size(); }
  std::size_t dimension() const { return 2 * links_.size(); }
  double dx() const { return dx_; }
  double m() const { return m_; }
  /// Hopping rate between sites l and l+1 (periodic).
  double link(std::size_t l) const { return links_[l]; }
  const std::vector<double>& links() const { return links_; }

  SpinorField apply(const SpinorField& psi) const;
  /// Dense 2N x 2N matrix in interleaved (plus_0, minus_0, plus_1, ...) order.
  Eigen::MatrixXcd dense() const;

  friend bool operator==(const LatticeHamiltonian&, const LatticeHamiltonian&) = default;

 private:
  double dx_;
  double m_;
  std::vector<double> links_;
};

LatticeHamiltonian lattice_hamiltonian_flat(std::size_t sites, double dx, double m, double c);
/// Link rates sampled at the half sites x_l + dx/2 at time t0.
LatticeHamiltonian lattice_hamiltonian_curved(std::size_t sites, double dx, double m, const CProfile& cprofile,
                                              double t0 = 0.0);

/// 2x2 block of the flat Hamiltonian at momentum k: (c/dx) sin(k dx) sigma_x - m sigma_z.
Mat2 lattice_momentum_block(double c, double m, double dx, double k);
/// sqrt(c^2 sin^2(k dx) / dx^2 + m^2).
double lattice_energy(double c, double m, double dx, double k);
/// sqrt(c^2 k^2 + m^2).
double continuum_energy(double c, double m, double k);

/// max over random unit pairs of |<phi, H psi> - conj(<psi, H phi>)|.
double hermiticity_residual(const LatticeHamiltonian& h, std::uint64_t seed = 7, int trials = 8);

inline constexpr std::size_t kDenseDimensionBudget = 4096;

/// Dense eigendecomposition of H, reusable for several final times.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const LatticeHamiltonian& h);
  /// e^{-i H t} psi.
  SpinorField evolve(const SpinorField& psi, double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
  double dx_;
};

/// e^{-i H T} psi0 by dense diagonalization. SizeError if 2N > 4096.
SpinorField evolve_exact(const LatticeHamiltonian& h, const SpinorField& psi0, double t);

/// Crank-Nicolson stepper (I + i tau H / 2)^{-1} (I - i tau H / 2), banded LU.
class CrankNicolson {
 public:
  CrankNicolson(const LatticeHamiltonian& h, double tau);
  void step(SpinorField& psi) const;
  double tau() const { return tau_; }

 private:
  LatticeHamiltonian h_;
  double tau_;
  std::vector<std::size_t> order_;  // banded position of each unknown
  std::vector<cplx> band_;
  std::vector<int> pivots_;
};

/// `steps` Crank-Nicolson steps with tau = T / steps. SolverError if the
/// banded factorization fails.
SpinorField evolve_crank_nicolson(const LatticeHamiltonian& h, const SpinorField& psi0, double t, std::size_t steps);

/// Default step count: tau = min(dx/4, T/256).
std::size_t default_cn_steps(double dx, double t);

/// e^{-i T (c k sigma_x - m sigma_z)} for every ring momentum.
class DiracPropagator {
 public:
  DiracPropagator(double m, double c, std::size_t sites, double dx, double t);

  SpinorField apply(const SpinorField& psi) const;
  const std::vector<Mat2>& blocks() const { return blocks_; }
  const std::vector<double>& momenta() const { return momenta_; }

 private:
  double dx_;
  std::vector<double> momenta_;
  std::vector<Mat2> blocks_;
};

Mat2 dirac_momentum_block(double c, double m, double k);

DiracPropagator dirac_propagator(double m, double c, std::size_t sites, double dx, double t);

/// Fine-grid reference for the continuum curved Dirac dynamics: interpolate
/// psi0 onto a grid `refinement` times finer, evolve the curved lattice
/// Hamiltonian with Crank-Nicolson (tau <= dx_fine / 4, operator rebuilt at
/// each midpoint time for non-stationary profiles), restrict back.
SpinorField curved_dirac_reference(const SpinorField& psi0, const CProfile& cprofile, double m, double t,
                                   std::size_t refinement, double t0 = 0.0);

}  // namespace plasticwalk

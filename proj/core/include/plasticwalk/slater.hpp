#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "plasticwalk/qca.hpp"
#include "plasticwalk/types.hpp"

namespace plasticwalk {

/// n orthonormal orbitals over the 2N modes of a ring, rows in interleaved
/// order (plus_0, minus_0, plus_1, ...), which is also the qubit order.
class SlaterState {
 public:
  SlaterState(Eigen::MatrixXcd orbitals, double dx);
  /// One particle in each listed mode.
  static SlaterState from_modes(std::size_t sites, const std::vector<std::size_t>& modes, double dx = 1.0);

  std::size_t sites() const { return static_cast<std::size_t>(orbitals_.rows()) / 2; }
  std::size_t particles() const { return static_cast<std::size_t>(orbitals_.cols()); }
  double dx() const { return dx_; }
  const Eigen::MatrixXcd& orbitals() const { return orbitals_; }
  Eigen::MatrixXcd& orbitals() { return orbitals_; }

  SpinorField orbital(std::size_t j) const;
  void set_orbital(std::size_t j, const SpinorField& psi);

  /// max |A^dagger A - I|.
  double gram_deviation() const;
  /// <n_q> = sum_j |A_qj|^2 for every mode q.
  std::vector<double> occupations() const;

 private:
  Eigen::MatrixXcd orbitals_;
  double dx_;
};

/// det(A^dagger B); its modulus is invariant under orbital phases.
cplx slater_overlap(const SlaterState& a, const SlaterState& b);

void orthonormalize(SlaterState& state);

struct SlaterEvolution {
  SlaterState state;
  std::size_t reorthonormalizations = 0;
};

using OneParticleStep = std::function<SpinorField(const SpinorField&)>;

/// Applies `step` to every orbital `steps` times. Re-orthonormalizes when the
/// Gram deviation drifts above 1e-10 (counted in the result); throws
/// OrthogonalityError above 1e-6.
SlaterEvolution slater_evolve(const SlaterState& orbitals, const OneParticleStep& step, std::size_t steps);

/// Statevector of the determinant: amplitude of the occupied set
/// q_1 < ... < q_n is det A[q_1..q_n, :] (ascending Jordan-Wigner order).
QcaState slater_to_qca_state(const SlaterState& state);

/// Bitmasks of all 2N-mode configurations with n particles, ascending.
std::vector<std::uint64_t> fock_sector_basis(std::size_t modes, std::size_t particles);

/// sum_ij h_ij c_i^dagger c_j restricted to the n-particle sector, with
/// Jordan-Wigner signs in ascending mode order.
Eigen::MatrixXcd fock_sector_matrix(const Eigen::MatrixXcd& one_body, std::size_t particles);

/// Determinant amplitudes of `state` on fock_sector_basis.
Eigen::VectorXcd slater_sector_amplitudes(const SlaterState& state);

}  // namespace plasticwalk

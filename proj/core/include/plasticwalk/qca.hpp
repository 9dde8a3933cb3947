#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "plasticwalk/hamiltonians.hpp"
#include "plasticwalk/scaling.hpp"
#include "plasticwalk/types.hpp"
#include "plasticwalk/walk.hpp"

namespace plasticwalk {

/// Two-qubit gate. Local basis index is 2a + b for |ab>, a the value of
/// the `first` qubit.
struct Gate2Q {
  Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Identity();
  std::size_t first = 0;
  std::size_t second = 1;

  bool is_unitary(double tol = 1e-13) const;
  /// Block diagonal in total occupation {|00>}, {|01>,|10>}, {|11>}.
  bool is_number_conserving() const;
  /// One-particle block in the basis (|10>, |01>) = (first occupied, second occupied).
  Mat2 one_particle_block() const;
  Gate2Q placed(std::size_t first_qubit, std::size_t second_qubit) const;
  Gate2Q conj() const;
};

/// |00><00| + |01><10| + |10><01| - |11><11|.
Gate2Q gate_V();

enum class CoinVariant {
  kStandard,
  /// The alternative sigma_y-chiral gate U' with -e^{i zeta} sin(theta) on
  /// |10><10|. Its columns are orthogonal only when sin(2 theta) = 0, so it
  /// is not unitary in general and qca_step rejects it otherwise.
  kChiralSigmaY,
};

enum class PairPhase {
  /// |11> -> -|11>, a plain sign flip on double occupation.
  kMinusOne,
  /// |11> -> det(one-particle block) |11>, which makes the P-layer a free
  /// (quadratic) fermionic gate.
  kFreeFermion,
};

struct QcaOptions {
  CoinVariant variant = CoinVariant::kStandard;
  PairPhase pair_phase = PairPhase::kMinusOne;
};

Gate2Q gate_U(double theta, double zeta, const QcaOptions& options = {});

inline constexpr std::size_t kQubitBudget = 24;

/// Statevector over 2N qubits. Qubit q is bit q of the basis index; cell l
/// owns qubit 2l (left-mover, plus) and qubit 2l+1 (right-mover, minus).
class QcaState {
 public:
  /// Vacuum |0...0>. BudgetError if 2N > 24, DomainError if N < 2.
  explicit QcaState(std::size_t cells);
  static QcaState basis(std::size_t cells, std::size_t index);

  std::size_t cells() const { return cells_; }
  std::size_t qubits() const { return 2 * cells_; }
  std::size_t dimension() const { return amps_.size(); }

  std::vector<cplx>& amplitudes() { return amps_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  double norm() const;
  /// <n_q> for every qubit q.
  std::vector<double> occupations() const;
  void apply(const Gate2Q& gate);

 private:
  std::size_t cells_;
  std::vector<cplx> amps_;
};

/// P-pair of crossing l: (left subcell of cell l+1, right subcell of cell l).
Gate2Q place_on_p_pair(const Gate2Q& gate, std::size_t crossing, std::size_t cells);
/// Q-pair of cell l: (left subcell, right subcell).
Gate2Q place_on_q_pair(const Gate2Q& gate, std::size_t cell, std::size_t cells);

/// One global step, layers applied in order: U on P, V on Q, U* on P, V on Q.
/// `angles[l]` belongs to crossing l (between cells l and l+1).
QcaState qca_step(const QcaState& state, const std::vector<Angles>& angles, const QcaOptions& options = {});
QcaState qca_step(const QcaState& state, Angles angles, const QcaOptions& options = {});

/// Angles of every crossing, sampled at x_l + dx/2 and time t.
std::vector<Angles> crossing_angles(const ScalingParams& params, std::size_t cells, double t);

QcaState embed_one_particle(const SpinorField& psi);
/// SectorError if the weight outside the one-particle sector exceeds 1e-10.
SpinorField extract_one_particle(const QcaState& state, double dx = 1.0);

/// The one-particle action of qca_step, computed on a spinor field. The
/// off-diagonal terms of the wrap-around P-pair are multiplied by
/// `wrap_phase`; with free-fermion gates, wrap_phase = (-1)^(n-1) reproduces
/// the n-particle sector through Jordan-Wigner ordering.
SpinorField qca_one_particle_step(const SpinorField& psi, const std::vector<Angles>& angles,
                                  const QcaOptions& options = {}, double wrap_phase = 1.0);

/// E^dagger W E psi with W = S C_{-zeta} S C_{zeta} (no frame) and E = S+.
SpinorField encoded_walk_step(const SpinorField& psi, double theta, double zeta);

/// max over the one-particle basis of |extract(qca_step(embed(e))) - E^dagger W E e|.
/// BudgetError for more than 12 cells.
double verify_encoding(double theta, double zeta, std::size_t cells, const QcaOptions& options = {});

/// Builds the full step matrix densely and returns the largest entry that
/// connects basis states of different particle number.
double number_conservation_residual(double theta, double zeta, std::size_t cells, const QcaOptions& options = {});

/// Single-particle matrix of the quadratic Fock Hamiltonian; identical to the
/// curved lattice Hamiltonian.
LatticeHamiltonian kogut_susskind_matrix(std::size_t sites, double dx, double m, const CProfile& cprofile,
                                         double t0 = 0.0);

}  // namespace plasticwalk

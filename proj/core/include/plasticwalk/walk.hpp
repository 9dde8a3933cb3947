#pragma once

#include <cstddef>
#include <vector>

#include "plasticwalk/scaling.hpp"
#include "plasticwalk/types.hpp"

namespace plasticwalk {

struct Angles {
  double theta = 0.0;
  double zeta = 0.0;
};

/// theta = acos(c kappa) and the mass angle zeta for the speed c(t, x).
/// zeta is exactly 0 when m = 0. Throws DomainError if c kappa > 1 and
/// SingularMassError if m > 0 while sin(theta) = 0.
Angles derive_angles(const ScalingParams& params, double t, double x);
/// Same as derive_angles for an already-sampled speed c.
Angles angles_for_speed(const ScalingParams& params, double c);

/// [[-cos t, e^{-i z} sin t], [e^{i z} sin t, cos t]]; unitary, det = -1.
Mat2 coin_matrix(double theta, double zeta);

/// (1/2) [[-f-, f+], [f+, f-]] with f+- = sqrt(1-c) +- sqrt(1+c). Real,
/// symmetric, squares to the identity.
Mat2 lambda_matrix(double c);

/// Principal spectral power of lambda_matrix(c): eigenvalue +1 kept, -1
/// mapped to e^{i pi kappa}. Unitary for every real kappa.
Mat2 lambda_power(double c, double kappa);

/// exp(-i sigma_y asin(c kappa) / 2), the kRotation frame.
Mat2 rotation_frame(double c, double kappa);

/// Frame applied before the first coin (its adjoint closes the step).
Mat2 walk_frame(const ScalingParams& params, double c);

/// (S psi)_l = (plus_{l+1}, minus_{l-1}), periodic.
SpinorField shift_full(const SpinorField& field);
/// Partial shift S+: (plus_{l+1}, minus_l).
SpinorField shift_plus(const SpinorField& field);
/// Partial shift S-: (plus_l, minus_{l-1}).
SpinorField shift_minus(const SpinorField& field);

/// E = S+, the encoding relating the walk to the lattice-fermion frame, and its inverse.
SpinorField encode_lattice_frame(const SpinorField& field);
SpinorField decode_lattice_frame(const SpinorField& field);

/// Per-site operators of one walk step at a fixed time, ready to apply
/// repeatedly. Applies F, C_{+zeta}, S, C_{-zeta}, S, F^dagger (right to left).
class StepOperator {
 public:
  StepOperator(const ScalingParams& params, std::size_t sites, double t);

  std::size_t sites() const { return first_.size(); }

  /// Whole step, F^dagger S C_- S C_+ F.
  void apply(SpinorField& field) const;
  /// The frame-free core S C_- S C_+; W^n = F^dagger core^n F.
  void apply_core(SpinorField& field) const;
  void apply_frame(SpinorField& field) const;
  void apply_frame_adjoint(SpinorField& field) const;

 private:
  std::vector<Mat2> frame_;
  std::vector<Mat2> first_;   // C_{+zeta}
  std::vector<Mat2> second_;  // C_{-zeta}
};

/// One walk step of duration 2 dt starting at time t. Every spacetime
/// dependent operator is evaluated at t.
SpinorField qw_step(const SpinorField& field, const ScalingParams& params, double t);

/// `steps` consecutive walk steps starting at t0. Stationary profiles reuse
/// the per-site operators and collapse the intermediate frames.
SpinorField qw_evolve(const SpinorField& field, const ScalingParams& params, double t0, std::size_t steps);

/// W(k) = F^dagger D(k) C_- D(k) C_+ F with D(k) = diag(e^{ik dx}, e^{-ik dx}).
/// Throws InhomogeneousError for non-homogeneous profiles.
Mat2 momentum_block(const ScalingParams& params, double k);

}  // namespace plasticwalk

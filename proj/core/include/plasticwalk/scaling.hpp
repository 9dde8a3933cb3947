#pragma once

#include "plasticwalk/profile.hpp"

namespace plasticwalk {

/// How the walk dresses the coin-shift core with a local frame.
///
/// kRotation: frame exp(-i sigma_y * asin(c kappa) / 2), zeta = m eps / sin(theta),
///   c sampled at the crossing midpoint x_l + dx/2. Converges at O(eps) to the
///   encoded lattice / Dirac dynamics for every alpha in [0, 1].
/// kSpectralLambda: frame Lambda(c)^kappa (principal spectral power),
///   zeta = m cos(pi kappa) eps / sin(theta), c sampled at x_l. This is the
///   construction read literally; see README for its measured limits.
enum class FrameConvention { kRotation, kSpectralLambda };

/// (m, c-profile, epsilon, alpha) plus the derived dt = eps, dx = eps^(1-alpha),
/// kappa = eps^alpha.
struct ScalingParams {
  double m = 0.0;
  CProfile cprofile = CProfile::constant(0.0);
  double epsilon = 1.0;
  double alpha = 0.0;
  double dt = 1.0;
  double dx = 1.0;
  double kappa = 1.0;
  FrameConvention frame = FrameConvention::kRotation;

  /// Validates m >= 0, 0 < epsilon <= 1, 0 <= alpha <= 1 (DomainError otherwise).
  static ScalingParams make(double m, CProfile cprofile, double epsilon, double alpha,
                            FrameConvention frame = FrameConvention::kRotation);

  /// Position at which per-site operators of site l sample c.
  double sample_position(double x_site) const;
};

}  // namespace plasticwalk

#include "plasticwalk/scaling.hpp"

#include <cmath>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

ScalingParams ScalingParams::make(double m, CProfile cprofile, double epsilon, double alpha, FrameConvention frame) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("mass m must be a finite nonnegative number");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  ScalingParams p;
  p.m = m;
  p.cprofile = std::move(cprofile);
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.dt = epsilon;
  p.dx = std::pow(epsilon, 1.0 - alpha);
  p.kappa = std::pow(epsilon, alpha);
  p.frame = frame;
  return p;
}

double ScalingParams::sample_position(double x_site) const {
  return frame == FrameConvention::kRotation ? x_site + 0.5 * dx : x_site;
}

}  // namespace plasticwalk

#include "plasticwalk/profile.hpp"

#include <cmath>
#include <sstream>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/types.hpp"

namespace plasticwalk {

CProfile::CProfile(Rule rule, bool homogeneous, bool stationary, std::string name)
    : rule_(std::move(rule)), homogeneous_(homogeneous), stationary_(stationary || homogeneous), name_(std::move(name)) {}

CProfile CProfile::constant(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("constant speed c must lie in [0, 1]");
  return CProfile([c](double, double) { return c; }, true, true, "flat");
}

CProfile CProfile::sine_bump(double c0, double amplitude, double length) {
  if (!(length > 0.0)) throw DomainError("sine-bump period must be positive");
  if (c0 - std::abs(amplitude) < 0.0 || c0 + std::abs(amplitude) > 1.0) {
    throw DomainError("sine-bump profile leaves [0, 1]: need 0 <= c0 - |a| and c0 + |a| <= 1");
  }
  return CProfile(
      [=](double, double x) { return c0 + amplitude * std::sin(2.0 * kPi * x / length); }, amplitude == 0.0, true,
      "sine-bump");
}

CProfile CProfile::gaussian_well(double c0, double depth, double center, double width, double length) {
  if (!(length > 0.0) || !(width > 0.0)) throw DomainError("gaussian-well needs positive width and length");
  if (c0 > 1.0 || c0 < 0.0 || c0 - depth < 0.0 || c0 - depth > 1.0) {
    throw DomainError("gaussian-well profile leaves [0, 1]");
  }
  return CProfile(
      [=](double, double x) {
        const double d = std::remainder(x - center, length);
        return c0 - depth * std::exp(-d * d / (2.0 * width * width));
      },
      depth == 0.0, true, "gaussian-well");
}

CProfile CProfile::from_rule(Rule rule, bool homogeneous, bool stationary, std::string name) {
  if (!rule) throw DomainError("profile rule is empty");
  return CProfile(std::move(rule), homogeneous, stationary, std::move(name));
}

double CProfile::operator()(double t, double x) const {
  const double c = rule_(t, x);
  if (!(c >= 0.0 && c <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "profile '" << name_ << "' gives c = " << c << " outside [0, 1] at (t, x) = (" << t << ", " << x << ")";
    throw DomainError(msg.str());
  }
  return c;
}

}  // namespace plasticwalk

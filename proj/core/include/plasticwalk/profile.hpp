#pragma once

#include <functional>
#include <string>

namespace plasticwalk {

/// Speed-of-propagation (hopping rate) field c(t, x) with values in [0, 1].
///
/// Every evaluation is range-checked; a value outside [0, 1] raises
/// DomainError at the point where it was sampled. `homogeneous()` means the
/// rule depends on neither t nor x; `stationary()` means it does not depend
/// on t, which lets evolutions reuse per-site operators across steps.
class CProfile {
 public:
  using Rule = std::function<double(double t, double x)>;

  static CProfile constant(double c);
  /// c(x) = c0 + amplitude * sin(2 pi x / length).
  static CProfile sine_bump(double c0, double amplitude, double length);
  /// c(x) = c0 - depth * exp(-d^2 / (2 width^2)), d the periodic distance to center.
  static CProfile gaussian_well(double c0, double depth, double center, double width, double length);
  static CProfile from_rule(Rule rule, bool homogeneous, bool stationary, std::string name);

  double operator()(double t, double x) const;

  bool homogeneous() const { return homogeneous_; }
  bool stationary() const { return stationary_; }
  const std::string& name() const { return name_; }

 private:
  CProfile(Rule rule, bool homogeneous, bool stationary, std::string name);

  Rule rule_;
  bool homogeneous_;
  bool stationary_;
  std::string name_;
};

}  // namespace plasticwalk

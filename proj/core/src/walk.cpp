#include "plasticwalk/walk.hpp"

#include <cmath>
#include <sstream>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

namespace {

void check_speed(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    std::ostringstream msg;
    msg << "speed c = " << c << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

void check_spacing(const SpinorField& field, const ScalingParams& params) {
  if (std::abs(field.dx() - params.dx) > 1e-12 * params.dx) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "field spacing " << field.dx() << " does not match walk spacing " << params.dx;
    throw DomainError(msg.str());
  }
}

}  // namespace

Angles angles_for_speed(const ScalingParams& params, double c) {
  check_speed(c);
  const double y = c * params.kappa;
  if (y > 1.0) throw DomainError("c * kappa exceeds 1; arccos undefined");
  Angles a;
  a.theta = std::acos(y);
  if (params.m == 0.0) return a;
  const double sin_theta = std::sqrt((1.0 - y) * (1.0 + y));
  if (sin_theta == 0.0) throw SingularMassError("m > 0 requires sin(theta) > 0, but c * kappa = 1");
  const double sign = params.frame == FrameConvention::kSpectralLambda ? std::cos(kPi * params.kappa) : 1.0;
  a.zeta = params.m * sign * params.epsilon / sin_theta;
  return a;
}

Angles derive_angles(const ScalingParams& params, double t, double x) {
  return angles_for_speed(params, params.cprofile(t, x));
}

Mat2 coin_matrix(double theta, double zeta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {-c, std::polar(s, -zeta), std::polar(s, zeta), c};
}

Mat2 lambda_matrix(double c) {
  check_speed(c);
  const double a = std::sqrt(1.0 - c);
  const double b = std::sqrt(1.0 + c);
  const double f_plus = a + b;
  const double f_minus = a - b;
  return {-0.5 * f_minus, 0.5 * f_plus, 0.5 * f_plus, 0.5 * f_minus};
}

Mat2 lambda_power(double c, double kappa) {
  const Mat2 lambda = lambda_matrix(c);
  const Mat2 id = Mat2::identity();
  const Mat2 keep = 0.5 * (id + lambda);
  const Mat2 flip = 0.5 * (id - lambda);
  return keep + std::exp(cplx(0.0, kPi * kappa)) * flip;
}

Mat2 rotation_frame(double c, double kappa) {
  check_speed(c);
  const double beta = 0.5 * std::asin(c * kappa);
  const double co = std::cos(beta);
  const double si = std::sin(beta);
  return {co, -si, si, co};
}

Mat2 walk_frame(const ScalingParams& params, double c) {
  return params.frame == FrameConvention::kRotation ? rotation_frame(c, params.kappa) : lambda_power(c, params.kappa);
}

SpinorField shift_full(const SpinorField& field) {
  const std::size_t n = field.size();
  SpinorField out(n, field.dx());
  for (std::size_t l = 0; l < n; ++l) {
    out[l].plus = field[(l + 1) % n].plus;
    out[l].minus = field[(l + n - 1) % n].minus;
  }
  return out;
}

SpinorField shift_plus(const SpinorField& field) {
  const std::size_t n = field.size();
  SpinorField out(n, field.dx());
  for (std::size_t l = 0; l < n; ++l) out[l] = {field[(l + 1) % n].plus, field[l].minus};
  return out;
}

SpinorField shift_minus(const SpinorField& field) {
  const std::size_t n = field.size();
  SpinorField out(n, field.dx());
  for (std::size_t l = 0; l < n; ++l) out[l] = {field[l].plus, field[(l + n - 1) % n].minus};
  return out;
}

SpinorField encode_lattice_frame(const SpinorField& field) { return shift_plus(field); }

SpinorField decode_lattice_frame(const SpinorField& field) {
  const std::size_t n = field.size();
  SpinorField out(n, field.dx());
  for (std::size_t l = 0; l < n; ++l) out[l] = {field[(l + n - 1) % n].plus, field[l].minus};
  return out;
}

StepOperator::StepOperator(const ScalingParams& params, std::size_t sites, double t)
    : frame_(sites), first_(sites), second_(sites) {
  for (std::size_t l = 0; l < sites; ++l) {
    const double x = params.sample_position(static_cast<double>(l) * params.dx);
    const double c = params.cprofile(t, x);
    const Angles a = angles_for_speed(params, c);
    frame_[l] = walk_frame(params, c);
    first_[l] = coin_matrix(a.theta, a.zeta);
    second_[l] = coin_matrix(a.theta, -a.zeta);
  }
}

void StepOperator::apply_frame(SpinorField& field) const {
  for (std::size_t l = 0; l < field.size(); ++l) field[l] = frame_[l] * field[l];
}

void StepOperator::apply_frame_adjoint(SpinorField& field) const {
  for (std::size_t l = 0; l < field.size(); ++l) field[l] = frame_[l].adjoint() * field[l];
}

void StepOperator::apply_core(SpinorField& field) const {
  if (field.size() != sites()) throw DomainError("field size does not match step operator");
  const std::size_t n = field.size();
  auto sites = field.sites();
  for (std::size_t l = 0; l < n; ++l) sites[l] = first_[l] * sites[l];
  // Shift, then the second coin, fused: out_l = C-_l (plus_{l+1}, minus_{l-1}).
  std::vector<Spinor2> tmp(sites.begin(), sites.end());
  for (std::size_t l = 0; l < n; ++l) {
    const Spinor2 shifted{tmp[(l + 1) % n].plus, tmp[(l + n - 1) % n].minus};
    sites[l] = second_[l] * shifted;
  }
  tmp.assign(sites.begin(), sites.end());
  for (std::size_t l = 0; l < n; ++l) sites[l] = {tmp[(l + 1) % n].plus, tmp[(l + n - 1) % n].minus};
}

void StepOperator::apply(SpinorField& field) const {
  apply_frame(field);
  apply_core(field);
  apply_frame_adjoint(field);
}

SpinorField qw_step(const SpinorField& field, const ScalingParams& params, double t) {
  check_spacing(field, params);
  SpinorField out = field;
  StepOperator(params, field.size(), t).apply(out);
  return out;
}

SpinorField qw_evolve(const SpinorField& field, const ScalingParams& params, double t0, std::size_t steps) {
  check_spacing(field, params);
  SpinorField out = field;
  if (steps == 0) return out;
  if (params.cprofile.stationary()) {
    const StepOperator op(params, field.size(), t0);
    op.apply_frame(out);
    for (std::size_t j = 0; j < steps; ++j) op.apply_core(out);
    op.apply_frame_adjoint(out);
    return out;
  }
  for (std::size_t j = 0; j < steps; ++j) {
    StepOperator(params, field.size(), t0 + 2.0 * params.dt * static_cast<double>(j)).apply(out);
  }
  return out;
}

Mat2 momentum_block(const ScalingParams& params, double k) {
  if (!params.cprofile.homogeneous()) throw InhomogeneousError("momentum_block needs a homogeneous profile");
  const double c = params.cprofile(0.0, 0.0);
  const Angles a = angles_for_speed(params, c);
  const Mat2 frame = walk_frame(params, c);
  const Mat2 d = Mat2::diagonal(std::polar(1.0, k * params.dx), std::polar(1.0, -k * params.dx));
  return frame.adjoint() * d * coin_matrix(a.theta, -a.zeta) * d * coin_matrix(a.theta, a.zeta) * frame;
}

}  // namespace plasticwalk

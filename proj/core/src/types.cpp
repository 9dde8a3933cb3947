#include "plasticwalk/types.hpp"

#include <algorithm>
#include <cmath>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

SpinorField::SpinorField(std::size_t sites, double dx) : SpinorField(std::vector<Spinor2>(sites), dx) {}

SpinorField::SpinorField(std::vector<Spinor2> sites, double dx) : sites_(std::move(sites)), dx_(dx) {
  if (sites_.size() < 2) throw DomainError("SpinorField needs at least 2 sites");
  if (!(dx_ > 0.0) || !std::isfinite(dx_)) throw DomainError("SpinorField spacing must be positive");
}

std::size_t SpinorField::wrap(std::ptrdiff_t l) const {
  const auto n = static_cast<std::ptrdiff_t>(sites_.size());
  auto r = l % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

double SpinorField::norm2() const {
  double s = 0.0;
  for (const auto& v : sites_) s += std::norm(v.plus) + std::norm(v.minus);
  return s;
}

double SpinorField::norm() const { return std::sqrt(norm2()); }

cplx SpinorField::inner(const SpinorField& other) const {
  if (other.size() != size()) throw DomainError("inner product of fields with different sizes");
  cplx s{};
  for (std::size_t l = 0; l < sites_.size(); ++l) {
    s += std::conj(sites_[l].plus) * other[l].plus + std::conj(sites_[l].minus) * other[l].minus;
  }
  return s;
}

bool SpinorField::is_finite() const {
  return std::all_of(sites_.begin(), sites_.end(), [](const Spinor2& v) {
    return std::isfinite(v.plus.real()) && std::isfinite(v.plus.imag()) && std::isfinite(v.minus.real()) &&
           std::isfinite(v.minus.imag());
  });
}

std::vector<cplx> SpinorField::interleaved() const {
  std::vector<cplx> out(2 * sites_.size());
  for (std::size_t l = 0; l < sites_.size(); ++l) {
    out[2 * l] = sites_[l].plus;
    out[2 * l + 1] = sites_[l].minus;
  }
  return out;
}

SpinorField SpinorField::from_interleaved(std::span<const cplx> values, double dx) {
  if (values.size() % 2 != 0) throw DomainError("interleaved spinor data must have even length");
  std::vector<Spinor2> sites(values.size() / 2);
  for (std::size_t l = 0; l < sites.size(); ++l) sites[l] = {values[2 * l], values[2 * l + 1]};
  return SpinorField(std::move(sites), dx);
}

SpinorField& SpinorField::operator*=(cplx factor) {
  for (auto& v : sites_) {
    v.plus *= factor;
    v.minus *= factor;
  }
  return *this;
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  if (other.size() != size()) throw DomainError("field size mismatch");
  for (std::size_t l = 0; l < sites_.size(); ++l) {
    sites_[l].plus += other[l].plus;
    sites_[l].minus += other[l].minus;
  }
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  if (other.size() != size()) throw DomainError("field size mismatch");
  for (std::size_t l = 0; l < sites_.size(); ++l) {
    sites_[l].plus -= other[l].plus;
    sites_[l].minus -= other[l].minus;
  }
  return *this;
}

SpinorField operator-(SpinorField lhs, const SpinorField& rhs) {
  lhs -= rhs;
  return lhs;
}

double l2_distance(const SpinorField& a, const SpinorField& b) { return (a - b).norm(); }

double max_distance(const SpinorField& a, const SpinorField& b) {
  if (a.size() != b.size()) throw DomainError("field size mismatch");
  double worst = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    worst = std::max(worst, std::sqrt(std::norm(a[l].plus - b[l].plus) + std::norm(a[l].minus - b[l].minus)));
  }
  return worst;
}

double Mat2::max_abs() const { return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)}); }

bool Mat2::is_unitary(double tol) const { return max_abs_diff(adjoint() * (*this), identity()) <= tol; }

bool Mat2::is_hermitian(double tol) const { return max_abs_diff(adjoint(), *this) <= tol; }

double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

namespace {

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  if (phi <= -kPi) phi += 2.0 * kPi;
  return phi;
}

}  // namespace

std::array<double, 2> eigenphases(const Mat2& u) {
  // u = e^{i g} (a0 + i a.sigma) with a0^2 + |a|^2 = 1; eigenphases g +- atan2(|a|, a0).
  const double g = 0.5 * std::arg(u.det());
  const cplx rot = std::exp(cplx(0.0, -g));
  const Mat2 v = rot * u;
  const double a0 = 0.5 * (v.a11 + v.a22).real();
  const double az2 = std::norm(0.5 * (v.a11 - v.a22));
  const double axy2 = 0.5 * (std::norm(v.a12) + std::norm(v.a21));
  const double a = std::sqrt(az2 + axy2);
  const double half = std::atan2(a, a0);
  std::array<double, 2> out{wrap_phase(g - half), wrap_phase(g + half)};
  std::sort(out.begin(), out.end());
  return out;
}

Mat2 expm_hermitian(const Mat2& h, double t) {
  const double h0 = 0.5 * (h.a11 + h.a22).real();
  const Mat2 traceless = h - Mat2::diagonal(h0, h0);
  const double r = std::sqrt(std::norm(traceless.a11) + 0.5 * (std::norm(traceless.a12) + std::norm(traceless.a21)));
  const double c = std::cos(r * t);
  const double s_over_r = r > 0.0 ? std::sin(r * t) / r : t;
  const Mat2 su2 = Mat2::diagonal(c, c) - (kI * s_over_r) * traceless;
  return std::exp(cplx(0.0, -h0 * t)) * su2;
}

}  // namespace plasticwalk

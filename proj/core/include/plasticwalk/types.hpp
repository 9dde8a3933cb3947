#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace plasticwalk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Two-component amplitude at one lattice site. `plus` is the left-moving
/// component, `minus` the right-moving one.
struct Spinor2 {
  cplx plus{};
  cplx minus{};

  friend bool operator==(const Spinor2&, const Spinor2&) = default;
};

/// Spinor field on a periodic ring of N >= 2 sites with spacing dx.
/// Site l sits at x_l = l * dx.
class SpinorField {
 public:
  SpinorField(std::size_t sites, double dx);
  SpinorField(std::vector<Spinor2> sites, double dx);

  std::size_t size() const { return sites_.size(); }
  double dx() const { return dx_; }
  double length() const { return static_cast<double>(sites_.size()) * dx_; }
  double position(std::size_t l) const { return static_cast<double>(l) * dx_; }

  Spinor2& operator[](std::size_t l) { return sites_[l]; }
  const Spinor2& operator[](std::size_t l) const { return sites_[l]; }

  std::span<Spinor2> sites() { return sites_; }
  std::span<const Spinor2> sites() const { return sites_; }

  /// Periodic index: maps any integer onto [0, N).
  std::size_t wrap(std::ptrdiff_t l) const;

  /// Sum over sites of |plus|^2 + |minus|^2 (no dx weight).
  double norm2() const;
  double norm() const;

  /// <this, other>, antilinear in the first argument.
  cplx inner(const SpinorField& other) const;

  bool is_finite() const;

  /// Components laid out as (plus_0, minus_0, plus_1, minus_1, ...).
  std::vector<cplx> interleaved() const;
  static SpinorField from_interleaved(std::span<const cplx> values, double dx);

  SpinorField& operator*=(cplx factor);
  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);

 private:
  std::vector<Spinor2> sites_;
  double dx_;
};

SpinorField operator-(SpinorField lhs, const SpinorField& rhs);

/// sqrt(sum_l |a_l - b_l|^2).
double l2_distance(const SpinorField& a, const SpinorField& b);
/// max_l sqrt(|a_l - b_l|^2), the site-wise spinor norm.
double max_distance(const SpinorField& a, const SpinorField& b);

/// 2x2 complex matrix acting on Spinor2.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diagonal(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
  static Mat2 pauli_y() { return {0.0, -kI, kI, 0.0}; }
  static Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

  Mat2 adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
  Mat2 conj() const { return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)}; }
  cplx det() const { return a11 * a22 - a12 * a21; }
  cplx trace() const { return a11 + a22; }
  double max_abs() const;

  bool is_unitary(double tol = 1e-12) const;
  bool is_hermitian(double tol = 1e-12) const;

  Spinor2 operator*(const Spinor2& v) const {
    return {a11 * v.plus + a12 * v.minus, a21 * v.plus + a22 * v.minus};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a11, s * m.a12, s * m.a21, s * m.a22}; }
};

double max_abs_diff(const Mat2& a, const Mat2& b);

/// Eigenphases of a 2x2 unitary, sorted ascending, each in (-pi, pi].
/// Accurate in absolute terms near degeneracy (no discriminant square root).
std::array<double, 2> eigenphases(const Mat2& u);

/// Matrix exponential exp(-i * t * h) for Hermitian h.
Mat2 expm_hermitian(const Mat2& h, double t);

}  // namespace plasticwalk

#include "plasticwalk/hamiltonians.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/fourier.hpp"

namespace plasticwalk {

namespace {

void check_link(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    std::ostringstream msg;
    msg << "hopping rate " << c << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

Eigen::VectorXcd to_vector(const SpinorField& psi) {
  Eigen::VectorXcd v(2 * psi.size());
  for (std::size_t l = 0; l < psi.size(); ++l) {
    v(2 * l) = psi[l].plus;
    v(2 * l + 1) = psi[l].minus;
  }
  return v;
}

SpinorField from_vector(const Eigen::VectorXcd& v, double dx) {
  SpinorField out(static_cast<std::size_t>(v.size()) / 2, dx);
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = {v(2 * l), v(2 * l + 1)};
  return out;
}

SpinorField random_unit_field(std::size_t n, double dx, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpinorField f(n, dx);
  for (auto& s : f.sites()) s = {{g(rng), g(rng)}, {g(rng), g(rng)}};
  f *= 1.0 / f.norm();
  return f;
}

}  // namespace

LatticeHamiltonian::LatticeHamiltonian(double dx, double m, std::vector<double> link_speeds)
    : dx_(dx), m_(m), links_(std::move(link_speeds)) {
  if (links_.size() < 2) throw DomainError("lattice Hamiltonian needs N >= 2 sites");
  if (!(dx > 0.0)) throw DomainError("dx must be positive");
  if (!(m >= 0.0)) throw DomainError("mass must be nonnegative");
  for (double c : links_) check_link(c);
}

SpinorField LatticeHamiltonian::apply(const SpinorField& psi) const {
  if (psi.size() != sites()) throw DomainError("field size does not match Hamiltonian");
  const std::size_t n = sites();
  const cplx hop = kI / (2.0 * dx_);
  SpinorField out(n, psi.dx());
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t lm = (l + n - 1) % n;
    const std::size_t lp = (l + 1) % n;
    const double cm = links_[lm];
    const double cp = links_[l];
    // sigma_x swaps the components.
    const cplx plus = hop * (cm * psi[lm].minus - cp * psi[lp].minus) - m_ * psi[l].plus;
    const cplx minus = hop * (cm * psi[lm].plus - cp * psi[lp].plus) + m_ * psi[l].minus;
    out[l] = {plus, minus};
  }
  return out;
}

Eigen::MatrixXcd LatticeHamiltonian::dense() const {
  const std::size_t n = sites();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx hop = kI / (2.0 * dx_);
  for (std::size_t l = 0; l < n; ++l) {
    const auto i = static_cast<Eigen::Index>(l);
    const auto lp = static_cast<Eigen::Index>((l + 1) % n);
    h(2 * i, 2 * i) += -m_;
    h(2 * i + 1, 2 * i + 1) += m_;
    // link l <-> l+1: H_{l,l+1} = -hop c sigma_x, H_{l+1,l} = +hop c sigma_x
    const cplx a = -hop * links_[l];
    h(2 * i, 2 * lp + 1) += a;
    h(2 * i + 1, 2 * lp) += a;
    h(2 * lp, 2 * i + 1) += -a;
    h(2 * lp + 1, 2 * i) += -a;
  }
  return h;
}

LatticeHamiltonian lattice_hamiltonian_flat(std::size_t sites, double dx, double m, double c) {
  check_link(c);
  return LatticeHamiltonian(dx, m, std::vector<double>(sites, c));
}

LatticeHamiltonian lattice_hamiltonian_curved(std::size_t sites, double dx, double m, const CProfile& cprofile,
                                              double t0) {
  std::vector<double> links(sites);
  for (std::size_t l = 0; l < sites; ++l) links[l] = cprofile(t0, (static_cast<double>(l) + 0.5) * dx);
  return LatticeHamiltonian(dx, m, std::move(links));
}

Mat2 lattice_momentum_block(double c, double m, double dx, double k) {
  const double a = c * std::sin(k * dx) / dx;
  return {-m, a, a, m};
}

double lattice_energy(double c, double m, double dx, double k) {
  const double a = c * std::sin(k * dx) / dx;
  return std::sqrt(a * a + m * m);
}

double continuum_energy(double c, double m, double k) { return std::sqrt(c * c * k * k + m * m); }

double hermiticity_residual(const LatticeHamiltonian& h, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int j = 0; j < trials; ++j) {
    const SpinorField phi = random_unit_field(h.sites(), h.dx(), rng);
    const SpinorField psi = random_unit_field(h.sites(), h.dx(), rng);
    const cplx lhs = phi.inner(h.apply(psi));
    const cplx rhs = std::conj(psi.inner(h.apply(phi)));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

SpectralPropagator::SpectralPropagator(const LatticeHamiltonian& h) : dx_(h.dx()) {
  if (h.dimension() > kDenseDimensionBudget) {
    std::ostringstream msg;
    msg << "dense evolution limited to 2N <= " << kDenseDimensionBudget << ", got " << h.dimension();
    throw SizeError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
  if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

SpinorField SpectralPropagator::evolve(const SpinorField& psi, double t) const {
  if (static_cast<Eigen::Index>(2 * psi.size()) != vectors_.rows()) throw DomainError("field size does not match");
  if (t == 0.0) return psi;
  Eigen::VectorXcd coeff = vectors_.adjoint() * to_vector(psi);
  for (Eigen::Index j = 0; j < coeff.size(); ++j) coeff(j) *= std::polar(1.0, -energies_(j) * t);
  return from_vector(vectors_ * coeff, psi.dx());
}

SpinorField evolve_exact(const LatticeHamiltonian& h, const SpinorField& psi0, double t) {
  if (h.dimension() > kDenseDimensionBudget) {
    std::ostringstream msg;
    msg << "dense evolution limited to 2N <= " << kDenseDimensionBudget << ", got " << h.dimension();
    throw SizeError(msg.str());
  }
  if (t == 0.0) return psi0;
  return SpectralPropagator(h).evolve(psi0, t);
}

namespace {

constexpr int kBand = 5;  // unknowns coupled at most 5 positions apart in zig-zag order
constexpr int kLdab = 2 * kBand + kBand + 1;

// std::complex<double> and the C99 complex type share layout.
lapack_complex_double* as_lapack(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
const lapack_complex_double* as_lapack(const cplx* p) { return reinterpret_cast<const lapack_complex_double*>(p); }

}  // namespace

CrankNicolson::CrankNicolson(const LatticeHamiltonian& h, double tau) : h_(h), tau_(tau) {
  if (!(tau > 0.0)) throw DomainError("Crank-Nicolson step must be positive");
  const std::size_t n = h.sites();
  // Zig-zag site order 0, N-1, 1, N-2, ... keeps the periodic ring banded.
  std::vector<std::size_t> site_pos(n);
  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t s = (o % 2 == 0) ? o / 2 : n - 1 - (o - 1) / 2;
    site_pos[s] = o;
  }
  order_.resize(2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    order_[2 * s] = 2 * site_pos[s];
    order_[2 * s + 1] = 2 * site_pos[s] + 1;
  }
  const std::size_t dim = 2 * n;
  band_.assign(static_cast<std::size_t>(kLdab) * dim, cplx{});
  auto at = [&](std::size_t i, std::size_t j) -> cplx& {
    const std::size_t r = order_[i];
    const std::size_t c = order_[j];
    return band_[static_cast<std::size_t>(2 * kBand) + r - c + c * kLdab];
  };
  // A = I + (i tau / 2) H
  const cplx half = 0.5 * kI * tau;
  const cplx hop = kI / (2.0 * h.dx());
  for (std::size_t s = 0; s < n; ++s) {
    at(2 * s, 2 * s) += 1.0 + half * (-h.m());
    at(2 * s + 1, 2 * s + 1) += 1.0 + half * h.m();
    const std::size_t sp = (s + 1) % n;
    const cplx a = half * (-hop * h.link(s));
    at(2 * s, 2 * sp + 1) += a;
    at(2 * s + 1, 2 * sp) += a;
    at(2 * sp, 2 * s + 1) += -a;
    at(2 * sp + 1, 2 * s) += -a;
  }
  pivots_.assign(dim, 0);
  const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(dim), static_cast<lapack_int>(dim),
                                         kBand, kBand, as_lapack(band_.data()), kLdab, pivots_.data());
  if (info != 0) {
    std::ostringstream msg;
    msg << "banded LU factorization failed (zgbtrf info " << info << ")";
    throw SolverError(msg.str());
  }
}

void CrankNicolson::step(SpinorField& psi) const {
  const SpinorField hpsi = h_.apply(psi);
  const std::size_t n = psi.size();
  std::vector<cplx> rhs(2 * n);
  const cplx half = 0.5 * kI * tau_;
  for (std::size_t s = 0; s < n; ++s) {
    rhs[order_[2 * s]] = psi[s].plus - half * hpsi[s].plus;
    rhs[order_[2 * s + 1]] = psi[s].minus - half * hpsi[s].minus;
  }
  const lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(2 * n), kBand, kBand, 1,
                                         as_lapack(band_.data()), kLdab, pivots_.data(), as_lapack(rhs.data()), static_cast<lapack_int>(2 * n));
  if (info != 0) throw SolverError("banded triangular solve failed");
  for (std::size_t s = 0; s < n; ++s) psi[s] = {rhs[order_[2 * s]], rhs[order_[2 * s + 1]]};
  if (!psi.is_finite()) throw SolverError("Crank-Nicolson produced non-finite values");
}

SpinorField evolve_crank_nicolson(const LatticeHamiltonian& h, const SpinorField& psi0, double t, std::size_t steps) {
  if (steps == 0) throw DomainError("Crank-Nicolson needs steps >= 1");
  SpinorField psi = psi0;
  if (t == 0.0) return psi;
  const CrankNicolson cn(h, t / static_cast<double>(steps));
  for (std::size_t j = 0; j < steps; ++j) cn.step(psi);
  return psi;
}

std::size_t default_cn_steps(double dx, double t) {
  const double tau = std::min(dx / 4.0, t / 256.0);
  if (!(tau > 0.0)) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / tau - 1e-9)));
}

Mat2 dirac_momentum_block(double c, double m, double k) { return {-m, c * k, c * k, m}; }

DiracPropagator::DiracPropagator(double m, double c, std::size_t sites, double dx, double t)
    : dx_(dx), momenta_(ring_momenta(sites, dx)), blocks_(sites) {
  check_link(c);
  for (std::size_t n = 0; n < sites; ++n) blocks_[n] = expm_hermitian(dirac_momentum_block(c, m, momenta_[n]), t);
}

SpinorField DiracPropagator::apply(const SpinorField& psi) const {
  if (psi.size() != blocks_.size()) throw DomainError("field size does not match propagator");
  FieldSpectrum s = field_spectrum(psi);
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const Spinor2 v = blocks_[n] * Spinor2{s.plus[n], s.minus[n]};
    s.plus[n] = v.plus;
    s.minus[n] = v.minus;
  }
  return field_from_spectrum(s, psi.dx());
}

DiracPropagator dirac_propagator(double m, double c, std::size_t sites, double dx, double t) {
  return DiracPropagator(m, c, sites, dx, t);
}

SpinorField curved_dirac_reference(const SpinorField& psi0, const CProfile& cprofile, double m, double t,
                                   std::size_t refinement, double t0) {
  if (refinement == 0) throw DomainError("refinement must be >= 1");
  SpinorField fine = trig_interpolate(psi0, refinement);
  const double dxf = fine.dx();
  if (t != 0.0) {
    const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / (dxf / 4.0) - 1e-9)));
    const double tau = t / static_cast<double>(steps);
    if (cprofile.stationary()) {
      const CrankNicolson cn(lattice_hamiltonian_curved(fine.size(), dxf, m, cprofile, t0), tau);
      for (std::size_t j = 0; j < steps; ++j) cn.step(fine);
    } else {
      for (std::size_t j = 0; j < steps; ++j) {
        const double mid = t0 + (static_cast<double>(j) + 0.5) * tau;
        CrankNicolson(lattice_hamiltonian_curved(fine.size(), dxf, m, cprofile, mid), tau).step(fine);
      }
    }
  }
  return restrict_to_coarse(fine, refinement);
}

}  // namespace plasticwalk

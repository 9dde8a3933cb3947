#include "plasticwalk/slater.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

SlaterState::SlaterState(Eigen::MatrixXcd orbitals, double dx) : orbitals_(std::move(orbitals)), dx_(dx) {
  if (orbitals_.rows() % 2 != 0 || orbitals_.rows() < 4) throw DomainError("orbitals need 2N >= 4 rows");
  if (orbitals_.cols() > orbitals_.rows()) throw DomainError("more particles than modes");
}

SlaterState SlaterState::from_modes(std::size_t sites, const std::vector<std::size_t>& modes, double dx) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(2 * sites), static_cast<Eigen::Index>(modes.size()));
  for (std::size_t j = 0; j < modes.size(); ++j) {
    if (modes[j] >= 2 * sites) throw DomainError("mode index out of range");
    a(static_cast<Eigen::Index>(modes[j]), static_cast<Eigen::Index>(j)) = 1.0;
  }
  SlaterState s(std::move(a), dx);
  if (s.gram_deviation() > 1e-10) throw OrthogonalityError("repeated mode in determinant");
  return s;
}

SpinorField SlaterState::orbital(std::size_t j) const {
  SpinorField psi(sites(), dx_);
  const auto c = static_cast<Eigen::Index>(j);
  for (std::size_t l = 0; l < sites(); ++l) {
    const auto r = static_cast<Eigen::Index>(2 * l);
    psi[l] = {orbitals_(r, c), orbitals_(r + 1, c)};
  }
  return psi;
}

void SlaterState::set_orbital(std::size_t j, const SpinorField& psi) {
  const auto c = static_cast<Eigen::Index>(j);
  for (std::size_t l = 0; l < sites(); ++l) {
    const auto r = static_cast<Eigen::Index>(2 * l);
    orbitals_(r, c) = psi[l].plus;
    orbitals_(r + 1, c) = psi[l].minus;
  }
}

double SlaterState::gram_deviation() const {
  const Eigen::MatrixXcd g = orbitals_.adjoint() * orbitals_;
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

std::vector<double> SlaterState::occupations() const {
  std::vector<double> n(static_cast<std::size_t>(orbitals_.rows()));
  for (Eigen::Index q = 0; q < orbitals_.rows(); ++q) n[static_cast<std::size_t>(q)] = orbitals_.row(q).squaredNorm();
  return n;
}

cplx slater_overlap(const SlaterState& a, const SlaterState& b) {
  if (a.orbitals().rows() != b.orbitals().rows() || a.particles() != b.particles()) {
    throw DomainError("overlap needs matching shapes");
  }
  return (a.orbitals().adjoint() * b.orbitals()).determinant();
}

void orthonormalize(SlaterState& state) {
  // Modified Gram-Schmidt keeps the span and each orbital's phase.
  auto& a = state.orbitals();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
    const double n = a.col(j).norm();
    if (n < 1e-12) throw OrthogonalityError("orbitals became linearly dependent");
    a.col(j) /= n;
  }
}

SlaterEvolution slater_evolve(const SlaterState& orbitals, const OneParticleStep& step, std::size_t steps) {
  SlaterEvolution out{orbitals, 0};
  if (orbitals.gram_deviation() > 1e-10) throw OrthogonalityError("initial orbitals are not orthonormal");
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < out.state.particles(); ++j) out.state.set_orbital(j, step(out.state.orbital(j)));
    const double dev = out.state.gram_deviation();
    if (dev > 1e-6) {
      std::ostringstream msg;
      msg << "orbital Gram deviation " << dev << " exceeds 1e-6 after step " << s + 1;
      throw OrthogonalityError(msg.str());
    }
    if (dev > 1e-10) {
      orthonormalize(out.state);
      ++out.reorthonormalizations;
    }
  }
  return out;
}

std::vector<std::uint64_t> fock_sector_basis(std::size_t modes, std::size_t particles) {
  if (modes > 63) throw BudgetError("at most 63 modes");
  std::vector<std::uint64_t> basis;
  if (particles > modes) return basis;
  if (particles == 0) return {0};
  // Gosper's hack walks the n-subsets in increasing order.
  std::uint64_t v = (std::uint64_t{1} << particles) - 1;
  const std::uint64_t limit = std::uint64_t{1} << modes;
  while (v < limit) {
    basis.push_back(v);
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return basis;
}

namespace {

Eigen::MatrixXcd occupied_rows(const Eigen::MatrixXcd& a, std::uint64_t mask) {
  Eigen::MatrixXcd sub(a.cols(), a.cols());
  Eigen::Index r = 0;
  for (Eigen::Index q = 0; q < a.rows(); ++q) {
    if ((mask >> q) & 1U) sub.row(r++) = a.row(q);
  }
  return sub;
}

}  // namespace

Eigen::MatrixXcd fock_sector_matrix(const Eigen::MatrixXcd& one_body, std::size_t particles) {
  const auto modes = static_cast<std::size_t>(one_body.rows());
  const auto basis = fock_sector_basis(modes, particles);
  std::vector<std::size_t> position(std::size_t{1} << modes, 0);
  for (std::size_t b = 0; b < basis.size(); ++b) position[basis[b]] = b;
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const std::uint64_t s = basis[b];
    for (std::size_t j = 0; j < modes; ++j) {
      if (!((s >> j) & 1U)) continue;
      for (std::size_t i = 0; i < modes; ++i) {
        const cplx hij = one_body(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (hij == 0.0) continue;
        if (i == j) {
          h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) += hij;
          continue;
        }
        if ((s >> i) & 1U) continue;
        const std::uint64_t t = (s & ~(std::uint64_t{1} << j)) | (std::uint64_t{1} << i);
        // c_i^dagger c_j picks up (-1)^(occupied modes strictly between i and j).
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        const std::uint64_t between = s & (((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1));
        const double sign = (std::popcount(between) % 2 == 0) ? 1.0 : -1.0;
        h(static_cast<Eigen::Index>(position[t]), static_cast<Eigen::Index>(b)) += sign * hij;
      }
    }
  }
  return h;
}

Eigen::VectorXcd slater_sector_amplitudes(const SlaterState& state) {
  const auto basis = fock_sector_basis(2 * state.sites(), state.particles());
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    v(static_cast<Eigen::Index>(b)) = occupied_rows(state.orbitals(), basis[b]).determinant();
  }
  return v;
}

QcaState slater_to_qca_state(const SlaterState& state) {
  QcaState s(state.sites());
  auto& a = s.amplitudes();
  a[0] = 0.0;
  const auto basis = fock_sector_basis(2 * state.sites(), state.particles());
  const Eigen::VectorXcd amps = slater_sector_amplitudes(state);
  for (std::size_t b = 0; b < basis.size(); ++b) a[basis[b]] = amps(static_cast<Eigen::Index>(b));
  return s;
}

}  // namespace plasticwalk

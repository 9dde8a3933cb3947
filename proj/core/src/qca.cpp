#include "plasticwalk/qca.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

bool Gate2Q::is_unitary(double tol) const {
  const Eigen::Matrix4cd d = matrix.adjoint() * matrix - Eigen::Matrix4cd::Identity();
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool Gate2Q::is_number_conserving() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j)) && matrix(i, j) != 0.0) {
        return false;
      }
    }
  }
  return true;
}

Mat2 Gate2Q::one_particle_block() const { return {matrix(2, 2), matrix(2, 1), matrix(1, 2), matrix(1, 1)}; }

Gate2Q Gate2Q::placed(std::size_t first_qubit, std::size_t second_qubit) const {
  Gate2Q g = *this;
  g.first = first_qubit;
  g.second = second_qubit;
  return g;
}

Gate2Q Gate2Q::conj() const {
  Gate2Q g = *this;
  g.matrix = matrix.conjugate();
  return g;
}

Gate2Q gate_V() {
  Gate2Q g;
  g.matrix.setZero();
  g.matrix(0, 0) = 1.0;
  g.matrix(1, 2) = 1.0;
  g.matrix(2, 1) = 1.0;
  g.matrix(3, 3) = -1.0;
  return g;
}

Gate2Q gate_U(double theta, double zeta, const QcaOptions& options) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Gate2Q g;
  g.matrix.setZero();
  g.matrix(0, 0) = 1.0;
  g.matrix(1, 1) = std::polar(s, -zeta);
  g.matrix(1, 2) = -c;
  g.matrix(2, 1) = c;
  g.matrix(2, 2) = std::polar(s, zeta);
  if (options.variant == CoinVariant::kChiralSigmaY) g.matrix(2, 2) = -g.matrix(2, 2);
  if (options.pair_phase == PairPhase::kMinusOne) {
    g.matrix(3, 3) = -1.0;
  } else {
    g.matrix(3, 3) = g.matrix(1, 1) * g.matrix(2, 2) - g.matrix(1, 2) * g.matrix(2, 1);
  }
  return g;
}

QcaState::QcaState(std::size_t cells) : cells_(cells) {
  if (cells < 2) throw DomainError("QCA needs at least 2 cells");
  if (2 * cells > kQubitBudget) {
    std::ostringstream msg;
    msg << "statevector limited to " << kQubitBudget << " qubits, requested " << 2 * cells;
    throw BudgetError(msg.str());
  }
  amps_.assign(std::size_t{1} << (2 * cells), cplx{});
  amps_[0] = 1.0;
}

QcaState QcaState::basis(std::size_t cells, std::size_t index) {
  QcaState s(cells);
  if (index >= s.dimension()) throw DomainError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double QcaState::norm() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

std::vector<double> QcaState::occupations() const {
  std::vector<double> n(qubits(), 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double w = std::norm(amps_[i]);
    if (w == 0.0) continue;
    for (std::size_t q = 0; q < n.size(); ++q) {
      if ((i >> q) & 1U) n[q] += w;
    }
  }
  return n;
}

void QcaState::apply(const Gate2Q& gate) {
  if (gate.first >= qubits() || gate.second >= qubits() || gate.first == gate.second) {
    throw DomainError("gate placement outside the register");
  }
  const std::size_t ba = std::size_t{1} << gate.first;
  const std::size_t bb = std::size_t{1} << gate.second;
  const Eigen::Matrix4cd& m = gate.matrix;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & (ba | bb)) continue;
    const std::size_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
    const cplx v[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amps_[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
    }
  }
}

Gate2Q place_on_p_pair(const Gate2Q& gate, std::size_t crossing, std::size_t cells) {
  return gate.placed(2 * ((crossing + 1) % cells), 2 * crossing + 1);
}

Gate2Q place_on_q_pair(const Gate2Q& gate, std::size_t cell, std::size_t /*cells*/) {
  return gate.placed(2 * cell, 2 * cell + 1);
}

namespace {

void require_unitary(const Gate2Q& g) {
  if (!g.is_unitary(1e-12)) throw DomainError("gate is not unitary for these angles");
}

}  // namespace

QcaState qca_step(const QcaState& state, const std::vector<Angles>& angles, const QcaOptions& options) {
  const std::size_t n = state.cells();
  if (angles.size() != n) throw DomainError("need one (theta, zeta) pair per crossing");
  std::vector<Gate2Q> u(n), u_conj(n);
  for (std::size_t l = 0; l < n; ++l) {
    const Gate2Q g = gate_U(angles[l].theta, angles[l].zeta, options);
    require_unitary(g);
    u[l] = place_on_p_pair(g, l, n);
    u_conj[l] = place_on_p_pair(g.conj(), l, n);
  }
  const Gate2Q v = gate_V();
  QcaState out = state;
  for (const auto& g : u) out.apply(g);
  for (std::size_t l = 0; l < n; ++l) out.apply(place_on_q_pair(v, l, n));
  for (const auto& g : u_conj) out.apply(g);
  for (std::size_t l = 0; l < n; ++l) out.apply(place_on_q_pair(v, l, n));
  return out;
}

QcaState qca_step(const QcaState& state, Angles angles, const QcaOptions& options) {
  return qca_step(state, std::vector<Angles>(state.cells(), angles), options);
}

std::vector<Angles> crossing_angles(const ScalingParams& params, std::size_t cells, double t) {
  std::vector<Angles> a(cells);
  for (std::size_t l = 0; l < cells; ++l) a[l] = derive_angles(params, t, (static_cast<double>(l) + 0.5) * params.dx);
  return a;
}

QcaState embed_one_particle(const SpinorField& psi) {
  QcaState s(psi.size());
  auto& a = s.amplitudes();
  a[0] = 0.0;
  for (std::size_t l = 0; l < psi.size(); ++l) {
    a[std::size_t{1} << (2 * l)] = psi[l].plus;
    a[std::size_t{1} << (2 * l + 1)] = psi[l].minus;
  }
  return s;
}

SpinorField extract_one_particle(const QcaState& state, double dx) {
  const auto& a = state.amplitudes();
  double outside = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::popcount(i) != 1) outside += std::norm(a[i]);
  }
  if (std::sqrt(outside) > 1e-10) {
    std::ostringstream msg;
    msg << "state has weight " << outside << " outside the one-particle sector";
    throw SectorError(msg.str());
  }
  SpinorField psi(state.cells(), dx);
  for (std::size_t l = 0; l < state.cells(); ++l) {
    psi[l] = {a[std::size_t{1} << (2 * l)], a[std::size_t{1} << (2 * l + 1)]};
  }
  return psi;
}

SpinorField qca_one_particle_step(const SpinorField& psi, const std::vector<Angles>& angles, const QcaOptions& options,
                                  double wrap_phase) {
  const std::size_t n = psi.size();
  if (angles.size() != n) throw DomainError("need one (theta, zeta) pair per crossing");
  SpinorField out = psi;
  auto p_layer = [&](bool conjugate) {
    for (std::size_t l = 0; l < n; ++l) {
      Gate2Q g = gate_U(angles[l].theta, angles[l].zeta, options);
      if (conjugate) g = g.conj();
      Mat2 b = g.one_particle_block();
      if (l + 1 == n) {
        b.a12 *= wrap_phase;
        b.a21 *= wrap_phase;
      }
      const std::size_t right = (l + 1) % n;
      const Spinor2 v = b * Spinor2{out[right].plus, out[l].minus};
      out[right].plus = v.plus;
      out[l].minus = v.minus;
    }
  };
  const Mat2 vb = gate_V().one_particle_block();
  auto q_layer = [&] {
    for (std::size_t l = 0; l < n; ++l) out[l] = vb * out[l];
  };
  p_layer(false);
  q_layer();
  p_layer(true);
  q_layer();
  return out;
}

SpinorField encoded_walk_step(const SpinorField& psi, double theta, double zeta) {
  SpinorField f = encode_lattice_frame(psi);
  const Mat2 c_plus = coin_matrix(theta, zeta);
  const Mat2 c_minus = coin_matrix(theta, -zeta);
  for (auto& s : f.sites()) s = c_plus * s;
  f = shift_full(f);
  for (auto& s : f.sites()) s = c_minus * s;
  f = shift_full(f);
  return decode_lattice_frame(f);
}

double verify_encoding(double theta, double zeta, std::size_t cells, const QcaOptions& options) {
  if (cells > 12) throw BudgetError("verify_encoding is limited to 12 cells");
  double worst = 0.0;
  for (std::size_t j = 0; j < 2 * cells; ++j) {
    SpinorField e(cells, 1.0);
    if (j % 2 == 0) {
      e[j / 2].plus = 1.0;
    } else {
      e[j / 2].minus = 1.0;
    }
    const SpinorField lhs = extract_one_particle(qca_step(embed_one_particle(e), Angles{theta, zeta}, options));
    const SpinorField rhs = encoded_walk_step(e, theta, zeta);
    worst = std::max(worst, l2_distance(lhs, rhs));
  }
  return worst;
}

double number_conservation_residual(double theta, double zeta, std::size_t cells, const QcaOptions& options) {
  QcaState probe(cells);
  const std::size_t dim = probe.dimension();
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const QcaState col = qca_step(QcaState::basis(cells, j), Angles{theta, zeta}, options);
    const int nj = std::popcount(j);
    const auto& a = col.amplitudes();
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::popcount(i) != nj) worst = std::max(worst, std::abs(a[i]));
    }
  }
  return worst;
}

LatticeHamiltonian kogut_susskind_matrix(std::size_t sites, double dx, double m, const CProfile& cprofile, double t0) {
  return lattice_hamiltonian_curved(sites, dx, m, cprofile, t0);
}

}  // namespace plasticwalk

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Tolerances are fixed here and are not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/hamiltonians.hpp"
#include "plasticwalk/harness.hpp"
#include "plasticwalk/qca.hpp"
#include "plasticwalk/slater.hpp"
#include "plasticwalk/walk.hpp"

using namespace plasticwalk;

namespace {

constexpr double kUnitarityTol = 1e-12;
constexpr int kUnitarityDraws = 200;
constexpr double kMinOrder = 0.9;
constexpr double kFlatSmallestError = 1e-2;
constexpr double kMinDispersionOrder = 1.8;
constexpr double kDoublerTol = 1e-12;
constexpr double kHermiticityTol = 1e-13;
constexpr double kEncodingTol = 1e-12;
constexpr double kSlaterTol = 1e-10;
constexpr double kIdentityTol = 1e-12;
constexpr double kHadamardTol = 1e-15;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::size_t worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

SpinorField random_field(std::size_t n, double dx, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  SpinorField f(n, dx);
  for (auto& s : f.sites()) s = {{g(rng), g(rng)}, {g(rng), g(rng)}};
  f *= 1.0 / f.norm();
  return f;
}

std::string describe(const SweepReport& r) {
  std::string s;
  if (r.fit) {
    s = "p=" + fmt("%.3f", r.fit->p);
  } else {
    s = "no fit (" + r.fit_note + ")";
  }
  s += r.monotone ? ", monotone" : ", NOT monotone";
  for (const auto& row : r.rows) {
    if (!row.ok) s += ", row eps=" + fmt("%g", row.epsilon_requested) + " failed: " + row.message;
  }
  if (!r.rows.empty() && r.rows.back().ok) s += ", smallest-eps error " + fmt("%.3e", r.rows.back().error_l2);
  return s;
}

bool rows_ok(const SweepReport& r) {
  return std::all_of(r.rows.begin(), r.rows.end(), [](const SweepRow& row) { return row.ok; });
}

bool order_ok(const SweepReport& r) { return rows_ok(r) && r.fit && r.fit->p >= kMinOrder; }

ExperimentSpec flat_spec(double alpha, std::vector<double> epsilons) {
  ExperimentSpec s;
  s.alpha = alpha;
  s.m = 0.2;
  s.profile = {"flat", 0.5};
  s.profile.length = 64.0;
  s.length = 64.0;
  s.time = 4.0;
  s.epsilons = std::move(epsilons);
  s.packet = {32.0, 8.0, kPi / 8, 1.0};
  s.threads = worker_threads();
  return s;
}

ExperimentSpec curved_spec(double alpha, std::vector<double> epsilons) {
  ExperimentSpec s = flat_spec(alpha, std::move(epsilons));
  s.m = 0.1;
  s.profile = {"sine-bump", 0.5, 0.3};
  s.profile.length = 64.0;
  return s;
}

// 1. One step of the walk preserves the L2 norm.
Outcome unitarity() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double epsilons[] = {1.0, 0.1, 0.01};
  double worst = 0.0;
  for (int i = 0; i < kUnitarityDraws; ++i) {
    const double alpha = u(rng);
    const double m = u(rng);
    const double eps = epsilons[i % 3];
    const double dx = std::pow(eps, 1.0 - alpha);
    const std::size_t sites = 24;
    const double length = dx * static_cast<double>(sites);
    CProfile prof = CProfile::constant(0.0);
    if (i % 2 == 0) {
      prof = CProfile::constant(u(rng));
    } else {
      // c0 + a sin stays inside [0, 1]
      const double c0 = 0.05 + 0.9 * u(rng);
      const double a = std::min(c0, 1.0 - c0) * u(rng);
      prof = CProfile::sine_bump(c0, a, length);
    }
    const auto frame = i % 5 == 0 ? FrameConvention::kSpectralLambda : FrameConvention::kRotation;
    const ScalingParams p = ScalingParams::make(m, prof, eps, alpha, frame);
    const SpinorField f = random_field(sites, dx, rng);
    const double t = 10.0 * u(rng);
    worst = std::max(worst, std::abs(qw_step(f, p, t).norm() / f.norm() - 1.0));
  }
  return {worst <= kUnitarityTol,
          std::to_string(kUnitarityDraws) + " draws, worst relative norm change " + fmt("%.2e", worst)};
}

// 2. Flat alpha = 1 limit against the exact lattice evolution.
Outcome flat_alpha_one() {
  ExperimentSpec s = flat_spec(1.0, {0.2, 0.1, 0.05, 0.025, 0.0125});
  s.reference = Reference::kLatticeExact;
  const SweepReport r = run_convergence_sweep(s);
  const bool small = rows_ok(r) && r.rows.back().error_l2 <= kFlatSmallestError;
  return {order_ok(r) && small, describe(r)};
}

// 3. Flat 0 <= alpha < 1 limit against the Dirac propagator.
Outcome flat_alpha_below_one() {
  ExperimentSpec a0 = flat_spec(0.0, {0.2, 0.1, 0.05, 0.025});
  a0.reference = Reference::kDiracMomentum;
  a0.cross_validate = true;
  ExperimentSpec a5 = flat_spec(0.5, {1.0 / 16, 1.0 / 64, 1.0 / 256});
  a5.reference = Reference::kDiracMomentum;
  const SweepReport r0 = run_convergence_sweep(a0);
  const SweepReport r5 = run_convergence_sweep(a5);
  std::string detail = "alpha=0: " + describe(r0);
  if (r0.cross_validation.performed) {
    detail += " [reference cross-check " + fmt("%.2e", r0.cross_validation.discrepancy) +
              (r0.cross_validation.valid ? " ok]" : " NOT ok]");
  }
  detail += "; alpha=0.5: " + describe(r5);
  return {order_ok(r0) && r0.monotone && order_ok(r5) && r5.monotone, detail};
}

// 4. Quasi-energies against the lattice dispersion, plus the doubler.
Outcome dispersion() {
  bool pass = true;
  std::string detail;
  const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125};
  for (const auto& [c, m] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.5, 0.2}, {0.8, 1.0}}) {
    std::vector<double> dev;
    for (double e : eps) {
      const auto p = ScalingParams::make(m, CProfile::constant(c), e, 1.0);
      dev.push_back(dispersion_deviation(dispersion_scan(p, 64), e));
    }
    double order = 0.0;
    try {
      order = estimate_order(eps, dev).p;
    } catch (const DegenerateError&) {
      order = std::numeric_limits<double>::infinity();  // deviation at round-off for every eps
    }
    pass = pass && order >= kMinDispersionOrder;
    detail += "(c=" + fmt("%g", c) + ",m=" + fmt("%g", m) + ") exponent " + fmt("%.3f", order) + "; ";
  }
  const double doubler = lattice_energy(1.0, 0.0, 1.0, kPi);
  pass = pass && doubler <= kDoublerTol;
  detail += "m=0 energy at k=pi/dx " + fmt("%.2e", doubler);
  return {pass, detail};
}

// 5. Curved profile: Hermiticity, alpha = 1 and alpha = 0 sweeps.
Outcome curved() {
  const CProfile prof = CProfile::sine_bump(0.5, 0.3, 64.0);
  double herm = 0.0;
  for (double dx : {1.0, 0.25, 0.05}) {
    const auto sites = static_cast<std::size_t>(std::llround(64.0 / dx));
    herm = std::max(herm, hermiticity_residual(lattice_hamiltonian_curved(sites, dx, 0.1, prof)));
  }
  ExperimentSpec b = curved_spec(1.0, {0.2, 0.1, 0.05, 0.025, 0.0125});
  b.reference = Reference::kLatticeExact;
  ExperimentSpec c = curved_spec(0.0, {0.2, 0.1, 0.05, 0.025});
  c.reference = Reference::kCurvedFineGrid;
  c.refinement = 8;
  const SweepReport rb = run_convergence_sweep(b);
  const SweepReport rc = run_convergence_sweep(c);
  const bool pass = herm <= kHermiticityTol && order_ok(rb) && order_ok(rc);
  return {pass, "(a) hermiticity " + fmt("%.2e", herm) + "; (b) alpha=1: " + describe(rb) +
                    "; (c) alpha=0: " + describe(rc)};
}

// 6. One-particle sector of the automaton and number conservation.
Outcome qca_equivalence() {
  double worst = 0.0;
  for (double theta : {0.2, 0.7, 1.0, 1.4, 2.5}) {
    for (double zeta : {0.3, 1.1}) {
      for (auto phase : {PairPhase::kMinusOne, PairPhase::kFreeFermion}) {
        worst = std::max(worst, verify_encoding(theta, zeta, 8, {CoinVariant::kStandard, phase}));
      }
    }
  }
  double leak = 0.0;
  for (auto [theta, zeta] : std::vector<std::pair<double, double>>{{1.0, 0.3}, {0.4, 2.0}, {2.2, 0.9}}) {
    for (auto phase : {PairPhase::kMinusOne, PairPhase::kFreeFermion}) {
      leak = std::max(leak, number_conservation_residual(theta, zeta, 5, {CoinVariant::kStandard, phase}));
    }
  }
  return {worst <= kEncodingTol && leak == 0.0,
          "encoding residual " + fmt("%.2e", worst) + " over 10 (theta, zeta) points at N=8; inter-sector amplitude " +
              fmt("%.1e", leak) + " at N=5"};
}

// 7. Two-particle determinant evolved by orbitals and by the statevector.
double slater_vs_statevector(const QcaOptions& options, double wrap_phase) {
  const std::size_t cells = 6;
  std::mt19937_64 rng(77);
  SlaterState s0(Eigen::MatrixXcd::Zero(2 * cells, 2), 1.0);
  s0.set_orbital(0, random_field(cells, 1.0, rng));
  s0.set_orbital(1, random_field(cells, 1.0, rng));
  orthonormalize(s0);

  // stationary, inhomogeneous profile: different angles on every crossing
  const ScalingParams p = ScalingParams::make(0.4, CProfile::sine_bump(0.5, 0.3, 6.0), 0.3, 1.0);
  const std::vector<Angles> angles = crossing_angles(p, cells, 0.0);
  QcaState full = slater_to_qca_state(s0);
  for (int j = 0; j < 4; ++j) full = qca_step(full, angles, options);
  const OneParticleStep step = [&](const SpinorField& f) {
    return qca_one_particle_step(f, angles, options, wrap_phase);
  };
  const SlaterEvolution ev = slater_evolve(s0, step, 4);
  const auto a = ev.state.occupations();
  const auto b = full.occupations();
  double worst = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, std::abs(a[q] - b[q]));
  return worst;
}

Outcome free_fermion() {
  const double wrap = -1.0;  // (-1)^(n-1), n = 2
  const double free = slater_vs_statevector({CoinVariant::kStandard, PairPhase::kFreeFermion}, wrap);
  const double minus_one = slater_vs_statevector({CoinVariant::kStandard, PairPhase::kMinusOne}, wrap);
  return {free <= kSlaterTol, "free-fermion pair phase: max occupation difference " + fmt("%.2e", free) +
                                  " after 4 steps on N=6; |11> -> -|11> gate: " + fmt("%.2e", minus_one) +
                                  " (informational, that gate is interacting)"};
}

// 8. Identity and reduction fixtures.
Outcome fixtures() {
  std::mt19937_64 rng(8);
  double identity = 0.0;
  for (auto frame : {FrameConvention::kRotation, FrameConvention::kSpectralLambda}) {
    for (double eps : {1.0, 0.1, 0.01}) {
      const auto p = ScalingParams::make(0.0, CProfile::constant(0.0), eps, 0.0, frame);
      const SpinorField f = random_field(17, p.dx, rng);
      identity = std::max(identity, max_distance(qw_step(f, p, 0.0), f));
    }
  }
  bool same = true;
  for (double dx : {1.0, 0.3}) {
    same = same && lattice_hamiltonian_curved(32, dx, 0.2, CProfile::constant(0.7)) ==
                       lattice_hamiltonian_flat(32, dx, 0.2, 0.7);
  }
  const double h = 1.0 / std::sqrt(2.0);
  const double hadamard = max_abs_diff(lambda_matrix(1.0), Mat2{h, h, h, -h});
  return {identity <= kIdentityTol && same && hadamard <= kHadamardTol,
          "identity step " + fmt("%.2e", identity) + ", homogeneous curved == flat: " + (same ? "yes" : "no") +
              ", Hadamard " + fmt("%.2e", hadamard)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 unitarity", unitarity},
      {"2 flat alpha=1 limit", flat_alpha_one},
      {"3 flat alpha<1 limit", flat_alpha_below_one},
      {"4 dispersion", dispersion},
      {"5 curved profile", curved},
      {"6 qca equivalence", qca_equivalence},
      {"7 free fermions", free_fermion},
      {"8 identity fixtures", fixtures},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

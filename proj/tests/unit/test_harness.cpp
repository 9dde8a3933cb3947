#include <doctest.h>

#include <cmath>
#include <random>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/fourier.hpp"
#include "plasticwalk/harness.hpp"

using namespace plasticwalk;

TEST_CASE("make_wavepacket") {
  const SpinorField a = make_wavepacket(64, 1.0, 10.0, 4.0, 0.3, 1.0);
  for (const auto& s : a.sites()) CHECK(s.minus == cplx(0.0));
  CHECK(std::abs(a.norm() - 1.0) < 1e-13);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const SpinorField f = make_wavepacket(128, 0.5, 64 * u(rng), 2.0 + 6 * u(rng), 3 * u(rng) - 1.5, u(rng));
    CHECK(std::abs(f.norm() - 1.0) < 1e-13);
  }
  // periodic wrap: a packet centred at the seam is symmetric around site 0
  const SpinorField w = make_wavepacket(32, 1.0, 0.0, 4.0, 0.0);
  CHECK(std::abs(w[1].plus - w[31].plus) < 1e-15);
  CHECK_THROWS_AS(make_wavepacket(64, 1.0, 0.0, 3.9, 0.0), ResolutionError);
  CHECK_THROWS_AS(make_wavepacket(64, 1.0, 0.0, 8.0, 0.0, 1.2), DomainError);
}

TEST_CASE("wavepacket mean momentum") {
  const std::size_t n = 128;
  const double dx = 0.5, length = n * dx;
  const double k0 = 2 * kPi * 9 / length + 0.01;
  const SpinorField f = make_wavepacket(n, dx, 20.0, length / 16, k0);
  const FieldSpectrum s = field_spectrum(f);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::norm(s.plus[j]) + std::norm(s.minus[j]);
    num += ring_momentum(j, n, dx) * w;
    den += w;
  }
  CHECK(std::abs(num / den - k0) <= 2 * kPi / length);
}

TEST_CASE("estimate_order") {
  const OrderFit one = estimate_order({0.02, 0.01, 0.005}, {2e-3, 1e-3, 5e-4});
  CHECK(one.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.ci < 1e-10);
  const OrderFit two = estimate_order({0.4, 0.2, 0.1}, {4e-4, 1e-4, 2.5e-5});
  CHECK(two.p == doctest::Approx(2.0).epsilon(1e-12));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  std::vector<double> eps, err;
  for (double e = 0.2; e > 0.002; e /= 2) {
    eps.push_back(e);
    err.push_back(0.3 * e * (1.0 + noise(rng)));
  }
  const OrderFit noisy = estimate_order(eps, err);
  CHECK(noisy.p >= 0.9);
  CHECK(noisy.p <= 1.1);
  CHECK(noisy.ci > 0.0);

  CHECK_THROWS_AS(estimate_order({0.1, 0.05}, {1e-2, 5e-3}), DomainError);
  CHECK_THROWS_AS(estimate_order({0.1, 0.2, 0.05}, {1e-2, 2e-2, 5e-3}), DomainError);
  CHECK_THROWS_AS(estimate_order({0.1, 0.05, 0.025}, {1e-2, 0.0, 5e-3}), DegenerateError);
}

namespace {

ExperimentSpec alpha_one_spec() {
  ExperimentSpec s;
  s.alpha = 1.0;
  s.m = 0.2;
  s.profile = {"flat", 0.5};
  s.length = 64;
  s.time = 2.0;
  s.epsilons = {0.2, 0.1, 0.05};
  s.packet = {32.0, 8.0, kPi / 8, 1.0};
  return s;
}

}  // namespace

TEST_CASE("identity sweep is exact") {
  ExperimentSpec s;
  s.alpha = 0.0;
  s.m = 0.0;
  s.profile = {"flat", 0.0};
  s.length = 16;
  s.time = 2.0;
  s.epsilons = {0.5, 0.25, 0.125};
  s.packet = {8.0, 2.0, 0.5, 0.7};
  const SweepReport r = run_convergence_sweep(s);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    CHECK(row.ok);
    CHECK(row.error_l2 <= 1e-12);
  }
  CHECK_FALSE(r.fit.has_value());
  CHECK(r.fit_note == "exact");
  CHECK(r.reference == Reference::kDiracMomentum);
}

TEST_CASE("alpha = 1 sweep converges at first order") {
  const SweepReport r = run_convergence_sweep(alpha_one_spec());
  REQUIRE(r.fit.has_value());
  CHECK(r.fit->p >= 0.9);
  CHECK(r.monotone);
  CHECK(r.reference == Reference::kLatticeExact);
  for (const auto& row : r.rows) {
    CHECK(row.sites == 64);
    CHECK(row.time_mismatch <= row.epsilon);
  }
}

TEST_CASE("grid snapping") {
  ExperimentSpec s = alpha_one_spec();
  s.alpha = 0.5;
  s.length = 10.0;
  s.time = 1.0;
  s.packet = {5.0, 3.0, 0.0, 1.0};
  const SweepRow row = run_sweep_row(s, 0.3);
  REQUIRE(row.ok);
  CHECK(std::abs(row.dx * static_cast<double>(row.sites) - 10.0) < 1e-12);
  CHECK(std::abs(std::pow(row.epsilon, 0.5) - row.dx) < 1e-14);
  CHECK(row.epsilon_requested == 0.3);
  CHECK(row.time_mismatch <= row.epsilon);
}

TEST_CASE("row failures are reported without aborting") {
  ExperimentSpec s = alpha_one_spec();
  s.packet.width = 3.0;  // below 4 dx = 4
  const SweepReport r = run_convergence_sweep(s);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.ok);
    CHECK(row.message.find("width") != std::string::npos);
  }
  CHECK_FALSE(r.fit.has_value());
}

TEST_CASE("determinism and metadata") {
  ExperimentSpec s = alpha_one_spec();
  s.threads = 3;
  const SweepReport a = run_convergence_sweep(s);
  s.threads = 1;
  const SweepReport b = run_convergence_sweep(s);
  CHECK(a.spec_hash == b.spec_hash);
  CHECK(a.spec_hash.size() == 16);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].error_l2 == b.rows[i].error_l2);
    CHECK(a.rows[i].error_max == b.rows[i].error_max);
  }
  CHECK(a.code_version == code_version());
  ExperimentSpec other = s;
  other.m = 0.21;
  CHECK(spec_hash(other) != a.spec_hash);

  const std::string csv = a.to_csv();
  CHECK(csv.rfind("epsilon,dt,dx,N,steps,error_l2,error_max,walltime_s\n", 0) == 0);
  const auto j = a.to_json();
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("fitted_order").at("p").get<double>() == a.fit->p);
}

TEST_CASE("spec JSON round trip") {
  ExperimentSpec s = alpha_one_spec();
  s.profile = {"gaussian-well", 0.9, 0.0, 0.4, 12.0, 3.0, 64.0};
  s.reference = Reference::kCurvedFineGrid;
  s.frame = FrameConvention::kSpectralLambda;
  s.refinement = 4;
  const ExperimentSpec t = ExperimentSpec::from_json(s.to_json());
  CHECK(t.to_json() == s.to_json());
  CHECK(t.profile == s.profile);
}

TEST_CASE("cross-validation of the alpha = 0 references") {
  ExperimentSpec s;
  s.alpha = 0.0;
  s.m = 0.2;
  s.profile = {"flat", 0.5};
  s.length = 16;
  s.time = 1.0;
  s.epsilons = {0.25, 0.125, 0.0625};
  s.packet = {8.0, 2.0, kPi / 8, 1.0};
  s.cross_validate = true;
  const SweepReport r = run_convergence_sweep(s);
  CHECK(r.cross_validation.performed);
  CHECK(r.cross_validation.valid);
  REQUIRE(r.fit.has_value());
  CHECK(r.fit->p >= 0.9);
}

TEST_CASE("dispersion scan") {
  const auto p = ScalingParams::make(0.0, CProfile::constant(0.8), 0.01, 1.0);
  const auto rows = dispersion_scan(p, 64);
  REQUIRE(rows.size() == 64);
  CHECK(rows.front().k == doctest::Approx(-kPi));
  const DispersionRow& zero = rows[32];
  CHECK(std::abs(zero.k) < 1e-15);
  CHECK(std::abs(zero.walk_phase_low) < 1e-12);
  CHECK(std::abs(zero.walk_phase_high) < 1e-12);
  CHECK(zero.lattice_energy == 0.0);
  CHECK(zero.continuum_energy == 0.0);
  // zone edge: doubler
  CHECK(rows.front().lattice_energy <= 1e-12);
  CHECK(rows.front().continuum_energy == doctest::Approx(0.8 * kPi));

  // phase error shrinks like eps^2 or faster
  std::vector<double> eps, dev;
  for (double e = 0.004; e > 0.0004; e /= 2) {
    const auto q = ScalingParams::make(0.2, CProfile::constant(0.5), e, 1.0);
    eps.push_back(e);
    dev.push_back(dispersion_deviation(dispersion_scan(q, 64), e));
  }
  CHECK(estimate_order(eps, dev).p >= 1.8);
  CHECK(dev.front() <= 10 * (0.25 + 0.04) * eps.front() * eps.front());
  CHECK_THROWS_AS(dispersion_scan(ScalingParams::make(0.0, CProfile::sine_bump(0.5, 0.1, 8), 0.1, 1.0), 8),
                  InhomogeneousError);
  CHECK(dispersion_to_csv(rows).rfind("k,walk_phase_low,walk_phase_high,lattice_energy,continuum_energy\n", 0) == 0);
}

TEST_CASE("profile presets") {
  CHECK(ProfileSpec{"flat", 0.3}.build().homogeneous());
  CHECK(ProfileSpec{"sine-bump", 0.5, 0.3, 0, 0, 1, 64}.build()(0.0, 16.0) == doctest::Approx(0.8));
  CHECK_THROWS_AS((ProfileSpec{"ramp", 0.3}.build()), DomainError);
}

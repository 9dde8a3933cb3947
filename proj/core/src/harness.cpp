#include "plasticwalk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/fourier.hpp"
#include "plasticwalk/hamiltonians.hpp"
#include "plasticwalk/walk.hpp"

namespace plasticwalk {

CProfile ProfileSpec::build() const {
  if (kind == "flat") return CProfile::constant(c0);
  if (kind == "sine-bump") return CProfile::sine_bump(c0, amplitude, length);
  if (kind == "gaussian-well") return CProfile::gaussian_well(c0, depth, center, width, length);
  throw DomainError("unknown profile kind '" + kind + "' (expected flat, sine-bump or gaussian-well)");
}

SpinorField make_wavepacket(std::size_t sites, double dx, double x0, double width, double k0, double chirality_mix) {
  if (!(width >= 4.0 * dx)) {
    std::ostringstream msg;
    msg << "packet width " << width << " is below 4 dx = " << 4.0 * dx;
    throw ResolutionError(msg.str());
  }
  if (!(chirality_mix >= 0.0 && chirality_mix <= 1.0)) throw DomainError("chirality_mix must lie in [0, 1]");
  SpinorField psi(sites, dx);
  const double length = psi.length();
  const double a = std::sqrt(chirality_mix);
  const double b = std::sqrt(1.0 - chirality_mix);
  for (std::size_t l = 0; l < sites; ++l) {
    const double x = psi.position(l);
    const double d = std::remainder(x - x0, length);
    const cplx g = std::exp(-d * d / (2.0 * width * width)) * std::polar(1.0, k0 * x);
    psi[l] = {a * g, b * g};
  }
  psi *= 1.0 / psi.norm();
  return psi;
}

OrderFit estimate_order(const std::vector<double>& epsilons, const std::vector<double>& errors) {
  if (epsilons.size() != errors.size()) throw DomainError("epsilon and error lists differ in length");
  const std::size_t n = epsilons.size();
  if (n < 3) throw DomainError("order estimate needs at least 3 rows");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(epsilons[i] < epsilons[i - 1])) throw DomainError("epsilons must be strictly decreasing");
  }
  for (double e : errors) {
    if (!(e > 1e-14)) throw DegenerateError("error at or below 1e-14; the scheme is exact here");
  }
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log(epsilons[i]);
    y[i] = std::log(errors[i]);
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  OrderFit fit;
  fit.p = sxy / sxx;
  const double intercept = my - fit.p * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + fit.p * x[i]);
    ssr += r * r;
  }
  fit.ci = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

Reference ExperimentSpec::resolved_reference() const {
  if (reference != Reference::kAuto) return reference;
  if (alpha == 1.0) return Reference::kLatticeExact;
  return profile.build().homogeneous() ? Reference::kDiracMomentum : Reference::kCurvedFineGrid;
}

namespace {

SpinorField reference_field(const ExperimentSpec& spec, Reference ref, const CProfile& profile,
                            const SpinorField& psi0, double time) {
  switch (ref) {
    case Reference::kLatticeExact: {
      if (!profile.stationary()) throw DomainError("lattice_exact needs a time-independent profile");
      return evolve_exact(lattice_hamiltonian_curved(psi0.size(), psi0.dx(), spec.m, profile, 0.0), psi0, time);
    }
    case Reference::kDiracMomentum: {
      if (!profile.homogeneous()) throw InhomogeneousError("dirac_momentum needs a homogeneous profile");
      return dirac_propagator(spec.m, profile(0.0, 0.0), psi0.size(), psi0.dx(), time).apply(psi0);
    }
    case Reference::kCurvedFineGrid:
      return curved_dirac_reference(psi0, profile, spec.m, time, spec.refinement);
    case Reference::kAuto:
      break;
  }
  throw DomainError("unresolved reference");
}

}  // namespace

GridChoice snap_grid(double alpha, double length, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  GridChoice g;
  if (alpha < 1.0) {
    const double dx0 = std::pow(epsilon, 1.0 - alpha);
    g.sites = static_cast<std::size_t>(std::llround(length / dx0));
    if (g.sites < 2) throw DomainError("grid has fewer than 2 sites");
    g.epsilon = std::min(1.0, std::pow(length / static_cast<double>(g.sites), 1.0 / (1.0 - alpha)));
  } else {
    g.sites = static_cast<std::size_t>(std::llround(length));
    if (g.sites < 2) throw DomainError("grid has fewer than 2 sites");
    g.epsilon = epsilon;
  }
  return g;
}

SweepRow run_sweep_row(const ExperimentSpec& spec, double epsilon) {
  SweepRow row;
  row.epsilon_requested = epsilon;
  const auto start = std::chrono::steady_clock::now();
  try {
    const CProfile profile = spec.profile.build();
    const GridChoice grid = snap_grid(spec.alpha, spec.length, epsilon);
    const double eps = grid.epsilon;
    const std::size_t sites = grid.sites;
    const ScalingParams params = ScalingParams::make(spec.m, profile, eps, spec.alpha, spec.frame);
    row.epsilon = eps;
    row.dt = params.dt;
    row.dx = params.dx;
    row.sites = sites;
    row.steps = static_cast<std::size_t>(std::llround(spec.time / (2.0 * eps)));
    row.time_reached = 2.0 * eps * static_cast<double>(row.steps);
    row.time_mismatch = std::abs(spec.time - row.time_reached);

    const SpinorField psi0 =
        make_wavepacket(sites, params.dx, spec.packet.x0, spec.packet.width, spec.packet.k0, spec.packet.chirality_mix);
    const SpinorField walked = qw_evolve(psi0, params, 0.0, row.steps);
    const Reference ref = spec.resolved_reference();
    SpinorField expected = spec.encode_reference
                               ? encode_lattice_frame(reference_field(spec, ref, profile, decode_lattice_frame(psi0),
                                                                      row.time_reached))
                               : reference_field(spec, ref, profile, psi0, row.time_reached);
    row.error_l2 = l2_distance(walked, expected);
    row.error_max = max_distance(walked, expected);
    if (!std::isfinite(row.error_l2)) throw SolverError("non-finite error");
  } catch (const Error& e) {
    row.ok = false;
    row.message = e.what();
  }
  row.walltime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

namespace {

CrossValidation cross_validate(const ExperimentSpec& spec, const SweepReport& report) {
  CrossValidation cv;
  const CProfile profile = spec.profile.build();
  if (!spec.cross_validate || spec.alpha != 0.0 || !profile.homogeneous()) return cv;
  const SweepRow* coarse = nullptr;
  double smallest = 0.0;
  for (const auto& r : report.rows) {
    if (!r.ok) continue;
    if (coarse == nullptr) coarse = &r;
    smallest = r.error_l2;
  }
  if (coarse == nullptr) return cv;
  constexpr std::size_t kFactor = 8;
  const SpinorField psi0 =
      make_wavepacket(coarse->sites, coarse->dx, spec.packet.x0, spec.packet.width, spec.packet.k0,
                      spec.packet.chirality_mix);
  const SpinorField fine0 = trig_interpolate(psi0, kFactor);
  const LatticeHamiltonian h = lattice_hamiltonian_flat(fine0.size(), fine0.dx(), spec.m, profile(0.0, 0.0));
  const SpinorField fine = h.dimension() <= kDenseDimensionBudget
                               ? evolve_exact(h, fine0, coarse->time_reached)
                               : evolve_crank_nicolson(h, fine0, coarse->time_reached,
                                                       default_cn_steps(fine0.dx(), coarse->time_reached));
  const SpinorField lattice = restrict_to_coarse(fine, kFactor);
  const SpinorField dirac = dirac_propagator(spec.m, profile(0.0, 0.0), psi0.size(), psi0.dx(), coarse->time_reached)
                                .apply(psi0);
  cv.performed = true;
  cv.discrepancy = l2_distance(lattice, dirac);
  cv.threshold = smallest / 10.0;
  cv.valid = cv.discrepancy <= cv.threshold;
  return cv;
}

}  // namespace

SweepReport run_convergence_sweep(const ExperimentSpec& spec) {
  SweepReport report;
  report.reference = spec.resolved_reference();
  report.spec = spec.to_json();
  report.spec_hash = spec_hash(spec);
  report.code_version = code_version();

  std::vector<double> eps = spec.epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  report.rows.resize(eps.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(spec.threads, eps.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < eps.size(); ++i) report.rows[i] = run_sweep_row(spec, eps[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < eps.size(); i = next++) report.rows[i] = run_sweep_row(spec, eps[i]);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> fe, ferr;
  for (const auto& r : report.rows) {
    if (!r.ok) continue;
    if (!fe.empty() && r.epsilon >= fe.back()) continue;  // snapping merged two rows
    fe.push_back(r.epsilon);
    ferr.push_back(r.error_l2);
  }
  for (std::size_t i = 1; i < ferr.size(); ++i) {
    if (ferr[i] > ferr[i - 1]) report.monotone = false;
  }
  if (fe.size() < 3) {
    report.fit_note = "fewer than 3 usable rows";
  } else {
    try {
      report.fit = estimate_order(fe, ferr);
    } catch (const DegenerateError&) {
      const bool all_exact = std::all_of(ferr.begin(), ferr.end(), [](double e) { return e <= 1e-14; });
      report.fit_note = all_exact ? "exact" : "degenerate";
    }
  }
  report.cross_validation = cross_validate(spec, report);
  return report;
}

std::vector<DispersionRow> dispersion_scan(const ScalingParams& params, std::size_t k_count) {
  if (!params.cprofile.homogeneous()) throw InhomogeneousError("dispersion_scan needs a homogeneous profile");
  if (k_count == 0) throw DomainError("k_count must be positive");
  const double c = params.cprofile(0.0, 0.0);
  std::vector<DispersionRow> rows(k_count);
  for (std::size_t j = 0; j < k_count; ++j) {
    DispersionRow& r = rows[j];
    r.k = -kPi / params.dx + 2.0 * kPi * static_cast<double>(j) / (static_cast<double>(k_count) * params.dx);
    const auto phases = eigenphases(momentum_block(params, r.k));
    r.walk_phase_low = phases[0];
    r.walk_phase_high = phases[1];
    r.lattice_energy = lattice_energy(c, params.m, params.dx, r.k);
    r.continuum_energy = continuum_energy(c, params.m, r.k);
  }
  return rows;
}

double dispersion_deviation(const std::vector<DispersionRow>& rows, double epsilon) {
  double worst = 0.0;
  for (const auto& r : rows) {
    const double target = 2.0 * epsilon * r.lattice_energy;
    worst = std::max({worst, std::abs(r.walk_phase_low + target), std::abs(r.walk_phase_high - target)});
  }
  return worst;
}

}  // namespace plasticwalk

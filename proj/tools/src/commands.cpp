#include "plasticwalk_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/harness.hpp"
#include "plasticwalk/qca.hpp"
#include "plasticwalk/walk.hpp"

namespace plasticwalk::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CheckList {
  json items = json::array();
  bool passed = true;

  void add(const std::string& name, double value, double threshold, bool ok) {
    items.push_back({{"name", name}, {"value", value}, {"threshold", threshold}, {"passed", ok}});
    passed = passed && ok;
  }
  void add_flag(const std::string& name, bool ok) {
    items.push_back({{"name", name}, {"passed", ok}});
    passed = passed && ok;
  }
};

std::string path_in(const RunConfig& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

int finish(const RunConfig& c, json summary, const CheckList& checks, std::ostream& log) {
  summary["command"] = c.command;
  summary["checks"] = checks.items;
  summary["passed"] = checks.passed;
  summary["config"] = c.to_json();
  write_file_atomic(path_in(c, "summary.json"), summary.dump(2) + "\n");
  for (const auto& item : checks.items) {
    log << (item.at("passed").get<bool>() ? "PASS " : "FAIL ") << item.at("name").get<std::string>();
    if (item.contains("value")) {
      log << "  value=" << format_double(item.at("value").get<double>())
          << " threshold=" << format_double(item.at("threshold").get<double>());
    }
    log << '\n';
  }
  return checks.passed ? kExitOk : kExitFailure;
}

std::string snapshot_csv(const SpinorField& f) {
  std::ostringstream os;
  os << "x,re_plus,im_plus,re_minus,im_minus,density\n";
  for (std::size_t l = 0; l < f.size(); ++l) {
    const Spinor2& s = f[l];
    os << format_double(f.position(l)) << ',' << format_double(s.plus.real()) << ',' << format_double(s.plus.imag())
       << ',' << format_double(s.minus.real()) << ',' << format_double(s.minus.imag()) << ','
       << format_double(std::norm(s.plus) + std::norm(s.minus)) << '\n';
  }
  return os.str();
}

std::string snapshot_name(std::size_t step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshots/step_%08zu.csv", step);
  return buf;
}

}  // namespace

int cmd_simulate(const RunConfig& c, std::ostream& log) {
  const ExperimentSpec& e = c.experiment;
  const GridChoice grid = snap_grid(e.alpha, e.length, c.simulate.epsilon);
  const ScalingParams params = ScalingParams::make(e.m, e.profile.build(), grid.epsilon, e.alpha, e.frame);
  const auto steps = static_cast<std::size_t>(std::llround(e.time / (2.0 * params.epsilon)));
  const SpinorField psi0 =
      make_wavepacket(grid.sites, params.dx, e.packet.x0, e.packet.width, e.packet.k0, e.packet.chirality_mix);

  SpinorField psi = psi0;
  write_file_atomic(path_in(c, snapshot_name(0)), snapshot_csv(psi));
  std::size_t snapshots = 1;
  const std::size_t stride = c.simulate.snapshot_stride == 0 ? steps : c.simulate.snapshot_stride;
  std::size_t done = 0;
  while (done < steps) {
    const std::size_t chunk = std::min(stride, steps - done);
    psi = qw_evolve(psi, params, 2.0 * params.dt * static_cast<double>(done), chunk);
    done += chunk;
    write_file_atomic(path_in(c, snapshot_name(done)), snapshot_csv(psi));
    ++snapshots;
  }

  double chirality_flux = 0.0;
  double mean_x = 0.0;
  for (std::size_t l = 0; l < psi.size(); ++l) {
    chirality_flux += std::norm(psi[l].minus) - std::norm(psi[l].plus);
    mean_x += psi.position(l) * (std::norm(psi[l].plus) + std::norm(psi[l].minus));
  }
  const double drift = std::abs(psi.norm() - psi0.norm());
  log << "sites " << grid.sites << ", epsilon " << format_double(params.epsilon) << ", steps " << steps << '\n';
  log << "final norm " << format_double(psi.norm()) << " (drift " << format_double(drift) << ")\n";
  log << "right-minus-left flux " << format_double(chirality_flux) << ", mean x " << format_double(mean_x) << '\n';

  json summary = {{"sites", grid.sites},
                  {"epsilon_requested", c.simulate.epsilon},
                  {"epsilon", params.epsilon},
                  {"dx", params.dx},
                  {"steps", steps},
                  {"time_reached", 2.0 * params.epsilon * static_cast<double>(steps)},
                  {"snapshots", snapshots},
                  {"final_norm", psi.norm()},
                  {"norm_drift", drift},
                  {"chirality_flux", chirality_flux},
                  {"mean_x", mean_x},
                  {"distance_from_initial", l2_distance(psi, psi0)}};
  CheckList checks;
  checks.add("norm_drift", drift, c.checks.max_norm_drift, drift <= c.checks.max_norm_drift);
  return finish(c, summary, checks, log);
}

int cmd_sweep(const RunConfig& c, std::ostream& log) {
  ExperimentSpec e = c.experiment;
  e.threads = c.threads;
  const SweepReport report = run_convergence_sweep(e);
  write_file_atomic(path_in(c, "sweep.csv"), report.to_csv());
  write_file_atomic(path_in(c, "sweep.json"), report.to_json().dump(2) + "\n");

  log << "reference " << to_string(report.reference) << ", spec " << report.spec_hash << '\n';
  log << "epsilon               N      steps   error_l2\n";
  CheckList checks;
  for (const auto& r : report.rows) {
    if (r.ok) {
      char line[160];
      std::snprintf(line, sizeof line, "%-20.17g %-6zu %-7zu %.6e\n", r.epsilon, r.sites, r.steps, r.error_l2);
      log << line;
    } else {
      log << format_double(r.epsilon_requested) << "  failed: " << r.message << '\n';
    }
    checks.add_flag("row eps=" + format_double(r.epsilon_requested), r.ok);
  }
  if (report.fit) {
    log << "fitted order p = " << format_double(report.fit->p) << " +- " << format_double(report.fit->ci) << '\n';
    checks.add("fitted_order", report.fit->p, c.checks.min_order, report.fit->p >= c.checks.min_order);
  } else {
    log << "no order fit: " << report.fit_note << '\n';
    checks.add_flag("fitted_order (" + report.fit_note + ")", report.fit_note == "exact");
  }
  if (c.checks.require_monotone) checks.add_flag("monotone", report.monotone);
  if (report.cross_validation.performed) {
    checks.add("reference_cross_validation", report.cross_validation.discrepancy, report.cross_validation.threshold,
               report.cross_validation.valid);
  }
  return finish(c, {{"report", "sweep.json"}, {"fit_note", report.fit_note}}, checks, log);
}

int cmd_dispersion(const RunConfig& c, std::ostream& log) {
  const ExperimentSpec& e = c.experiment;
  const ScalingParams params = ScalingParams::make(e.m, e.profile.build(), c.dispersion.epsilon, e.alpha, e.frame);
  const auto rows = dispersion_scan(params, c.dispersion.k_count);
  write_file_atomic(path_in(c, "dispersion.csv"), dispersion_to_csv(rows));
  const DispersionRow& edge = rows.front();
  const double deviation = dispersion_deviation(rows, params.epsilon);
  log << "zone edge k = " << format_double(edge.k) << ": lattice energy " << format_double(edge.lattice_energy)
      << ", continuum energy " << format_double(edge.continuum_energy) << '\n';
  log << "max |walk phase -+ 2 eps E_lattice| = " << format_double(deviation) << '\n';
  json summary = {{"zone_edge_k", edge.k},
                  {"zone_edge_lattice_energy", edge.lattice_energy},
                  {"zone_edge_continuum_energy", edge.continuum_energy},
                  {"max_phase_deviation", deviation},
                  {"k_count", rows.size()}};
  CheckList checks;
  if (e.m == 0.0) checks.add("doubler_zero_energy", edge.lattice_energy, 1e-12, edge.lattice_energy <= 1e-12);
  return finish(c, summary, checks, log);
}

int cmd_qca(const RunConfig& c, std::ostream& log) {
  const QcaOptions opts = c.qca.options();
  const double residual = verify_encoding(c.qca.theta, c.qca.zeta, c.qca.cells, opts);
  const double leak = number_conservation_residual(c.qca.theta, c.qca.zeta, c.qca.conservation_cells, opts);
  log << "one-particle sector vs encoded walk, " << c.qca.cells << " cells: residual " << format_double(residual)
      << '\n';
  log << "amplitude between particle-number sectors, " << c.qca.conservation_cells << " cells: "
      << format_double(leak) << '\n';
  const json result = {{"encoding_residual", residual}, {"number_leak", leak}};
  write_file_atomic(path_in(c, "qca.json"), result.dump(2) + "\n");
  CheckList checks;
  checks.add("encoding_residual", residual, c.checks.max_encoding_residual, residual <= c.checks.max_encoding_residual);
  checks.add("number_conservation", leak, 0.0, leak == 0.0);
  return finish(c, result, checks, log);
}

int run_command(const RunConfig& c, std::ostream& log) {
  validate(c);
  if (c.command == "simulate") return cmd_simulate(c, log);
  if (c.command == "sweep") return cmd_sweep(c, log);
  if (c.command == "dispersion") return cmd_dispersion(c, log);
  return cmd_qca(c, log);
}

}  // namespace plasticwalk::cli

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plasticwalk/errors.hpp"
#include "plasticwalk_cli/commands.hpp"
#include "plasticwalk_cli/config.hpp"

namespace {

using namespace plasticwalk;
using namespace plasticwalk::cli;

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, m, epsilon, time, length, c0, theta, zeta;
  std::optional<std::vector<double>> epsilons;
  std::optional<std::size_t> cells, refinement, k_count, stride;
  std::optional<std::string> pair_phase, frame, reference;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--preset", o.preset, "flat | sine-bump | gaussian-well");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--threads", o.threads, "worker threads (falls back to PLASTICWALK_THREADS)");
  app.add_option("--seed", o.seed, "random seed");
}

std::size_t env_threads() {
  const char* v = std::getenv("PLASTICWALK_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used != std::string(v).size() || n < 1) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw ConfigError("PLASTICWALK_THREADS", std::string("'") + v + "' is not a positive integer");
  }
}

RunConfig assemble(const std::string& command, const Overrides& o) {
  if (o.config_path && o.preset) throw ConfigError("preset", "--preset and --config are exclusive");
  RunConfig c = o.config_path ? load_config(*o.config_path) : o.preset ? preset(*o.preset) : preset("flat");
  c.command = command;
  auto& e = c.experiment;
  if (o.out) c.out = *o.out;
  if (o.threads) {
    c.threads = *o.threads;
  } else if (const std::size_t n = env_threads(); n > 0) {
    c.threads = n;
  }
  if (o.seed) c.seed = *o.seed;
  if (o.alpha) e.alpha = *o.alpha;
  if (o.m) e.m = *o.m;
  if (o.time) e.time = *o.time;
  if (o.length) {
    e.length = *o.length;
    e.profile.length = *o.length;
  }
  if (o.c0) e.profile.c0 = *o.c0;
  if (o.epsilons) e.epsilons = *o.epsilons;
  if (o.epsilon) {
    c.simulate.epsilon = *o.epsilon;
    c.dispersion.epsilon = *o.epsilon;
  }
  if (o.refinement) e.refinement = *o.refinement;
  if (o.stride) c.simulate.snapshot_stride = *o.stride;
  if (o.k_count) c.dispersion.k_count = *o.k_count;
  if (o.cells) c.qca.cells = *o.cells;
  if (o.theta) c.qca.theta = *o.theta;
  if (o.zeta) c.qca.zeta = *o.zeta;
  if (o.pair_phase) c.qca.pair_phase = *o.pair_phase;
  try {
    if (o.frame) e.frame = frame_from_string(*o.frame);
    if (o.reference) e.reference = reference_from_string(*o.reference);
  } catch (const Error& err) {
    throw ConfigError(o.frame ? "frame" : "reference", err.what());
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plasticwalk: quantum walks with a plastic continuum limit"};
  app.require_subcommand(1);
  Overrides o;

  CLI::App* simulate = app.add_subcommand("simulate", "evolve a wave packet and write snapshots");
  CLI::App* sweep = app.add_subcommand("sweep", "convergence sweep over epsilon against a reference");
  CLI::App* dispersion = app.add_subcommand("dispersion", "walk quasi-energies across the Brillouin zone");
  CLI::App* qca = app.add_subcommand("qca", "check the one-particle sector of the automaton");

  for (CLI::App* sub : {simulate, sweep, dispersion, qca}) add_common(*sub, o);
  for (CLI::App* sub : {simulate, sweep, dispersion}) {
    sub->add_option("--alpha", o.alpha, "scaling exponent in [0, 1]");
    sub->add_option("--m", o.m, "mass");
    sub->add_option("--c0", o.c0, "baseline speed of the profile");
    sub->add_option("--length", o.length, "ring length");
    sub->add_option("--frame", o.frame, "rotation | spectral_lambda");
  }
  for (CLI::App* sub : {simulate, dispersion}) sub->add_option("--epsilon", o.epsilon, "lattice parameter");
  for (CLI::App* sub : {simulate, sweep}) sub->add_option("--time", o.time, "final time");
  simulate->add_option("--stride", o.stride, "steps between snapshots (0: first and last)");
  sweep->add_option("--epsilons", o.epsilons, "descending epsilon values")->expected(1, -1);
  sweep->add_option("--reference", o.reference, "auto | lattice_exact | dirac_momentum | curved_fine_grid");
  sweep->add_option("--refinement", o.refinement, "fine-grid factor for curved-fine-grid");
  dispersion->add_option("--k-count", o.k_count, "number of momenta");
  qca->add_option("--cells", o.cells, "cells on the ring");
  qca->add_option("--theta", o.theta, "coin angle");
  qca->add_option("--zeta", o.zeta, "mass angle");
  qca->add_option("--pair-phase", o.pair_phase, "minus-one | free-fermion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    config = assemble(command, o);
    validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::filesystem::create_directories(config.out);
    return run_command(config, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "plasticwalk/harness.hpp"
#include "plasticwalk/qca.hpp"

namespace plasticwalk::cli {

/// Bad configuration; `field` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SimulateOptions {
  double epsilon = 0.05;
  std::size_t snapshot_stride = 0;  // 0: initial and final only
  friend bool operator==(const SimulateOptions&, const SimulateOptions&) = default;
};

struct DispersionOptions {
  double epsilon = 0.01;
  std::size_t k_count = 64;
  friend bool operator==(const DispersionOptions&, const DispersionOptions&) = default;
};

struct QcaRunOptions {
  std::size_t cells = 8;
  double theta = 1.0;
  double zeta = 0.3;
  std::size_t conservation_cells = 5;
  std::string variant = "standard";    // standard | chiral-sigma-y
  std::string pair_phase = "minus-one";  // minus-one | free-fermion
  friend bool operator==(const QcaRunOptions&, const QcaRunOptions&) = default;

  QcaOptions options() const;
};

struct Checks {
  double max_norm_drift = 1e-10;
  double min_order = 0.9;
  double max_encoding_residual = 1e-12;
  bool require_monotone = true;
  friend bool operator==(const Checks&, const Checks&) = default;
};

struct RunConfig {
  std::string command = "simulate";
  std::string out = "out";
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  ExperimentSpec experiment;
  SimulateOptions simulate;
  DispersionOptions dispersion;
  QcaRunOptions qca;
  Checks checks;

  nlohmann::json to_json() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses a config document. Unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& j);
/// Reads and parses a file; JSON syntax errors report the line.
RunConfig load_config(const std::string& path);

/// Named presets: flat, sine-bump, gaussian-well.
RunConfig preset(const std::string& name);

/// Range checks on every field used by `config.command`.
void validate(const RunConfig& config);

}  // namespace plasticwalk::cli

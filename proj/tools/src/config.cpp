#include "plasticwalk_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "plasticwalk/errors.hpp"

namespace plasticwalk::cli {

using nlohmann::json;

QcaOptions QcaRunOptions::options() const {
  QcaOptions o;
  o.variant = variant == "chiral-sigma-y" ? CoinVariant::kChiralSigmaY : CoinVariant::kStandard;
  o.pair_phase = pair_phase == "free-fermion" ? PairPhase::kFreeFermion : PairPhase::kMinusOne;
  return o;
}

json RunConfig::to_json() const {
  json j = experiment.to_json();
  j["command"] = command;
  j["out"] = out;
  j["threads"] = threads;
  j["seed"] = seed;
  j["simulate"] = {{"epsilon", simulate.epsilon}, {"snapshot_stride", simulate.snapshot_stride}};
  j["dispersion"] = {{"epsilon", dispersion.epsilon}, {"k_count", dispersion.k_count}};
  j["qca"] = {{"cells", qca.cells},
              {"theta", qca.theta},
              {"zeta", qca.zeta},
              {"conservation_cells", qca.conservation_cells},
              {"variant", qca.variant},
              {"pair_phase", qca.pair_phase}};
  j["checks"] = {{"max_norm_drift", checks.max_norm_drift},
                 {"min_order", checks.min_order},
                 {"max_encoding_residual", checks.max_encoding_residual},
                 {"require_monotone", checks.require_monotone}};
  return j;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return a.to_json() == b.to_json(); }

namespace {

// Reads the keys of one JSON object, remembering which ones were used so
// that leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected a JSON object");
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  template <typename T>
  void get(const std::string& key, T& target) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(path(key), "expected a string");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
          throw ConfigError(path(key), "expected a nonnegative integer");
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError(path(key), "expected a number");
      }
      target = v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path(key), e.what());
    }
  }

  void get_list(const std::string& key, std::vector<double>& target) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(path(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    target = out;
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(path(k), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

void range(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

std::string show(double v) { return format_double(v); }

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  Reader r(j, "");
  r.get("command", c.command);
  r.get("out", c.out);
  r.get("threads", c.threads);
  r.get("seed", c.seed);
  ExperimentSpec& e = c.experiment;
  r.get("alpha", e.alpha);
  r.get("m", e.m);
  r.get("length", e.length);
  r.get("time", e.time);
  r.get_list("epsilons", e.epsilons);
  std::string reference = to_string(e.reference);
  std::string frame = to_string(e.frame);
  r.get("reference", reference);
  r.get("frame", frame);
  try {
    e.reference = reference_from_string(reference);
  } catch (const Error&) {
    throw ConfigError("reference", "'" + reference + "' is not one of auto, lattice_exact, dirac_momentum, curved_fine_grid");
  }
  try {
    e.frame = frame_from_string(frame);
  } catch (const Error&) {
    throw ConfigError("frame", "'" + frame + "' is not one of rotation, spectral_lambda");
  }
  r.get("encode_reference", e.encode_reference);
  r.get("refinement", e.refinement);
  r.get("cross_validate", e.cross_validate);
  if (const json* p = r.child("profile")) {
    Reader pr(*p, "profile");
    pr.get("kind", e.profile.kind);
    pr.get("c0", e.profile.c0);
    pr.get("amplitude", e.profile.amplitude);
    pr.get("depth", e.profile.depth);
    pr.get("center", e.profile.center);
    pr.get("width", e.profile.width);
    pr.get("length", e.profile.length);
    pr.finish();
  }
  if (const json* p = r.child("packet")) {
    Reader pr(*p, "packet");
    pr.get("x0", e.packet.x0);
    pr.get("width", e.packet.width);
    pr.get("k0", e.packet.k0);
    pr.get("chirality_mix", e.packet.chirality_mix);
    pr.finish();
  }
  if (const json* p = r.child("simulate")) {
    Reader pr(*p, "simulate");
    pr.get("epsilon", c.simulate.epsilon);
    pr.get("snapshot_stride", c.simulate.snapshot_stride);
    pr.finish();
  }
  if (const json* p = r.child("dispersion")) {
    Reader pr(*p, "dispersion");
    pr.get("epsilon", c.dispersion.epsilon);
    pr.get("k_count", c.dispersion.k_count);
    pr.finish();
  }
  if (const json* p = r.child("qca")) {
    Reader pr(*p, "qca");
    pr.get("cells", c.qca.cells);
    pr.get("theta", c.qca.theta);
    pr.get("zeta", c.qca.zeta);
    pr.get("conservation_cells", c.qca.conservation_cells);
    pr.get("variant", c.qca.variant);
    pr.get("pair_phase", c.qca.pair_phase);
    pr.finish();
  }
  if (const json* p = r.child("checks")) {
    Reader pr(*p, "checks");
    pr.get("max_norm_drift", c.checks.max_norm_drift);
    pr.get("min_order", c.checks.min_order);
    pr.get("max_encoding_residual", c.checks.max_encoding_residual);
    pr.get("require_monotone", c.checks.require_monotone);
    pr.finish();
  }
  r.finish();
  e.threads = c.threads;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ConfigError(path + ":" + std::to_string(line), e.what());
  }
  return config_from_json(j);
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  ExperimentSpec& e = c.experiment;
  e.alpha = 1.0;
  e.m = 0.2;
  e.length = 64.0;
  e.time = 4.0;
  e.epsilons = {0.2, 0.1, 0.05, 0.025};
  e.packet = {32.0, 8.0, kPi / 8, 1.0};
  if (name == "flat") {
    e.profile = {"flat", 0.5};
  } else if (name == "sine-bump") {
    e.m = 0.1;
    e.profile = {"sine-bump", 0.5, 0.3, 0.0, 0.0, 1.0, 64.0};
  } else if (name == "gaussian-well") {
    e.m = 0.1;
    e.profile = {"gaussian-well", 0.9, 0.0, 0.4, 32.0, 8.0, 64.0};
  } else {
    throw ConfigError("profile", "unknown preset '" + name + "' (expected flat, sine-bump or gaussian-well)");
  }
  e.profile.length = e.length;
  return c;
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"simulate", "sweep", "dispersion", "qca"};
  range(commands.count(c.command) > 0, "command", "'" + c.command + "' is not one of simulate, sweep, dispersion, qca");
  range(!c.out.empty(), "out", "output directory must not be empty");
  range(c.threads >= 1 && c.threads <= 256, "threads", std::to_string(c.threads) + " outside [1, 256]");
  const ExperimentSpec& e = c.experiment;
  auto finite = [](double v) { return std::isfinite(v); };
  range(c.checks.max_norm_drift >= 0 && c.checks.max_encoding_residual >= 0, "checks", "tolerances must be >= 0");

  if (c.command == "qca") {
    range(c.qca.cells >= 2 && c.qca.cells <= 12, "qca.cells", std::to_string(c.qca.cells) + " outside [2, 12]");
    range(c.qca.conservation_cells >= 2 && c.qca.conservation_cells <= 8, "qca.conservation_cells",
          std::to_string(c.qca.conservation_cells) + " outside [2, 8]");
    range(finite(c.qca.theta), "qca.theta", "must be finite");
    range(finite(c.qca.zeta), "qca.zeta", "must be finite");
    range(c.qca.variant == "standard" || c.qca.variant == "chiral-sigma-y", "qca.variant",
          "'" + c.qca.variant + "' is not one of standard, chiral-sigma-y");
    range(c.qca.pair_phase == "minus-one" || c.qca.pair_phase == "free-fermion", "qca.pair_phase",
          "'" + c.qca.pair_phase + "' is not one of minus-one, free-fermion");
    return;
  }

  range(e.alpha >= 0.0 && e.alpha <= 1.0, "alpha", show(e.alpha) + " outside [0, 1]");
  range(e.m >= 0.0 && finite(e.m), "m", show(e.m) + " must be a finite number >= 0");
  range(e.length > 0.0 && finite(e.length), "length", show(e.length) + " must be > 0");
  range(e.time >= 0.0 && finite(e.time), "time", show(e.time) + " must be >= 0");
  range(e.packet.width > 0.0, "packet.width", show(e.packet.width) + " must be > 0");
  range(e.packet.chirality_mix >= 0.0 && e.packet.chirality_mix <= 1.0, "packet.chirality_mix",
        show(e.packet.chirality_mix) + " outside [0, 1]");
  range(finite(e.packet.x0) && finite(e.packet.k0), "packet", "x0 and k0 must be finite");
  range(e.refinement >= 1 && e.refinement <= 64, "refinement", std::to_string(e.refinement) + " outside [1, 64]");
  try {
    (void)e.profile.build();
  } catch (const Error& err) {
    throw ConfigError("profile", err.what());
  }
  if (c.command == "sweep") {
    range(!e.epsilons.empty(), "epsilons", "need at least one value");
    for (std::size_t i = 0; i < e.epsilons.size(); ++i) {
      const double v = e.epsilons[i];
      range(v > 0.0 && v <= 1.0, "epsilons[" + std::to_string(i) + "]", show(v) + " outside (0, 1]");
      if (i > 0) range(v < e.epsilons[i - 1], "epsilons", "values must be strictly decreasing");
    }
  }
  if (c.command == "simulate") {
    range(c.simulate.epsilon > 0.0 && c.simulate.epsilon <= 1.0, "simulate.epsilon",
          show(c.simulate.epsilon) + " outside (0, 1]");
  }
  if (c.command == "dispersion") {
    range(c.dispersion.epsilon > 0.0 && c.dispersion.epsilon <= 1.0, "dispersion.epsilon",
          show(c.dispersion.epsilon) + " outside (0, 1]");
    range(e.profile.kind == "flat", "profile", "dispersion needs the homogeneous 'flat' profile");
    range(c.dispersion.k_count >= 1 && c.dispersion.k_count <= 1000000, "dispersion.k_count",
          std::to_string(c.dispersion.k_count) + " outside [1, 1000000]");
  }
}

}  // namespace plasticwalk::cli

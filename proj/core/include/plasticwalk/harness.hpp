#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plasticwalk/profile.hpp"
#include "plasticwalk/scaling.hpp"
#include "plasticwalk/types.hpp"

namespace plasticwalk {

/// Serializable description of a c-profile preset.
struct ProfileSpec {
  std::string kind = "flat";  // flat | sine-bump | gaussian-well
  double c0 = 0.5;
  double amplitude = 0.0;     // sine-bump
  double depth = 0.0;         // gaussian-well
  double center = 0.0;        // gaussian-well
  double width = 1.0;         // gaussian-well
  double length = 1.0;        // period of the ring

  CProfile build() const;
  nlohmann::json to_json() const;
  static ProfileSpec from_json(const nlohmann::json& j);
  friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

/// Normalized Gaussian packet exp(-d^2 / (2 w^2)) e^{i k0 x}, d the periodic
/// distance to x0; sqrt(mix) of it in plus, sqrt(1 - mix) in minus.
/// ResolutionError if w < 4 dx.
SpinorField make_wavepacket(std::size_t sites, double dx, double x0, double width, double k0,
                            double chirality_mix = 1.0);

struct OrderFit {
  double p = 0.0;
  double ci = 0.0;  // standard error of the slope
};

/// Least-squares slope of log(error) against log(epsilon). Needs >= 3 rows
/// with strictly decreasing epsilon; DegenerateError if any error <= 1e-14.
OrderFit estimate_order(const std::vector<double>& epsilons, const std::vector<double>& errors);

enum class Reference { kAuto, kLatticeExact, kDiracMomentum, kCurvedFineGrid };

std::string to_string(Reference r);
Reference reference_from_string(const std::string& s);
std::string to_string(FrameConvention f);
FrameConvention frame_from_string(const std::string& s);

struct PacketSpec {
  double x0 = 0.0;
  double width = 1.0;
  double k0 = 0.0;
  double chirality_mix = 1.0;
  friend bool operator==(const PacketSpec&, const PacketSpec&) = default;
};

struct ExperimentSpec {
  double alpha = 1.0;
  double m = 0.0;
  ProfileSpec profile;
  double length = 64.0;
  double time = 1.0;
  std::vector<double> epsilons;  // descending, each in (0, 1]
  PacketSpec packet;
  Reference reference = Reference::kAuto;
  FrameConvention frame = FrameConvention::kRotation;
  /// Compare against E Ref E^dagger (E = S+). Off compares raw fields.
  bool encode_reference = true;
  std::size_t refinement = 8;  // curved_fine_grid only
  bool cross_validate = false;
  std::size_t threads = 1;

  nlohmann::json to_json() const;
  static ExperimentSpec from_json(const nlohmann::json& j);
  /// Reference actually used once kAuto is resolved.
  Reference resolved_reference() const;
};

struct SweepRow {
  double epsilon_requested = 0.0;
  double epsilon = 0.0;
  double dt = 0.0;
  double dx = 0.0;
  std::size_t sites = 0;
  std::size_t steps = 0;
  double time_reached = 0.0;
  double time_mismatch = 0.0;
  double error_l2 = 0.0;
  double error_max = 0.0;
  double walltime_s = 0.0;
  bool ok = true;
  std::string message;
};

struct CrossValidation {
  bool performed = false;
  double discrepancy = 0.0;
  double threshold = 0.0;
  bool valid = true;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::optional<OrderFit> fit;
  std::string fit_note;  // "exact" when every error sits at the noise floor
  bool monotone = true;
  Reference reference = Reference::kAuto;
  std::string spec_hash;
  std::string code_version;
  CrossValidation cross_validation;
  nlohmann::json spec;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct GridChoice {
  double epsilon = 0.0;  // snapped
  std::size_t sites = 0;
};

/// N = round(L / eps^(1 - alpha)) and the epsilon that makes N dx = L
/// exactly (alpha < 1). At alpha = 1, dx = 1 and N = round(L).
GridChoice snap_grid(double alpha, double length, double epsilon);

/// One sweep row: snaps epsilon to the grid, walks, evolves the reference to
/// the reached time and measures the errors.
SweepRow run_sweep_row(const ExperimentSpec& spec, double epsilon);
SweepReport run_convergence_sweep(const ExperimentSpec& spec);

/// Fixed-width hex FNV-1a of the experiment's canonical JSON.
std::string spec_hash(const ExperimentSpec& spec);
std::string code_version();

struct DispersionRow {
  double k = 0.0;
  double walk_phase_low = 0.0;
  double walk_phase_high = 0.0;
  double lattice_energy = 0.0;
  double continuum_energy = 0.0;
};

/// k on the uniform grid -pi/dx + 2 pi j / (k_count dx). InhomogeneousError
/// for non-homogeneous profiles.
std::vector<DispersionRow> dispersion_scan(const ScalingParams& params, std::size_t k_count);

/// max_k |sorted walk phases - (-2 eps E_L, +2 eps E_L)|.
double dispersion_deviation(const std::vector<DispersionRow>& rows, double epsilon);

std::string dispersion_to_csv(const std::vector<DispersionRow>& rows);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

/// %.17g
std::string format_double(double v);

}  // namespace plasticwalk

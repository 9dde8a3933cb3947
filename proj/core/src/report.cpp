#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plasticwalk/errors.hpp"
#include "plasticwalk/harness.hpp"

#ifndef PLASTICWALK_VERSION
#define PLASTICWALK_VERSION "unknown"
#endif

namespace plasticwalk {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string code_version() { return PLASTICWALK_VERSION; }

std::string to_string(Reference r) {
  switch (r) {
    case Reference::kAuto: return "auto";
    case Reference::kLatticeExact: return "lattice_exact";
    case Reference::kDiracMomentum: return "dirac_momentum";
    case Reference::kCurvedFineGrid: return "curved_fine_grid";
  }
  return "auto";
}

Reference reference_from_string(const std::string& s) {
  if (s == "auto") return Reference::kAuto;
  if (s == "lattice_exact") return Reference::kLatticeExact;
  if (s == "dirac_momentum") return Reference::kDiracMomentum;
  if (s == "curved_fine_grid") return Reference::kCurvedFineGrid;
  throw DomainError("unknown reference '" + s + "'");
}

std::string to_string(FrameConvention f) { return f == FrameConvention::kRotation ? "rotation" : "spectral_lambda"; }

FrameConvention frame_from_string(const std::string& s) {
  if (s == "rotation") return FrameConvention::kRotation;
  if (s == "spectral_lambda") return FrameConvention::kSpectralLambda;
  throw DomainError("unknown frame '" + s + "'");
}

json ProfileSpec::to_json() const {
  return {{"kind", kind},   {"c0", c0},         {"amplitude", amplitude}, {"depth", depth},
          {"center", center}, {"width", width}, {"length", length}};
}

ProfileSpec ProfileSpec::from_json(const json& j) {
  ProfileSpec p;
  p.kind = j.value("kind", p.kind);
  p.c0 = j.value("c0", p.c0);
  p.amplitude = j.value("amplitude", p.amplitude);
  p.depth = j.value("depth", p.depth);
  p.center = j.value("center", p.center);
  p.width = j.value("width", p.width);
  p.length = j.value("length", p.length);
  return p;
}

json ExperimentSpec::to_json() const {
  return {{"alpha", alpha},
          {"m", m},
          {"profile", profile.to_json()},
          {"length", length},
          {"time", time},
          {"epsilons", epsilons},
          {"packet", {{"x0", packet.x0}, {"width", packet.width}, {"k0", packet.k0},
                      {"chirality_mix", packet.chirality_mix}}},
          {"reference", to_string(reference)},
          {"frame", to_string(frame)},
          {"encode_reference", encode_reference},
          {"refinement", refinement},
          {"cross_validate", cross_validate}};
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
  ExperimentSpec s;
  s.alpha = j.value("alpha", s.alpha);
  s.m = j.value("m", s.m);
  if (j.contains("profile")) s.profile = ProfileSpec::from_json(j.at("profile"));
  s.length = j.value("length", s.length);
  s.time = j.value("time", s.time);
  s.epsilons = j.value("epsilons", s.epsilons);
  if (j.contains("packet")) {
    const json& p = j.at("packet");
    s.packet.x0 = p.value("x0", s.packet.x0);
    s.packet.width = p.value("width", s.packet.width);
    s.packet.k0 = p.value("k0", s.packet.k0);
    s.packet.chirality_mix = p.value("chirality_mix", s.packet.chirality_mix);
  }
  s.reference = reference_from_string(j.value("reference", std::string("auto")));
  s.frame = frame_from_string(j.value("frame", std::string("rotation")));
  s.encode_reference = j.value("encode_reference", s.encode_reference);
  s.refinement = j.value("refinement", s.refinement);
  s.cross_validate = j.value("cross_validate", s.cross_validate);
  return s;
}

std::string spec_hash(const ExperimentSpec& spec) {
  // threads is excluded: it never changes the rows.
  const std::string text = spec.to_json().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json SweepReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"epsilon_requested", r.epsilon_requested},
                         {"epsilon", r.epsilon},
                         {"dt", r.dt},
                         {"dx", r.dx},
                         {"N", r.sites},
                         {"steps", r.steps},
                         {"time_reached", r.time_reached},
                         {"time_mismatch", r.time_mismatch},
                         {"error_l2", r.error_l2},
                         {"error_max", r.error_max},
                         {"walltime_s", r.walltime_s},
                         {"ok", r.ok},
                         {"message", r.message}});
  }
  json out = {{"rows", rows_json},
              {"reference", to_string(reference)},
              {"monotone", monotone},
              {"spec_hash", spec_hash},
              {"code_version", code_version},
              {"spec", spec}};
  if (fit) {
    out["fitted_order"] = {{"p", fit->p}, {"ci", fit->ci}};
  } else {
    out["fitted_order"] = nullptr;
  }
  out["fit_note"] = fit_note;
  out["cross_validation"] = {{"performed", cross_validation.performed},
                             {"discrepancy", cross_validation.discrepancy},
                             {"threshold", cross_validation.threshold},
                             {"valid", cross_validation.valid}};
  return out;
}

std::string SweepReport::to_csv() const {
  std::ostringstream os;
  os << "epsilon,dt,dx,N,steps,error_l2,error_max,walltime_s\n";
  for (const auto& r : rows) {
    if (!r.ok) continue;
    os << format_double(r.epsilon) << ',' << format_double(r.dt) << ',' << format_double(r.dx) << ',' << r.sites << ','
       << r.steps << ',' << format_double(r.error_l2) << ',' << format_double(r.error_max) << ','
       << format_double(r.walltime_s) << '\n';
  }
  return os.str();
}

std::string dispersion_to_csv(const std::vector<DispersionRow>& rows) {
  std::ostringstream os;
  os << "k,walk_phase_low,walk_phase_high,lattice_energy,continuum_energy\n";
  for (const auto& r : rows) {
    os << format_double(r.k) << ',' << format_double(r.walk_phase_low) << ',' << format_double(r.walk_phase_high) << ','
       << format_double(r.lattice_energy) << ',' << format_double(r.continuum_energy) << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << contents;
    os.flush();
    if (!os) throw Error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

}  // namespace plasticwalk

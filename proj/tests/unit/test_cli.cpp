#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plasticwalk_cli/commands.hpp"
#include "plasticwalk_cli/config.hpp"

using namespace plasticwalk;
using namespace plasticwalk::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("plasticwalk_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string field_of(const RunConfig& c) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    return e.field() + " | " + e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("presets round-trip through JSON") {
  for (const char* name : {"flat", "sine-bump", "gaussian-well"}) {
    for (const char* cmd : {"simulate", "sweep", "dispersion", "qca"}) {
      RunConfig c = preset(name);
      c.command = cmd;
      const RunConfig back = config_from_json(json::parse(c.to_json().dump()));
      CHECK(back == c);
      CHECK(back.to_json().dump() == c.to_json().dump());
    }
  }
  CHECK_THROWS_AS(preset("banana"), ConfigError);
}

TEST_CASE("validation names the field and range") {
  RunConfig c = preset("flat");
  c.command = "sweep";
  CHECK(field_of(c).empty());
  c.experiment.alpha = 1.5;
  const std::string msg = field_of(c);
  CHECK(msg.find("alpha") == 0);
  CHECK(msg.find("[0, 1]") != std::string::npos);

  RunConfig q = preset("flat");
  q.command = "qca";
  q.qca.cells = 13;
  CHECK(field_of(q).find("qca.cells") == 0);

  RunConfig d = preset("sine-bump");
  d.command = "dispersion";
  CHECK(field_of(d).find("profile") == 0);
}

TEST_CASE("config parsing is strict") {
  json j = preset("flat").to_json();
  j["alpah"] = 0.5;
  try {
    config_from_json(j);
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.field().find("alpah") != std::string::npos);
  }
  json k = preset("flat").to_json();
  k["threads"] = "four";
  CHECK_THROWS_AS(config_from_json(k), ConfigError);

  const fs::path dir = scratch("syntax");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "bad.json");
    out << "{\n  \"command\": \"qca\",\n  \"out\": \n}\n";
  }
  try {
    load_config((dir / "bad.json").string());
    FAIL("syntax error accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("simulate identity case leaves the packet unchanged") {
  RunConfig c = preset("flat");
  c.command = "simulate";
  c.out = scratch("identity").string();
  c.experiment.alpha = 0.0;
  c.experiment.m = 0.0;
  c.experiment.profile.c0 = 0.0;
  c.experiment.time = 0.5;
  c.simulate.epsilon = 0.1;
  c.simulate.snapshot_stride = 2;
  std::ostringstream log;
  REQUIRE(run_command(c, log) == kExitOk);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fs::path(c.out) / "snapshots")) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  REQUIRE(files.size() == 3);  // steps 0, 2, 3
  const auto first = read_csv(files.front());
  const auto last = read_csv(files.back());
  REQUIRE(first.size() == 640);
  REQUIRE(last.size() == 640);
  double worst = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    REQUIRE(first[i].size() == 6);
    for (std::size_t j = 0; j < 6; ++j) worst = std::max(worst, std::abs(first[i][j] - last[i][j]));
  }
  CHECK(worst <= 1e-12);

  const json s = read_json(fs::path(c.out) / "summary.json");
  CHECK(s.at("passed").get<bool>());
  CHECK(s.at("norm_drift").get<double>() <= 1e-10);
  CHECK(s.at("sites").get<std::size_t>() == 640);
  CHECK(log.str().find("final norm") != std::string::npos);
}

TEST_CASE("simulate drift check on a curved run") {
  RunConfig c = preset("gaussian-well");
  c.command = "simulate";
  c.out = scratch("well").string();
  c.experiment.time = 2.0;
  c.simulate.epsilon = 0.05;
  std::ostringstream log;
  CHECK(run_command(c, log) == kExitOk);
  const json s = read_json(fs::path(c.out) / "summary.json");
  CHECK(s.at("norm_drift").get<double>() <= 1e-10);
}

TEST_CASE("qca command reports the encoding residual") {
  RunConfig c = preset("flat");
  c.command = "qca";
  c.out = scratch("qca").string();
  c.qca.cells = 8;
  c.qca.theta = 1.0;
  c.qca.zeta = 0.3;
  std::ostringstream log;
  CHECK(run_command(c, log) == kExitOk);
  const json r = read_json(fs::path(c.out) / "qca.json");
  CHECK(r.at("encoding_residual").get<double>() <= 1e-12);
  CHECK(r.at("number_leak").get<double>() == 0.0);
  const json s = read_json(fs::path(c.out) / "summary.json");
  CHECK(s.at("checks").size() == 2);
  CHECK(s.at("passed").get<bool>());
}

TEST_CASE("dispersion with m = 0 has zero energy at the zone edge") {
  RunConfig c = preset("flat");
  c.command = "dispersion";
  c.out = scratch("dispersion").string();
  c.experiment.m = 0.0;
  c.dispersion.k_count = 32;
  std::ostringstream log;
  CHECK(run_command(c, log) == kExitOk);
  const json s = read_json(fs::path(c.out) / "summary.json");
  CHECK(s.at("zone_edge_lattice_energy").get<double>() <= 1e-12);
  CHECK(read_csv(fs::path(c.out) / "dispersion.csv").size() == 32);
  CHECK(log.str().find("zone edge") != std::string::npos);
}

TEST_CASE("sweep command writes report files and fails loud on bad order") {
  RunConfig c = preset("flat");
  c.command = "sweep";
  c.out = scratch("sweep").string();
  c.experiment.epsilons = {0.2, 0.1, 0.05};
  c.experiment.time = 2.0;
  std::ostringstream log;
  CHECK(run_command(c, log) == kExitOk);
  CHECK(read_csv(fs::path(c.out) / "sweep.csv").size() == 3);
  CHECK(read_json(fs::path(c.out) / "sweep.json").at("rows").size() == 3);

  c.checks.min_order = 50.0;
  std::ostringstream log2;
  CHECK(run_command(c, log2) == kExitFailure);
  CHECK(log2.str().find("FAIL fitted_order") != std::string::npos);
}

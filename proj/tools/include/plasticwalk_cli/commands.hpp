#pragma once

#include <ostream>

#include "plasticwalk_cli/config.hpp"

namespace plasticwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Each command writes its files under config.out, a summary.json listing
/// every check, and a human-readable log to `log`. Returns the exit code.
int cmd_simulate(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_dispersion(const RunConfig& config, std::ostream& log);
int cmd_qca(const RunConfig& config, std::ostream& log);

int run_command(const RunConfig& config, std::ostream& log);

}  // namespace plasticwalk::cli

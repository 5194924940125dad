#pragma once

#include <string>
#include <vector>

#include "rt3d/config.hpp"

namespace rt3d {

/// Deterministic artifact renderers backing the CLI subcommands; tests call
/// these directly to assert byte-identical output across worker counts.
std::string profile_csv_text(const ExperimentConfig& cfg, int threads,
                             const std::string& sinogram_path = {});
std::string genericity_text(const ExperimentConfig& cfg);
std::string remote_check_csv_text(const ExperimentConfig& cfg, int threads);

/// Full command-line entry point ("args" excludes the program name).
/// Exit codes: 0 success, 2 config error, 3 numeric/geometry error.
int rt3d_cli_main(const std::vector<std::string>& args);

}  // namespace rt3d

#pragma once

#include <cstdint>
#include <string>

#include "nseobs/config.hpp"

namespace nseobs {

inline constexpr const char* kVersion = "1.0.0";

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed);
int cmd_sensitivity(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed);
int cmd_observe(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed);
int cmd_gain_report(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed);
int cmd_compare_bounds(const ExperimentConfig& cfg, const std::string& out_dir, std::uint64_t seed);
int cmd_inequality_audit(const ExperimentConfig& cfg, const std::string& out_dir,
                         std::uint64_t seed);

/// Parses the config (empty path = preset defaults), dispatches, and always
/// writes <out_dir>/manifest.json, also on failure. Returns the exit code.
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, std::uint64_t seed, const std::string& preset,
                std::string* error_out = nullptr);

}  // namespace nseobs

#pragma once

// Subcommand implementations for the mstirap executable. Each returns a
// process exit code; run_guarded maps library exceptions onto the codes.

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mstirap/output.hpp"
#include "mstirap/presets.hpp"
#include "mstirap/verify.hpp"

namespace mstirap {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitInstability = 3, kExitVerify = 4 };

struct RunOptions {
  std::string preset;                ///< exactly one of preset and config
  std::filesystem::path config;
  std::filesystem::path out = "out";
  OutputFormat format = OutputFormat::csv;
  std::optional<int> steps;          ///< overrides n_steps
  std::optional<bool> stark;         ///< overrides stark_correction
};

struct ResolvedRun {
  std::string label;  ///< preset name or config file stem
  std::vector<Job> jobs;
  std::optional<SweepSpec> sweep;
};

/// Loads the preset or config file and applies the overrides. Throws ConfigError.
ResolvedRun resolve(const RunOptions& opts);

/// "a,b,c" in config units; an empty string is an empty list. Throws ConfigError.
std::vector<double> parse_value_list(const std::string& text);

int cmd_run(const RunOptions& opts, std::ostream& log);
/// `values` falls back to the preset's own sweep values for the same parameter.
int cmd_sweep(const RunOptions& opts, const std::string& parameter, const std::optional<std::string>& values,
              std::ostream& log);
int cmd_tomo(const RunOptions& opts, std::ostream& log);
/// Writes the JSON report to `report` (or to out_file when set).
int cmd_verify(const VerifyOptions& opts, const std::optional<std::filesystem::path>& out_file, std::ostream& report);
/// Preset names and descriptions, or the full config text of one preset.
int cmd_presets(const std::optional<std::string>& dump, std::ostream& out);

int run_guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace mstirap

#pragma once

// Run descriptions and their key-value config file format.
//
//   [run]
//   name = stirap-fig3a
//   kind = pure            # pure | lindblad | tomography
//   initial = ground       # ground | dark
//   [drive]
//   mode = stirap          # stirap | twophoton | sastirap | cd_ideal
//   sigma_ns = 35
//   amp01_mhz_over_2pi = 45
//   ...
//   [decoherence]          # required for lindblad and tomography runs
//   gamma10_per_us = 0.5
//
// Frequencies carry the _mhz_over_2pi suffix (f/2pi in MHz), rates are in
// 1/us without a 2pi factor, and missing keys keep their defaults.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mstirap/drive.hpp"
#include "mstirap/dynamics.hpp"

namespace mstirap {

enum class RunKind { pure, lindblad, tomography };
enum class InitialState { ground, dark };

std::string_view to_string(RunKind kind);
std::string_view to_string(InitialState initial);

struct Job {
  std::string name = "custom";
  RunKind kind = RunKind::pure;
  InitialState initial = InitialState::ground;
  DriveConfig drive;
  std::optional<DecoherenceRates> rates;

  /// Drive and rate checks, plus: lindblad and tomography runs need rates,
  /// pure runs must not have them. Throws ConfigError.
  void validate() const;
  bool operator==(const Job&) const = default;
};

/// |0>, or the dark state at the mixing angle of t_start.
QutritState initial_state(const Job& job);

class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(std::string source, int line, std::string field, const std::string& problem);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Throws ConfigParseError on syntax or value errors and ConfigError when the
/// resulting job fails validation.
Job parse_job(std::string_view text, std::string_view source = "<config>");
Job load_job(const std::filesystem::path& path);
/// Parses back to an identical Job.
std::string serialize_job(const Job& job);

}  // namespace mstirap

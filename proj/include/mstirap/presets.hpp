#pragma once

// Named, fully pinned run descriptions.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mstirap/config.hpp"

namespace mstirap {

enum class SweepParameter { delta, ts, sigma, amp };

std::string_view to_string(SweepParameter p);
/// Throws ConfigError on an unknown name.
SweepParameter sweep_parameter_from_string(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::delta;
  std::vector<double> values;  ///< config-file units (MHz/2pi or ns)
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<Job> jobs;            ///< one output file set per job
  std::optional<SweepSpec> sweep;   ///< applied to jobs.front() when set
};

const std::vector<Preset>& all_presets();
/// Throws ConfigError listing the known names.
const Preset& find_preset(std::string_view name);

}  // namespace mstirap

#pragma once

// Executes jobs and reduces trajectories to the summary numbers reported by
// the CLI.

#include <optional>
#include <string>

#include "mstirap/config.hpp"
#include "mstirap/mixedrep.hpp"
#include "mstirap/tomography.hpp"

namespace mstirap {

struct JobResult {
  Job job;
  TrajectoryRecord record;
  std::optional<MixedTrajectory> mixed;  ///< Lindblad runs
};

/// Pure or Lindblad evolution from initial_state(job). Lindblad records get
/// their star columns from the chi_d constellation. Throws ConfigError for
/// tomography jobs.
JobResult evolve_job(const Job& job);

struct TrajectorySummary {
  std::string name;
  double p0_final = 0.0, p1_final = 0.0, p2_final = 0.0;
  double fid_dark_final = 0.0;      ///< |<psi|D>|^2 or <D|rho|D> at t_end
  double infid_bright_final = 0.0;
  double min_abs_j = 0.0;
  double max_concurrence = 0.0;     ///< NaN rows skipped
  double max_p1 = 0.0;
  double norm_drift = 0.0;
  double trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  bool positivity_warning = false;
  double max_star_jump = 0.0;     ///< chi_d stars for Lindblad runs
  int clipped_samples = 0;
  std::optional<double> purity_final;
  std::optional<double> min_label_d_overlap;
};

TrajectorySummary summarize(const JobResult& result);

struct TomographyResult {
  Job job;
  ProcessMatrix clean;      ///< same drive, no decoherence
  ProcessMatrix decohered;  ///< job.rates
  ProcessComparison comparison;
};

/// Throws ConfigError unless job.kind is tomography.
TomographyResult run_tomography(const Job& job);

}  // namespace mstirap

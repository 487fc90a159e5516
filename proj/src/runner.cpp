#include "mstirap/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mstirap {

JobResult evolve_job(const Job& job) {
  job.validate();
  const QutritState psi0 = initial_state(job);
  switch (job.kind) {
    case RunKind::pure:
      return {job, evolve_pure(job.drive, psi0), std::nullopt};
    case RunKind::lindblad: {
      JobResult r{job, evolve_lindblad(job.drive, *job.rates, DensityMatrix::pure(psi0)), std::nullopt};
      r.mixed = mixed_trajectory(r.record);
      fill_mixed_metrics(r.record, *r.mixed);
      return r;
    }
    case RunKind::tomography:
      break;
  }
  throw ConfigError("job '" + job.name + "' is a tomography run; use the tomo command");
}

TrajectorySummary summarize(const JobResult& result) {
  const TrajectoryRecord& rec = result.record;
  const MetricRow& last = rec.final_metrics();
  TrajectorySummary s;
  s.name = result.job.name;
  s.p0_final = last.p0;
  s.p1_final = last.p1;
  s.p2_final = last.p2;
  s.fid_dark_final = last.fid_dark;
  s.infid_bright_final = last.infid_bright;
  s.min_abs_j = std::numeric_limits<double>::infinity();
  for (const MetricRow& m : rec.metrics) {
    s.min_abs_j = std::min(s.min_abs_j, m.j.norm());
    if (!std::isnan(m.concurrence)) s.max_concurrence = std::max(s.max_concurrence, m.concurrence);
    s.max_p1 = std::max(s.max_p1, m.p1);
  }
  s.norm_drift = rec.norm_drift;
  s.trace_drift = rec.trace_drift;
  s.min_eigenvalue = rec.min_eigenvalue;
  s.positivity_warning = rec.positivity_warning;
  s.max_star_jump = rec.max_star_jump;
  s.clipped_samples = rec.clipped_samples;
  if (result.mixed) {
    s.purity_final = result.mixed->purity.back();
    s.min_label_d_overlap = result.mixed->min_label_d_overlap;
    const auto& steps = result.mixed->steps;
    for (std::size_t k = 1; k < steps.size(); ++k) {
      const auto& a = steps[k - 1][EigenLabel::d].constellation;
      const auto& b = steps[k][EigenLabel::d].constellation;
      s.max_star_jump = std::max({s.max_star_jump, angular_distance(a.s1(), b.s1()), angular_distance(a.s2(), b.s2())});
    }
  }
  return s;
}

TomographyResult run_tomography(const Job& job) {
  job.validate();
  if (job.kind != RunKind::tomography) throw ConfigError("job '" + job.name + "' is not a tomography run");
  TomographyResult r{job, run_process(job.drive), run_process(job.drive, job.rates), {}};
  r.comparison = compare(r.clean, r.decohered);
  return r;
}

}  // namespace mstirap

#include "mstirap/sweep.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <mutex>

namespace mstirap {

namespace {

// Serializes FFTW planning.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::string value_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

DriveConfig with_parameter(DriveConfig cfg, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::delta: cfg.delta = units::from_mhz_over_2pi(value); break;
    case SweepParameter::ts: cfg.ts = units::from_ns(value); break;
    case SweepParameter::sigma: cfg.sigma = units::from_ns(value); break;
    case SweepParameter::amp: cfg.amp01 = cfg.amp12 = units::from_mhz_over_2pi(value); break;
  }
  return cfg;
}

Wiggle dominant_frequency(const std::vector<double>& samples, double dt) {
  const int n = static_cast<int>(samples.size());
  if (n < 4) throw std::invalid_argument("dominant_frequency needs at least 4 samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= n;

  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  }
  for (int i = 0; i < n; ++i) in[i] = samples[i] - mean;
  fftw_execute(plan);

  Wiggle w;
  w.bin_width_hz = 1.0 / (n * dt);
  double best = -1.0;
  for (int k = 1; k <= n / 2; ++k) {
    const double mag = std::hypot(out[k][0], out[k][1]);
    if (mag > best) {
      best = mag;
      w.bin = k;
    }
  }
  w.frequency_hz = w.bin * w.bin_width_hz;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return w;
}

double projection_area(const TrajectoryRecord& record) {
  if (record.metrics.empty()) return 0.0;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const MetricRow& m : record.metrics) {
    x0 = std::min(x0, m.j.jx);
    x1 = std::max(x1, m.j.jx);
    y0 = std::min(y0, m.j.jy);
    y1 = std::max(y1, m.j.jy);
  }
  return (x1 - x0) * (y1 - y0);
}

std::vector<SweepRow> run_sweep(const Job& base, const SweepSpec& spec, std::vector<JobResult>* results) {
  std::vector<Job> jobs;
  for (double v : spec.values) {
    Job j = base;
    j.drive = with_parameter(base.drive, spec.parameter, v);
    j.name = base.name + "-" + std::string(to_string(spec.parameter)) + "-" + value_tag(v);
    j.validate();
    jobs.push_back(std::move(j));
  }
  std::vector<std::future<JobResult>> pending;
  for (const Job& j : jobs) pending.push_back(std::async(std::launch::async, evolve_job, j));

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    JobResult r = pending[i].get();
    std::vector<double> jy;
    jy.reserve(r.record.metrics.size());
    for (const MetricRow& m : r.record.metrics) jy.push_back(m.j.jy);
    rows.push_back({spec.values[i], summarize(r), dominant_frequency(jy, r.job.drive.dt()), projection_area(r.record)});
    if (results != nullptr) results->push_back(std::move(r));
  }
  return rows;
}

}  // namespace mstirap

#pragma once

// One-parameter sweeps over a base job, with the wiggle and area measures
// used to compare two-photon detunings.

#include <vector>

#include "mstirap/presets.hpp"
#include "mstirap/runner.hpp"

namespace mstirap {

/// Sets the swept parameter; `value` is in config units (MHz/2pi for delta
/// and amp, ns for ts and sigma). `amp` sets both pulse amplitudes.
DriveConfig with_parameter(DriveConfig cfg, SweepParameter p, double value);

struct Wiggle {
  int bin = 0;                ///< dominant non-DC bin of the one-sided spectrum
  double frequency_hz = 0.0;  ///< bin * bin_width_hz
  double bin_width_hz = 0.0;  ///< 1 / (N dt)
};

/// Dominant frequency of the mean-subtracted samples. Needs at least 4 samples.
Wiggle dominant_frequency(const std::vector<double>& samples, double dt);

/// Bounding-box area of the (<Jx>, <Jy>) projection.
double projection_area(const TrajectoryRecord& record);

struct SweepRow {
  double value = 0.0;
  TrajectorySummary summary;
  Wiggle wiggle;  ///< of <Jy>
  double area = 0.0;
};

/// Evolves one job per value, concurrently. Rows follow the order of
/// spec.values; the evolved results are appended to `results` when given.
std::vector<SweepRow> run_sweep(const Job& base, const SweepSpec& spec, std::vector<JobResult>* results = nullptr);

}  // namespace mstirap

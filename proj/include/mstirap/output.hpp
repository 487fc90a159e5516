#pragma once

// Plot-ready serialization of trajectories, summaries and process matrices.
// Numbers carry 12 significant digits; NaN is written as "nan" in CSV and
// null in JSON.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mstirap/runner.hpp"
#include "mstirap/sweep.hpp"

namespace mstirap {

enum class OutputFormat { csv, json };

/// Throws ConfigError on anything but "csv" or "json".
OutputFormat output_format_from_string(std::string_view name);
std::string_view extension(OutputFormat f);

inline constexpr const char* kMetricsVersion = "mstirap-metrics-v1";

/// "%.12g", with "nan" and "inf"/"-inf" spelled out.
std::string format_number(double v);
/// v rounded to 12 significant digits, or null when not finite.
nlohmann::json json_number(double v);

/// time_ns, p0, p1, p2, theta_mix, eta, concurrence, jx, jy, jz, fid_dark,
/// infid_bright, star1_{x,y,z}, star2_{x,y,z}; mixed runs append
/// lambda_{d,e,f} and {d,e,f}_star{1,2}_{x,y,z} (unit-sphere coordinates;
/// the lambda columns are the sphere radii).
std::vector<std::string> metric_columns(bool mixed);
std::vector<std::vector<double>> metric_table(const JobResult& result);

std::string metrics_csv(const JobResult& result);
nlohmann::json metrics_json(const JobResult& result);
nlohmann::json summary_json(const TrajectorySummary& s);
nlohmann::json process_json(const ProcessMatrix& p);
nlohmann::json tomography_json(const TomographyResult& r);
std::string sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(SweepParameter p, const std::vector<SweepRow>& rows);

/// Creates parent directories. Throws ConfigError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);
/// The job's metrics file, named <job.name>.<ext>.
std::filesystem::path write_metrics(const std::filesystem::path& dir, const JobResult& result, OutputFormat f);

}  // namespace mstirap

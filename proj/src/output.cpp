#include "mstirap/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mstirap {

namespace {

void push_vec(std::vector<double>& row, const Vec3& v) {
  row.push_back(v.x());
  row.push_back(v.y());
  row.push_back(v.z());
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? json_number(*v) : nlohmann::json(nullptr);
}

nlohmann::json complex_matrix(const Mat9& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < 9; ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (int j = 0; j < 9; ++j) {
      rr.push_back(json_number(m(i, j).real()));
      ri.push_back(json_number(m(i, j).imag()));
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view extension(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

std::vector<std::string> metric_columns(bool mixed) {
  std::vector<std::string> cols{"time_ns", "p0",  "p1",  "p2",       "theta_mix",    "eta",
                                "concurrence", "jx", "jy", "jz", "fid_dark", "infid_bright"};
  for (const char* s : {"star1", "star2"}) {
    for (const char* a : {"x", "y", "z"}) cols.push_back(std::string(s) + "_" + a);
  }
  if (mixed) {
    for (const char* l : {"d", "e", "f"}) cols.push_back(std::string("lambda_") + l);
    for (const char* l : {"d", "e", "f"}) {
      for (const char* s : {"star1", "star2"}) {
        for (const char* a : {"x", "y", "z"}) cols.push_back(std::string(l) + "_" + s + "_" + a);
      }
    }
  }
  return cols;
}

std::vector<std::vector<double>> metric_table(const JobResult& result) {
  const auto& metrics = result.record.metrics;
  std::vector<std::vector<double>> rows;
  rows.reserve(metrics.size());
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    const MetricRow& m = metrics[k];
    std::vector<double> row{units::to_ns(m.t), m.p0,   m.p1,   m.p2,       m.theta_mix, m.eta,
                            m.concurrence,     m.j.jx, m.j.jy, m.j.jz, m.fid_dark,  m.infid_bright};
    push_vec(row, m.star1);
    push_vec(row, m.star2);
    if (result.mixed) {
      const SpectralTriple& t = result.mixed->steps[k];
      for (const auto& w : t.parts) row.push_back(w.lambda);
      for (const auto& w : t.parts) {
        push_vec(row, w.constellation.s1().cart());
        push_vec(row, w.constellation.s2().cart());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string metrics_csv(const JobResult& result) {
  return csv(metric_columns(result.mixed.has_value()), metric_table(result));
}

nlohmann::json metrics_json(const JobResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : metric_table(result)) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(json_number(v));
    rows.push_back(std::move(r));
  }
  return {{"version", kMetricsVersion},
          {"name", result.job.name},
          {"columns", metric_columns(result.mixed.has_value())},
          {"rows", std::move(rows)}};
}

nlohmann::json summary_json(const TrajectorySummary& s) {
  return {{"name", s.name},
          {"p0_final", json_number(s.p0_final)},
          {"p1_final", json_number(s.p1_final)},
          {"p2_final", json_number(s.p2_final)},
          {"fid_dark_final", json_number(s.fid_dark_final)},
          {"infid_bright_final", json_number(s.infid_bright_final)},
          {"min_abs_j", json_number(s.min_abs_j)},
          {"max_concurrence", json_number(s.max_concurrence)},
          {"max_p1", json_number(s.max_p1)},
          {"norm_drift", json_number(s.norm_drift)},
          {"trace_drift", json_number(s.trace_drift)},
          {"min_eigenvalue", json_number(s.min_eigenvalue)},
          {"positivity_warning", s.positivity_warning},
          {"max_star_jump", json_number(s.max_star_jump)},
          {"clipped_samples", s.clipped_samples},
          {"purity_final", optional_number(s.purity_final)},
          {"min_label_d_overlap", optional_number(s.min_label_d_overlap)}};
}

nlohmann::json process_json(const ProcessMatrix& p) {
  return {{"basis", p.basis},
          {"basis_elements", operator_basis_names()},
          {"inputs", p.inputs},
          {"input_states", input_basis_labels()},
          {"raw_trace", json_number(p.raw_trace)},
          {"min_eigenvalue", json_number(p.min_eigenvalue)},
          {"completely_positive", p.completely_positive},
          {"chi", complex_matrix(p.chi)}};
}

nlohmann::json tomography_json(const TomographyResult& r) {
  return {{"name", r.job.name},
          {"clean", process_json(r.clean)},
          {"decohered", process_json(r.decohered)},
          {"comparison",
           {{"fidelity", json_number(r.comparison.fidelity)},
            {"process_fidelity", json_number(r.comparison.process_fidelity)},
            {"trace_distance", json_number(r.comparison.trace_distance)},
            {"definition_sensitive", r.comparison.definition_sensitive}}}};
}

std::string sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows) {
  const std::vector<std::string> header{std::string(to_string(p)), "p0_final", "p1_final", "p2_final",
                                        "fid_dark_final", "min_abs_j", "max_concurrence", "max_p1",
                                        "wiggle_bin", "wiggle_mhz", "bin_width_mhz", "jxy_area"};
  std::vector<std::vector<double>> table;
  for (const SweepRow& r : rows) {
    table.push_back({r.value, r.summary.p0_final, r.summary.p1_final, r.summary.p2_final,
                     r.summary.fid_dark_final, r.summary.min_abs_j, r.summary.max_concurrence, r.summary.max_p1,
                     static_cast<double>(r.wiggle.bin), r.wiggle.frequency_hz / 1e6, r.wiggle.bin_width_hz / 1e6,
                     r.area});
  }
  return csv(header, table);
}

nlohmann::json sweep_json(SweepParameter p, const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    out.push_back({{"value", json_number(r.value)},
                   {"summary", summary_json(r.summary)},
                   {"wiggle_bin", r.wiggle.bin},
                   {"wiggle_mhz", json_number(r.wiggle.frequency_hz / 1e6)},
                   {"bin_width_mhz", json_number(r.wiggle.bin_width_hz / 1e6)},
                   {"jxy_area", json_number(r.area)}});
  }
  return {{"parameter", to_string(p)}, {"rows", out}};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size()))) {
    throw ConfigError("cannot write " + path.string());
  }
}

std::filesystem::path write_metrics(const std::filesystem::path& dir, const JobResult& result, OutputFormat f) {
  const auto path = dir / (result.job.name + "." + std::string(extension(f)));
  write_file(path, f == OutputFormat::csv ? metrics_csv(result) : metrics_json(result).dump(1) + "\n");
  return path;
}

}  // namespace mstirap

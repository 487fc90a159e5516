#include "mstirap/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <future>

namespace mstirap {

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(1) + "\n"; }

void write_job_config(const std::filesystem::path& dir, const Job& job) {
  write_file(dir / (job.name + ".cfg"), serialize_job(job));
}

nlohmann::json summary_header(const ResolvedRun& run) {
  return {{"version", kMetricsVersion}, {"run", run.label}};
}

int write_sweep(const RunOptions& opts, const ResolvedRun& run, const Job& base, const SweepSpec& spec,
                std::ostream& log) {
  std::vector<JobResult> results;
  const std::vector<SweepRow> rows = run_sweep(base, spec, &results);
  for (const JobResult& r : results) {
    log << "wrote " << write_metrics(opts.out, r, opts.format).string() << '\n';
    write_job_config(opts.out, r.job);
  }
  const auto table = opts.out / ("sweep." + std::string(extension(opts.format)));
  write_file(table, opts.format == OutputFormat::csv ? sweep_csv(spec.parameter, rows)
                                                     : dump(sweep_json(spec.parameter, rows)));
  log << "wrote " << table.string() << '\n';

  nlohmann::json summary = summary_header(run);
  summary["sweep"] = sweep_json(spec.parameter, rows);
  write_file(opts.out / "summary.json", dump(summary));
  log << "wrote " << (opts.out / "summary.json").string() << '\n';
  return kExitOk;
}

int execute(const RunOptions& opts, const ResolvedRun& run, std::ostream& log) {
  nlohmann::json summary = summary_header(run);
  summary["trajectories"] = nlohmann::json::array();
  summary["tomography"] = nlohmann::json::array();
  for (const Job& job : run.jobs) {
    write_job_config(opts.out, job);
    if (job.kind == RunKind::tomography) {
      const TomographyResult t = run_tomography(job);
      const auto path = opts.out / (job.name + ".json");
      write_file(path, dump(tomography_json(t)));
      log << "wrote " << path.string() << '\n';
      nlohmann::json entry = tomography_json(t)["comparison"];
      entry["name"] = job.name;
      summary["tomography"].push_back(entry);
      continue;
    }
    const JobResult r = evolve_job(job);
    log << "wrote " << write_metrics(opts.out, r, opts.format).string() << '\n';
    if (r.record.positivity_warning) log << "warning: " << job.name << ": density matrix lost positivity\n";
    if (r.record.clipped_samples > 0) {
      log << "warning: " << job.name << ": " << r.record.clipped_samples << " samples with Omega02 floored at 0\n";
    }
    summary["trajectories"].push_back(summary_json(summarize(r)));
  }
  write_file(opts.out / "summary.json", dump(summary));
  log << "wrote " << (opts.out / "summary.json").string() << '\n';
  return kExitOk;
}

}  // namespace

ResolvedRun resolve(const RunOptions& opts) {
  if (opts.preset.empty() == opts.config.empty()) throw ConfigError("give exactly one of --preset and --config");
  ResolvedRun run;
  if (!opts.preset.empty()) {
    const Preset& p = find_preset(opts.preset);
    run = {p.name, p.jobs, p.sweep};
  } else {
    run = {opts.config.stem().string(), {load_job(opts.config)}, std::nullopt};
  }
  for (Job& j : run.jobs) {
    if (opts.steps) j.drive.n_steps = *opts.steps;
    if (opts.stark) j.drive.stark_correction = *opts.stark;
    j.validate();
  }
  return run;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw ConfigError("bad sweep value '" + item + "'");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return values;
}

int cmd_run(const RunOptions& opts, std::ostream& log) {
  const ResolvedRun run = resolve(opts);
  if (run.sweep) return write_sweep(opts, run, run.jobs.front(), *run.sweep, log);
  return execute(opts, run, log);
}

int cmd_sweep(const RunOptions& opts, const std::string& parameter, const std::optional<std::string>& values,
              std::ostream& log) {
  const ResolvedRun run = resolve(opts);
  SweepSpec spec{sweep_parameter_from_string(parameter), {}};
  if (values) {
    spec.values = parse_value_list(*values);
  } else if (run.sweep && run.sweep->parameter == spec.parameter) {
    spec.values = run.sweep->values;
  } else {
    throw ConfigError("no sweep values given; use --values");
  }
  const Job& base = run.jobs.front();
  if (base.kind == RunKind::tomography) throw ConfigError("tomography runs cannot be swept");
  return write_sweep(opts, run, base, spec, log);
}

int cmd_tomo(const RunOptions& opts, std::ostream& log) {
  ResolvedRun run = resolve(opts);
  std::erase_if(run.jobs, [](const Job& j) { return j.kind != RunKind::tomography; });
  if (run.jobs.empty()) throw ConfigError("no tomography runs in " + run.label);
  return execute(opts, run, log);
}

int cmd_verify(const VerifyOptions& opts, const std::optional<std::filesystem::path>& out_file, std::ostream& report) {
  const VerifyReport r = run_verify(opts);
  const std::string text = dump(r.to_json());
  if (out_file) {
    write_file(*out_file, text);
  } else {
    report << text;
  }
  return r.pass() ? kExitOk : kExitVerify;
}

int cmd_presets(const std::optional<std::string>& which, std::ostream& out) {
  if (which) {
    const Preset& p = find_preset(*which);
    for (const Job& j : p.jobs) out << serialize_job(j) << '\n';
    return kExitOk;
  }
  std::size_t width = 0;
  for (const Preset& p : all_presets()) width = std::max(width, p.name.size());
  for (const Preset& p : all_presets()) {
    out << p.name << std::string(width + 2 - p.name.size(), ' ') << p.description << '\n';
  }
  return kExitOk;
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstabilityError& e) {
    err << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const TomographyError& e) {
    err << "numerical instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace mstirap

#include <iostream>

#include <CLI11.hpp>

#include "mstirap/app.hpp"

using namespace mstirap;

namespace {

void add_run_options(CLI::App* cmd, RunOptions& opts, std::string& format, std::string& stark) {
  cmd->add_option("--preset", opts.preset, "named preset (see `mstirap presets`)");
  cmd->add_option("--config", opts.config, "config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out, "output directory")->capture_default_str();
  cmd->add_option("--format", format, "csv or json")->capture_default_str();
  cmd->add_option("--steps", opts.steps, "override the number of output time steps");
  cmd->add_option("--stark", stark, "override the ac Stark phase correction (on|off)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana-sphere simulations of qutrit STIRAP and superadiabatic STIRAP"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string format = "csv";
  std::string stark;

  auto* run = app.add_subcommand("run", "run a preset or config file");
  add_run_options(run, opts, format, stark);

  auto* sweep = app.add_subcommand("sweep", "one-parameter sweep of a preset or config file");
  add_run_options(sweep, opts, format, stark);
  std::string parameter = "delta";
  std::optional<std::string> values;
  sweep->add_option("--param", parameter, "delta, ts, sigma or amp")->capture_default_str();
  sweep->add_option("--values", values, "comma-separated values in config units (MHz/2pi or ns)");

  auto* tomo = app.add_subcommand("tomo", "clean and decohered process tomography");
  add_run_options(tomo, opts, format, stark);

  auto* verify = app.add_subcommand("verify", "run the invariant and oracle suite");
  VerifyOptions vopts;
  std::optional<std::filesystem::path> report;
  verify->add_option("--seed", vopts.seed, "random seed")->capture_default_str();
  verify->add_option("--states", vopts.n_states, "random pure states per check")->capture_default_str();
  verify->add_option("--perturb", vopts.perturb, "test hook: bump the constant of one named check");
  verify->add_option("--out", report, "write the JSON report here instead of stdout");

  auto* list = app.add_subcommand("presets", "list presets, or print one as config text");
  std::optional<std::string> dump;
  list->add_option("name", dump, "preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  return run_guarded(
      [&]() -> int {
        opts.format = output_format_from_string(format);
        if (!stark.empty()) {
          if (stark != "on" && stark != "off") throw ConfigError("--stark expects on or off");
          opts.stark = stark == "on";
        }
        if (*run) return cmd_run(opts, std::clog);
        if (*sweep) return cmd_sweep(opts, parameter, values, std::clog);
        if (*tomo) return cmd_tomo(opts, std::clog);
        if (*verify) return cmd_verify(vopts, report, std::cout);
        return cmd_presets(dump, std::cout);
      },
      std::cerr);
}

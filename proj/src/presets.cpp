#include "mstirap/presets.hpp"

namespace mstirap {

namespace {

Job job(std::string name, DriveConfig drive, RunKind kind = RunKind::pure,
        InitialState initial = InitialState::ground) {
  Job j;
  j.name = std::move(name);
  j.drive = drive;
  j.kind = kind;
  j.initial = initial;
  if (kind != RunKind::pure) j.rates = DecoherenceRates::transmon();
  return j;
}

DriveConfig sim(DriveMode mode) { return presets::simulation_grid(mode); }

DriveConfig fig1(DriveMode mode) {
  DriveConfig c = presets::fig1_grid();
  c.mode = mode;
  return c;
}

DriveConfig stark(bool on) {
  DriveConfig c = sim(DriveMode::twophoton);
  c.stark_correction = on;
  return c;
}

std::vector<Preset> build() {
  const double delta = units::to_mhz_over_2pi(DriveConfig{}.delta);
  std::vector<Preset> p;
  p.push_back({"stirap-fig1", "resonant STIRAP on the short-pulse grid",
               {job("stirap-fig1", fig1(DriveMode::stirap))}, std::nullopt});
  p.push_back({"cd-ideal-fig1", "STIRAP plus the exact counterdiabatic 0-2 drive on the short-pulse grid",
               {job("cd-ideal-fig1", fig1(DriveMode::cd_ideal))}, std::nullopt});
  p.push_back({"stirap-fig3a", "resonant STIRAP, 35 ns pulses",
               {job("stirap-fig3a", sim(DriveMode::stirap))}, std::nullopt});
  p.push_back({"twophoton-fig3c", "two-photon drive alone, constant phase",
               {job("twophoton-fig3c", sim(DriveMode::twophoton))}, std::nullopt});
  p.push_back({"twophoton-fig3d", "two-photon drive at detunings delta/2, delta, 2 delta",
               {job("twophoton-fig3d", sim(DriveMode::twophoton))},
               SweepSpec{SweepParameter::delta, {delta / 2.0, delta, 2.0 * delta}}});
  p.push_back({"stark-fig4", "two-photon drive with and without the ac Stark phase correction",
               {job("twophoton-stark-off", stark(false)), job("twophoton-stark-on", stark(true))}, std::nullopt});
  p.push_back({"sastirap-fig5", "saSTIRAP with the STIRAP, two-photon and ideal-following references",
               {job("sastirap", sim(DriveMode::sastirap)), job("stirap", sim(DriveMode::stirap)),
                job("twophoton", sim(DriveMode::twophoton)),
                job("ideal-following", sim(DriveMode::cd_ideal), RunKind::pure, InitialState::dark)},
               std::nullopt});
  p.push_back({"cd-ideal", "exact counterdiabatic drive from the dark state, 35 ns pulses",
               {job("cd-ideal", sim(DriveMode::cd_ideal), RunKind::pure, InitialState::dark)}, std::nullopt});
  p.push_back({"lindblad-sastirap-fig7", "saSTIRAP with transmon relaxation and dephasing",
               {job("lindblad-sastirap-fig7", sim(DriveMode::sastirap), RunKind::lindblad)}, std::nullopt});
  p.push_back({"lindblad-stirap", "STIRAP with transmon relaxation and dephasing",
               {job("lindblad-stirap", sim(DriveMode::stirap), RunKind::lindblad)}, std::nullopt});
  p.push_back({"tomography-quartet", "clean and decohered process matrices for STIRAP and saSTIRAP",
               {job("tomography-stirap", sim(DriveMode::stirap), RunKind::tomography),
                job("tomography-sastirap", sim(DriveMode::sastirap), RunKind::tomography)},
               std::nullopt});
  return p;
}

}  // namespace

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::delta: return "delta";
    case SweepParameter::ts: return "ts";
    case SweepParameter::sigma: return "sigma";
    case SweepParameter::amp: return "amp";
  }
  return "?";
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
  for (auto p : {SweepParameter::delta, SweepParameter::ts, SweepParameter::sigma, SweepParameter::amp}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(name) + "' (expected delta, ts, sigma or amp)");
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = build();
  return presets;
}

const Preset& find_preset(std::string_view name) {
  for (const Preset& p : all_presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const Preset& p : all_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + std::string(name) + "'; known presets: " + known);
}

}  // namespace mstirap

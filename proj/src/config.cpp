#include "mstirap/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace mstirap {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  return std::nullopt;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Shortest decimal d with from_unit(d) == v exactly.
std::string in_units(double v, double (*to_unit)(double), double (*from_unit)(double)) {
  const double d = to_unit(v);
  char buf[40];
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, d);
    const auto back = parse_double(buf);
    if (back && from_unit(*back) == v) return shortest(*back);
  }
  return shortest(d);
}

double identity(double v) { return v; }

struct Field {
  std::function<void(Job&, std::string_view)> set;  // throws std::invalid_argument
  std::function<std::string(const Job&)> get;
};

double need_double(std::string_view v) {
  const auto d = parse_double(v);
  if (!d) throw std::invalid_argument("expected a finite number");
  return *d;
}

Field unit_field(double DriveConfig::*member, double (*to_unit)(double), double (*from_unit)(double)) {
  return {[=](Job& j, std::string_view v) { j.drive.*member = from_unit(need_double(v)); },
          [=](const Job& j) { return in_units(j.drive.*member, to_unit, from_unit); }};
}

Field rate_field(double DecoherenceRates::*member) {
  return {[=](Job& j, std::string_view v) { (*j.rates).*member = units::from_per_us(need_double(v)); },
          [=](const Job& j) { return in_units((*j.rates).*member, units::to_per_us, units::from_per_us); }};
}

using FieldTable = std::vector<std::pair<std::string, Field>>;

const FieldTable& run_fields() {
  static const FieldTable t{
      {"name", {[](Job& j, std::string_view v) { j.name = std::string(v); }, [](const Job& j) { return j.name; }}},
      {"kind",
       {[](Job& j, std::string_view v) {
          if (v == "pure") j.kind = RunKind::pure;
          else if (v == "lindblad") j.kind = RunKind::lindblad;
          else if (v == "tomography") j.kind = RunKind::tomography;
          else throw std::invalid_argument("expected pure, lindblad or tomography");
        },
        [](const Job& j) { return std::string(to_string(j.kind)); }}},
      {"initial",
       {[](Job& j, std::string_view v) {
          if (v == "ground") j.initial = InitialState::ground;
          else if (v == "dark") j.initial = InitialState::dark;
          else throw std::invalid_argument("expected ground or dark");
        },
        [](const Job& j) { return std::string(to_string(j.initial)); }}},
  };
  return t;
}

const FieldTable& drive_fields() {
  using units::from_mhz_over_2pi;
  using units::from_ns;
  using units::to_mhz_over_2pi;
  using units::to_ns;
  static const FieldTable t{
      {"mode",
       {[](Job& j, std::string_view v) {
          try {
            j.drive.mode = drive_mode_from_string(v);
          } catch (const ConfigError&) {
            throw std::invalid_argument("expected stirap, twophoton, sastirap or cd_ideal");
          }
        },
        [](const Job& j) { return std::string(to_string(j.drive.mode)); }}},
      {"sigma_ns", unit_field(&DriveConfig::sigma, to_ns, from_ns)},
      {"ts_ns", unit_field(&DriveConfig::ts, to_ns, from_ns)},
      {"amp01_mhz_over_2pi", unit_field(&DriveConfig::amp01, to_mhz_over_2pi, from_mhz_over_2pi)},
      {"amp12_mhz_over_2pi", unit_field(&DriveConfig::amp12, to_mhz_over_2pi, from_mhz_over_2pi)},
      {"phi01_rad", unit_field(&DriveConfig::phi01, identity, identity)},
      {"phi12_rad", unit_field(&DriveConfig::phi12, identity, identity)},
      {"phi02_rad", unit_field(&DriveConfig::phi02, identity, identity)},
      {"delta_mhz_over_2pi", unit_field(&DriveConfig::delta, to_mhz_over_2pi, from_mhz_over_2pi)},
      {"t_start_ns", unit_field(&DriveConfig::t_start, to_ns, from_ns)},
      {"t_end_ns", unit_field(&DriveConfig::t_end, to_ns, from_ns)},
      {"n_steps",
       {[](Job& j, std::string_view v) {
          const auto n = parse_int(v);
          if (!n) throw std::invalid_argument("expected an integer");
          j.drive.n_steps = *n;
        },
        [](const Job& j) { return std::to_string(j.drive.n_steps); }}},
      {"substeps",
       {[](Job& j, std::string_view v) {
          const auto n = parse_int(v);
          if (!n) throw std::invalid_argument("expected an integer");
          j.drive.substeps = *n;
        },
        [](const Job& j) { return std::to_string(j.drive.substeps); }}},
      {"stark_correction",
       {[](Job& j, std::string_view v) {
          const auto b = parse_bool(v);
          if (!b) throw std::invalid_argument("expected on or off");
          j.drive.stark_correction = *b;
        },
        [](const Job& j) { return std::string(j.drive.stark_correction ? "on" : "off"); }}},
  };
  return t;
}

const FieldTable& decoherence_fields() {
  static const FieldTable t{
      {"gamma10_per_us", rate_field(&DecoherenceRates::gamma10)},
      {"gamma21_per_us", rate_field(&DecoherenceRates::gamma21)},
      {"gphi10_per_us", rate_field(&DecoherenceRates::gphi10)},
      {"gphi21_per_us", rate_field(&DecoherenceRates::gphi21)},
      {"gphi20_per_us", rate_field(&DecoherenceRates::gphi20)},
  };
  return t;
}

const FieldTable* section_fields(std::string_view section) {
  if (section == "run") return &run_fields();
  if (section == "drive") return &drive_fields();
  if (section == "decoherence") return &decoherence_fields();
  return nullptr;
}

}  // namespace

std::string_view to_string(RunKind kind) {
  switch (kind) {
    case RunKind::pure: return "pure";
    case RunKind::lindblad: return "lindblad";
    case RunKind::tomography: return "tomography";
  }
  return "?";
}

std::string_view to_string(InitialState initial) {
  return initial == InitialState::dark ? "dark" : "ground";
}

void Job::validate() const {
  drive.validate();
  if (rates) rates->validate();
  if (kind == RunKind::pure && rates) throw ConfigError("pure runs take no [decoherence] section");
  if (kind != RunKind::pure && !rates) {
    throw ConfigError(std::string(to_string(kind)) + " runs need a [decoherence] section");
  }
  if (name.empty() || name.find_first_of("/\\#; \t") != std::string::npos) {
    throw ConfigError("run name must be non-empty without whitespace, path separators, '#' or ';'");
  }
}

QutritState initial_state(const Job& job) {
  if (job.initial == InitialState::dark) return dark_state(mixing_angle(job.drive, job.drive.t_start).theta);
  return QutritState::basis(0);
}

ConfigParseError::ConfigParseError(std::string source, int line, std::string field, const std::string& problem)
    : ConfigError(source + ":" + std::to_string(line) + ": " + (field.empty() ? "" : field + ": ") + problem),
      line_(line),
      field_(std::move(field)) {}

Job parse_job(std::string_view text, std::string_view source) {
  Job job;
  const std::string src(source);
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParseError(src, line_no, "", "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section_fields(section) == nullptr) throw ConfigParseError(src, line_no, section, "unknown section");
      if (!seen.insert("[" + section + "]").second) throw ConfigParseError(src, line_no, section, "duplicate section");
      if (section == "decoherence") job.rates = DecoherenceRates{};
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigParseError(src, line_no, "", "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigParseError(src, line_no, key, "key outside of any section");
    const std::string qualified = section + "." + key;
    const FieldTable& fields = *section_fields(section);
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.first == key; });
    if (it == fields.end()) throw ConfigParseError(src, line_no, qualified, "unknown key");
    if (!seen.insert(qualified).second) throw ConfigParseError(src, line_no, qualified, "duplicate key");
    if (value.empty()) throw ConfigParseError(src, line_no, qualified, "missing value");
    try {
      it->second.set(job, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigParseError(src, line_no, qualified, std::string(e.what()) + ", got '" + std::string(value) + "'");
    }
  }
  job.validate();
  return job;
}

Job load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job(buf.str(), path.string());
}

std::string serialize_job(const Job& job) {
  std::ostringstream out;
  const auto section = [&](const char* name, const FieldTable& fields) {
    out << '[' << name << "]\n";
    for (const auto& [key, field] : fields) out << key << " = " << field.get(job) << '\n';
  };
  section("run", run_fields());
  section("drive", drive_fields());
  if (job.rates) section("decoherence", decoherence_fields());
  return out.str();
}

}  // namespace mstirap

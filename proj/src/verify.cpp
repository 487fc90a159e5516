#include "mstirap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "mstirap/config.hpp"
#include "mstirap/mixedrep.hpp"
#include "mstirap/presets.hpp"
#include "mstirap/random.hpp"
#include "mstirap/tomography.hpp"

namespace mstirap {

namespace {

constexpr double kBump = 1e-3;

struct Context {
  const VerifyOptions& opts;
  Rng rng;
  double bump(const char* check) const { return opts.perturb == check ? kBump : 0.0; }
};

// Polynomial coefficients of an unnormalized amplitude vector.
MajoranaPolynomial raw_polynomial(const Amp3& c, double sqrt2) {
  return {c(0) / sqrt2, -c(1), c(2) / sqrt2};
}

double coeff_diff(const MajoranaPolynomial& a, const MajoranaPolynomial& b) {
  return std::max({std::abs(a.a0 - b.a0), std::abs(a.a1 - b.a1), std::abs(a.a2 - b.a2)});
}

Eigen::Matrix2cd reduced_state(const MajoranaConstellation& c) {
  return symmetrized_qubits(c).reduced_density_matrix();
}

std::vector<CheckResult> representation(Context& ctx) {
  double round_trip = 0, geometric = 0, purity = 0, diff_ops = 0;
  const double rt_bump = ctx.bump("star-round-trip");
  const double geo_bump = ctx.bump("spin-geometric");
  const double conc_bump = ctx.bump("concurrence-purity");
  const double sqrt2 = std::sqrt(2.0) * (1.0 + ctx.bump("differential-operators"));
  for (int i = 0; i < ctx.opts.n_states; ++i) {
    const QutritState psi = random_state(ctx.rng);
    const MajoranaConstellation c = stars_of(psi);
    const MajoranaConstellation c_used(MajoranaStar(c.s1().theta() * (1.0 + rt_bump), c.s1().phi()), c.s2());
    round_trip = std::max(round_trip, 1.0 - state_of(c_used).fidelity(psi));

    const Vec3 geo = spin_average_geometric(c).vec() * (1.0 + geo_bump);
    geometric = std::max(geometric, (geo - spin_average(psi).vec()).norm());

    const double cp = concurrence_from_purity(reduced_state(c)) * (1.0 + conc_bump);
    purity = std::max(purity, std::abs(cp - concurrence(c)));

    const MajoranaPolynomial p = raw_polynomial(psi.amplitudes(), sqrt2);
    const Mat3 ops[3] = {spin_x(), spin_y(), spin_z()};
    const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
    for (int a = 0; a < 3; ++a) {
      const MajoranaPolynomial expected = raw_polynomial(ops[a] * psi.amplitudes(), std::sqrt(2.0));
      diff_ops = std::max(diff_ops, coeff_diff(j_operator_on_polynomial(axes[a], p), expected));
    }
  }
  return {{"star-round-trip", round_trip, 1e-9, false},
          {"spin-geometric", geometric, 1e-10, false},
          {"concurrence-purity", purity, 1e-10, false},
          {"differential-operators", diff_ops, 1e-12, false}};
}

std::vector<CheckResult> drive(Context& ctx) {
  const DriveConfig cfg = presets::simulation_grid(DriveMode::stirap);
  std::uniform_real_distribution<double> when(cfg.t_start, cfg.t_end);

  // R-frame: R^+ H0 R = (Omega/2)(sin theta Jx + cos theta Jy), R^+ Hcd R = -(Omega02/2) Jz.
  const double rf_bump = ctx.bump("r-frame");
  const Mat3 r = r_frame();
  double rframe = 0;
  for (int i = 0; i < 200; ++i) {
    const double t = when(ctx.rng);
    const Envelopes e = envelopes(cfg, t);
    const MixingAngle m = mixing_angle(cfg, t);
    const double omega = std::hypot(e.omega01, e.omega12) * (1.0 + rf_bump);
    const Mat3 h0 = r.adjoint() * h_stirap(cfg, t).h * r;
    const Mat3 want0 = 0.5 * omega * (std::sin(m.theta) * spin_x() + std::cos(m.theta) * spin_y());
    const Mat3 hcd = r.adjoint() * h_cd_ideal(cfg, t).h * r;
    const Mat3 wantcd = -m.theta_dot * spin_z();
    const double scale = std::max(omega, 1.0);
    rframe = std::max({rframe, (h0 - want0).norm() / scale, (hcd - wantcd).norm() / std::max(std::abs(m.theta_dot), 1.0),
                       r_frame_check(cfg, t).dark_root});
  }

  double herm = 0;
  const double herm_bump = ctx.bump("hermiticity");
  for (DriveMode mode : {DriveMode::stirap, DriveMode::twophoton, DriveMode::sastirap, DriveMode::cd_ideal}) {
    DriveConfig c = presets::simulation_grid(mode);
    for (bool stark : {false, true}) {
      c.stark_correction = stark;
      for (int k = 0; k <= c.n_steps; k += 7) {
        Mat3 h = hamiltonian(c, c.time_at(k)).h;
        h(0, 1) *= 1.0 + herm_bump;
        herm = std::max(herm, hermiticity_residual(h));
      }
    }
  }

  // Central differences with a 1 ps step, restricted to where theta moves.
  const double fd_bump = ctx.bump("theta-dot-fd");
  const double h = 1e-12;
  double fd = 0, nac = 0;
  std::uniform_real_distribution<double> central(cfg.ts / 2.0 - 3.0 * cfg.sigma, cfg.ts / 2.0 + 3.0 * cfg.sigma);
  for (int i = 0; i < 200; ++i) {
    const double t = central(ctx.rng);
    const double exact = mixing_angle(cfg, t).theta_dot;
    const double numeric =
        (mixing_angle(cfg, t + h).theta - mixing_angle(cfg, t - h).theta) / (2.0 * h) * (1.0 + fd_bump);
    fd = std::max(fd, std::abs(numeric - exact) / std::abs(exact));

    const Amp3 dd = (dark_state(mixing_angle(cfg, t + h).theta).amplitudes() -
                     dark_state(mixing_angle(cfg, t - h).theta).amplitudes()) /
                    (2.0 * h);
    const auto [np, nm] = bright_states(mixing_angle(cfg, t).theta);
    const double want = std::abs(exact) / std::sqrt(2.0) * (1.0 + ctx.bump("nonadiabatic-coupling"));
    nac = std::max({nac, std::abs(std::abs(np.amplitudes().dot(dd)) - want) / want,
                    std::abs(std::abs(nm.amplitudes().dot(dd)) - want) / want});
  }

  // Closed-form Stark phases against composite Simpson quadrature of the shifts.
  DriveConfig sc = presets::simulation_grid(DriveMode::twophoton);
  sc.stark_correction = true;
  const double q_bump = ctx.bump("stark-quadrature");
  const int n = 20000;
  const double dt = (sc.t_end - sc.t_start) / n;
  double acc[3] = {0, 0, 0};
  double stark = 0;
  const auto eps = [&](double t) {
    const StarkShifts s = stark_shifts(sc, t);
    return std::array<double, 3>{s.eps01 * (1.0 + q_bump), s.eps12, s.eps02};
  };
  for (int k = 0; k < n; k += 2) {
    const double t0 = sc.t_start + k * dt;
    const auto a = eps(t0), b = eps(t0 + dt), c = eps(t0 + 2 * dt);
    for (int j = 0; j < 3; ++j) acc[j] += dt / 3.0 * (a[j] + 4.0 * b[j] + c[j]);
    const DrivePhases ph = stark_phases(sc, t0 + 2 * dt);
    stark = std::max({stark, std::abs(ph.phi01 - sc.phi01 - acc[0]), std::abs(ph.phi12 - sc.phi12 - acc[1]),
                      std::abs(ph.phi02 - sc.phi02 - acc[2])});
  }

  return {{"r-frame", rframe, 1e-10, false},
          {"hermiticity", herm, 1e-12, false},
          {"theta-dot-fd", fd, 1e-6, false},
          {"nonadiabatic-coupling", nac, 1e-6, false},
          {"stark-quadrature", stark, 1e-8, false}};
}

std::vector<CheckResult> dynamics(Context& ctx) {
  // Constant-amplitude pi pulse on 0-1: sigma far longer than the pulse.
  DriveConfig rabi;
  rabi.sigma = 1.0;
  rabi.ts = 0.0;
  rabi.amp01 = units::from_mhz_over_2pi(25.0);
  rabi.amp12 = 0.0;
  rabi.t_start = 0.0;
  rabi.t_end = kPi / rabi.amp01 * (1.0 + ctx.bump("rabi-pi-pulse"));
  rabi.n_steps = 2000;
  const double rabi_err = 1.0 - evolve_pure(rabi, QutritState::basis(0)).final_metrics().p1;

  // Free relaxation of |1> and of the 0-1 coherence.
  DecoherenceRates rates = DecoherenceRates::transmon();
  const TimeGrid grid{0.0, 2e-6, 4000, 1};
  const HamiltonianFn zero = [](double) -> Mat3 { return Mat3::Zero(); };
  Mat3 rho0 = Mat3::Zero();
  rho0(1, 1) = 0.5;
  rho0(0, 0) = 0.5;
  rho0(0, 1) = rho0(1, 0) = 0.5;
  const auto rhos = integrate_lindblad(zero, rates, grid, rho0);
  const double g10 = (rates.gamma10 / 2.0 + rates.gphi10) * (1.0 + ctx.bump("exponential-decay"));
  double decay = 0;
  for (int k = 0; k <= grid.n_steps; ++k) {
    const double t = grid.time_at(k);
    decay = std::max({decay, std::abs(rhos[k](1, 1).real() - 0.5 * std::exp(-rates.gamma10 * t)),
                      std::abs(std::abs(rhos[k](0, 1)) - 0.5 * std::exp(-g10 * t))});
  }

  // Exact counterdiabatic drive from |0> on the short-pulse grid.
  DriveConfig cd = presets::fig1_grid();
  cd.mode = DriveMode::cd_ideal;
  const double cd_scale = 1.0 + ctx.bump("cd-ideal-following");
  const HamiltonianFn hcd = [&](double t) { return (h_stirap(cd, t).h + cd_scale * h_cd_ideal(cd, t).h).eval(); };
  const auto amps = integrate_schrodinger(hcd, TimeGrid::of(cd), QutritState::basis(0).amplitudes());
  double cd_err = 0;
  for (int k = 0; k <= cd.n_steps; ++k) {
    const QutritState d = dark_state(mixing_angle(cd, cd.time_at(k)).theta);
    cd_err = std::max(cd_err, 1.0 - std::norm(d.amplitudes().dot(amps[k])));
  }

  // Norm conservation on every pure preset job.
  double drift = 0;
  const double norm_scale = 1.0 + ctx.bump("norm-drift");
  for (const Preset& p : all_presets()) {
    for (const Job& j : p.jobs) {
      if (j.kind != RunKind::pure) continue;
      const auto out = integrate_schrodinger([&](double t) { return hamiltonian(j.drive, t).h; }, TimeGrid::of(j.drive),
                                             initial_state(j).amplitudes() * norm_scale);
      for (const Amp3& a : out) drift = std::max(drift, std::abs(a.squaredNorm() - 1.0));
    }
  }

  // Zero rates reduce the master equation to Schrodinger evolution.
  const DriveConfig sa = presets::simulation_grid(DriveMode::sastirap);
  DecoherenceRates none;
  none.gphi20 = units::from_per_us(ctx.bump("lindblad-closed-limit"));
  const TrajectoryRecord pure = evolve_pure(sa, QutritState::basis(0));
  const TrajectoryRecord open = evolve_lindblad(sa, none, DensityMatrix::pure(QutritState::basis(0)));
  double closed = 0;
  for (std::size_t k = 0; k < pure.size(); ++k) {
    closed = std::max(closed, trace_distance(open.rhos[k].matrix(), DensityMatrix::pure(pure.states[k]).matrix()));
  }

  return {{"rabi-pi-pulse", rabi_err, 1e-8, false},
          {"exponential-decay", decay, 1e-6, false},
          {"cd-ideal-following", cd_err, 1e-6, false},
          {"norm-drift", drift, 1e-8, false},
          {"lindblad-closed-limit", closed, 1e-8, false}};
}

std::vector<CheckResult> mixed(Context& ctx) {
  double recon = 0, purity = 0, spin = 0;
  const double scale = 1.0 + ctx.bump("mixed-reconstruction");
  const double pscale = 1.0 + ctx.bump("mixed-purity");
  const double jscale = 1.0 + ctx.bump("mixed-spin-average");
  for (int i = 0; i < ctx.opts.n_mixed; ++i) {
    const DensityMatrix rho = random_density_matrix(ctx.rng);
    const SpectralTriple t = decompose(rho, random_state(ctx.rng));
    recon = std::max(recon, (scale * t.reconstruct() - rho.matrix()).cwiseAbs().maxCoeff());
    purity = std::max(purity, std::abs(pscale * t.purity() - rho.purity()));
    spin = std::max(spin, (jscale * mixed_spin_average(t).vec() - rho.spin_average().vec()).norm());
  }
  return {{"mixed-reconstruction", recon, 1e-10, false},
          {"mixed-purity", purity, 1e-10, false},
          {"mixed-spin-average", spin, 1e-10, false}};
}

std::vector<CheckResult> tomography(Context& ctx) {
  const double scale = 1.0 + ctx.bump("channel-reconstruction");
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const Mat3 u = random_unitary(ctx.rng);
    const ProcessMatrix chi = process_of([&](const Mat3& rho) -> Mat3 { return u * rho * u.adjoint(); });
    for (int k = 0; k < 50; ++k) {
      const Mat3 rho = DensityMatrix::pure(random_state(ctx.rng)).matrix();
      worst = std::max(worst, trace_distance(scale * chi.apply(rho), u * rho * u.adjoint()));
    }
  }
  return {{"channel-reconstruction", worst, 1e-7, false}};
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
}

const CheckResult* VerifyReport::find(const std::string& check) const {
  for (const auto& s : suites) {
    for (const auto& c : s.checks) {
      if (c.name == check) return &c;
    }
  }
  return nullptr;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json suites_json = nlohmann::json::array();
  for (const auto& s : suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    suites_json.push_back({{"suite", s.name}, {"seconds", s.seconds}, {"pass", s.pass()}, {"checks", checks}});
  }
  return {{"pass", pass()}, {"suites", suites_json}};
}

std::vector<std::string> verify_check_names() {
  return {"star-round-trip",     "spin-geometric",       "concurrence-purity", "differential-operators",
          "r-frame",             "hermiticity",          "theta-dot-fd",       "nonadiabatic-coupling",
          "stark-quadrature",    "rabi-pi-pulse",        "exponential-decay",  "cd-ideal-following",
          "norm-drift",          "lindblad-closed-limit", "mixed-reconstruction", "mixed-purity",
          "mixed-spin-average",  "channel-reconstruction"};
}

VerifyReport run_verify(const VerifyOptions& opts) {
  if (!opts.perturb.empty()) {
    const auto names = verify_check_names();
    if (std::find(names.begin(), names.end(), opts.perturb) == names.end()) {
      throw ConfigError("unknown check '" + opts.perturb + "' for --perturb");
    }
  }
  Context ctx{opts, Rng(opts.seed)};
  const std::pair<const char*, std::function<std::vector<CheckResult>(Context&)>> suites[] = {
      {"representation", representation}, {"drive", drive},         {"dynamics", dynamics},
      {"mixed", mixed},                   {"tomography", tomography}};
  VerifyReport report;
  for (const auto& [name, fn] : suites) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult s{name, 0.0, fn(ctx)};
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& c : s.checks) c.pass = std::isfinite(c.value) && c.value < c.tolerance;
    report.suites.push_back(std::move(s));
  }
  return report;
}

}  // namespace mstirap

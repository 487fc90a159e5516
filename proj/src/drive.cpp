#include "mstirap/drive.hpp"

#include <algorithm>
#include <cmath>

#include "mstirap/majorana.hpp"

namespace mstirap {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Stark-phase slopes d(phi_nk)/d(theta), from eps_nk / hbar with
// |Omega_2ph|^2 / Delta = 2 sqrt2 theta_dot.
const double kStarkSlope01 = 2.0 * kSqrt2;
const double kStarkSlope12 = -5.0 / kSqrt2;
const double kStarkSlope02 = -1.0 / kSqrt2;

void add_coupling(Mat3& h, int j, int k, cplx half_rabi) {
  h(j, k) += half_rabi;
  h(k, j) += std::conj(half_rabi);
}

}  // namespace

std::string_view to_string(DriveMode mode) {
  switch (mode) {
    case DriveMode::stirap: return "stirap";
    case DriveMode::twophoton: return "twophoton";
    case DriveMode::sastirap: return "sastirap";
    case DriveMode::cd_ideal: return "cd_ideal";
  }
  return "?";
}

DriveMode drive_mode_from_string(std::string_view name) {
  for (auto m : {DriveMode::stirap, DriveMode::twophoton, DriveMode::sastirap, DriveMode::cd_ideal}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown drive mode '" + std::string(name) + "'");
}

void DriveConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (n_steps < 2) throw ConfigError("n_steps must be at least 2");
  if (substeps < 1) throw ConfigError("substeps must be at least 1");
  if (!(t_start < t_end)) throw ConfigError("t_start must precede t_end");
  if (!(amp01 >= 0.0) || !(amp12 >= 0.0)) throw ConfigError("pulse amplitudes must be non-negative");
  if (uses_two_photon() && !(delta > 0.0)) throw ConfigError("delta must be positive for two-photon modes");
  for (double v : {ts, phi01, phi12, phi02, delta}) {
    if (!std::isfinite(v)) throw ConfigError("drive parameters must be finite");
  }
}

Envelopes envelopes(const DriveConfig& cfg, double t) {
  const double s2 = cfg.sigma * cfg.sigma;
  const double u = t - cfg.ts;
  const double o1 = cfg.amp01 * std::exp(-t * t / (2.0 * s2));
  const double o2 = cfg.amp12 * std::exp(-u * u / (2.0 * s2));
  return {o1, o2, -t / s2 * o1, -u / s2 * o2};
}

MixingAngle mixing_angle(const DriveConfig& cfg, double t) {
  const Envelopes e = envelopes(cfg, t);
  const double theta = std::atan2(e.omega01, e.omega12);
  if (e.omega01 == 0.0 || e.omega12 == 0.0) return {theta, 0.0};
  // (dO01 O12 - O01 dO12) / (O01^2 + O12^2) = sin(2 theta)/2 * d/dt log(O01/O12)
  const double dlog = e.d_omega01 / e.omega01 - e.d_omega12 / e.omega12;
  return {theta, 0.5 * std::sin(2.0 * theta) * dlog};
}

double adiabaticity_parameter(const DriveConfig& cfg, double t) {
  const Envelopes e = envelopes(cfg, t);
  return mixing_angle(cfg, t).theta_dot / std::hypot(e.omega01, e.omega12);
}

double omega02(const DriveConfig& cfg, double t, bool* clipped) {
  const double v = 2.0 * mixing_angle(cfg, t).theta_dot;
  if (clipped) *clipped = v < 0.0;
  return std::max(v, 0.0);
}

double two_photon_coupling(const DriveConfig& cfg, double t, bool* clipped) {
  if (!(cfg.delta > 0.0)) throw ConfigError("two-photon coupling needs delta > 0");
  return std::sqrt(kSqrt2 * cfg.delta * omega02(cfg, t, clipped));
}

StarkShifts stark_shifts(const DriveConfig& cfg, double t) {
  const double c = two_photon_coupling(cfg, t);
  const double w = c * c / cfg.delta;
  return {w, -1.25 * w, -0.25 * w};
}

DrivePhases stark_phases(const DriveConfig& cfg, double t) {
  const double dtheta = mixing_angle(cfg, t).theta - mixing_angle(cfg, cfg.t_start).theta;
  return {cfg.phi01 + kStarkSlope01 * dtheta, cfg.phi12 + kStarkSlope12 * dtheta,
          cfg.phi02 + kStarkSlope02 * dtheta};
}

HamiltonianSample h_stirap(const DriveConfig& cfg, double t, const DrivePhases& ph) {
  const Envelopes e = envelopes(cfg, t);
  HamiltonianSample s{t};
  add_coupling(s.h, 0, 1, 0.5 * e.omega01 * std::polar(1.0, ph.phi01));
  add_coupling(s.h, 1, 2, 0.5 * e.omega12 * std::polar(1.0, ph.phi12));
  return s;
}

HamiltonianSample h_stirap(const DriveConfig& cfg, double t) {
  return h_stirap(cfg, t, {cfg.phi01, cfg.phi12, cfg.phi02});
}

HamiltonianSample h_cd_ideal(const DriveConfig& cfg, double t) {
  HamiltonianSample s{t};
  const double o02 = 2.0 * mixing_angle(cfg, t).theta_dot;
  add_coupling(s.h, 0, 2, 0.5 * o02 * std::polar(1.0, cfg.phi02));
  return s;
}

HamiltonianSample h_twophoton(const DriveConfig& cfg, double t, const DrivePhases& ph) {
  HamiltonianSample s{t};
  const double c = two_photon_coupling(cfg, t, &s.omega02_clipped);
  const double phi2ph = (ph.phi02 - kPi) / 2.0;
  const double wt = cfg.delta * t;
  add_coupling(s.h, 0, 1, 0.5 * c * std::polar(1.0, phi2ph - wt));
  add_coupling(s.h, 1, 2, 0.5 * kSqrt2 * c * std::polar(1.0, phi2ph + wt));
  return s;
}

HamiltonianSample h_twophoton(const DriveConfig& cfg, double t) {
  return h_twophoton(cfg, t, cfg.stark_correction ? stark_phases(cfg, t)
                                                  : DrivePhases{cfg.phi01, cfg.phi12, cfg.phi02});
}

HamiltonianSample h_sastirap(const DriveConfig& cfg, double t) {
  const DrivePhases ph =
      cfg.stark_correction ? stark_phases(cfg, t) : DrivePhases{cfg.phi01, cfg.phi12, cfg.phi02};
  HamiltonianSample s = h_stirap(cfg, t, ph);
  const HamiltonianSample two = h_twophoton(cfg, t, ph);
  s.h += two.h;
  s.omega02_clipped = two.omega02_clipped;
  return s;
}

HamiltonianSample hamiltonian(const DriveConfig& cfg, double t) {
  switch (cfg.mode) {
    case DriveMode::stirap: return h_stirap(cfg, t);
    case DriveMode::twophoton: return h_twophoton(cfg, t);
    case DriveMode::sastirap: return h_sastirap(cfg, t);
    case DriveMode::cd_ideal: {
      HamiltonianSample s = h_stirap(cfg, t);
      s.h += h_cd_ideal(cfg, t).h;
      return s;
    }
  }
  throw ConfigError("unknown drive mode");
}

Mat3 r_frame() {
  Mat3 r;
  r << 1.0, 0.0, 1.0,
       0.0, kSqrt2, 0.0,
       kI, 0.0, -kI;
  return r / kSqrt2;
}

RFrameResiduals r_frame_check(const DriveConfig& cfg, double t) {
  DriveConfig gauge = cfg;
  gauge.phi01 = gauge.phi12 = 0.0;
  gauge.phi02 = kPi / 2.0;

  const Mat3 r = r_frame();
  const Envelopes e = envelopes(gauge, t);
  const MixingAngle m = mixing_angle(gauge, t);
  const double omega = std::hypot(e.omega01, e.omega12);
  const double o02 = 2.0 * m.theta_dot;

  const Mat3 h0r = r.adjoint() * h_stirap(gauge, t).h * r;
  const Mat3 h0_expected = 0.5 * omega * (std::sin(m.theta) * spin_x() + std::cos(m.theta) * spin_y());
  const Mat3 hcdr = r.adjoint() * h_cd_ideal(gauge, t).h * r;
  const Mat3 hcd_expected = -0.5 * o02 * spin_z();

  // Residuals relative to the drive scale.
  const double h0_scale = std::max(omega, 1.0);
  const double hcd_scale = std::max(std::abs(o02), 1.0);

  const QutritState dark_r(r.adjoint() * dark_state(m.theta).amplitudes());
  const MajoranaConstellation expected(
      MajoranaStar::from_cartesian(Vec3(std::sin(m.theta), std::cos(m.theta), 0.0)),
      MajoranaStar::from_cartesian(Vec3(-std::sin(m.theta), -std::cos(m.theta), 0.0)));
  const MajoranaConstellation got = stars_of(dark_r);
  const double straight = std::max(angular_distance(got.s1(), expected.s1()),
                                   angular_distance(got.s2(), expected.s2()));
  const double crossed = std::max(angular_distance(got.s1(), expected.s2()),
                                  angular_distance(got.s2(), expected.s1()));

  return {(h0r - h0_expected).cwiseAbs().maxCoeff() / h0_scale,
          (hcdr - hcd_expected).cwiseAbs().maxCoeff() / hcd_scale, std::min(straight, crossed)};
}

namespace presets {

DriveConfig fig1_grid() {
  DriveConfig c;
  c.sigma = units::from_ns(20.0);
  c.ts = units::from_ns(-30.0);
  c.amp01 = c.amp12 = units::from_mhz_over_2pi(25.5);
  c.t_start = units::from_ns(-110.0);
  c.t_end = units::from_ns(80.0);
  c.n_steps = 1900;
  c.mode = DriveMode::stirap;
  return c;
}

DriveConfig simulation_grid(DriveMode mode) {
  DriveConfig c;
  c.mode = mode;
  return c;
}

}  // namespace presets

}  // namespace mstirap

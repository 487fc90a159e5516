#pragma once

// Pulse envelopes and Hamiltonians for resonant STIRAP, counterdiabatic
// driving and its two-photon realization. Units: seconds, rad/s, hbar = 1.

#include <stdexcept>
#include <string>
#include <string_view>

#include "mstirap/linalg.hpp"
#include "mstirap/units.hpp"

namespace mstirap {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DriveMode { stirap, twophoton, sastirap, cd_ideal };

std::string_view to_string(DriveMode mode);
/// Throws ConfigError on an unknown name.
DriveMode drive_mode_from_string(std::string_view name);

struct DriveConfig {
  double sigma = units::from_ns(35.0);
  double ts = units::from_ns(-42.0);  ///< delay of the 1-2 pulse; negative is counterintuitive
  double amp01 = units::from_mhz_over_2pi(45.0);
  double amp12 = units::from_mhz_over_2pi(45.0);
  double phi01 = 0.0;
  double phi12 = 0.0;
  double phi02 = kPi / 2.0;
  double delta = units::from_mhz_over_2pi(225.0);  ///< two-photon frame detuning
  double t_start = units::from_ns(-182.0);
  double t_end = units::from_ns(140.0);
  int n_steps = 1800;  ///< output intervals
  int substeps = 8;    ///< RK4 steps per output interval
  bool stark_correction = false;
  DriveMode mode = DriveMode::stirap;

  /// Throws ConfigError.
  void validate() const;
  double dt() const { return (t_end - t_start) / n_steps; }
  double time_at(int step) const { return t_start + step * dt(); }
  double phi_2ph() const { return (phi02 - kPi) / 2.0; }
  bool uses_two_photon() const { return mode == DriveMode::twophoton || mode == DriveMode::sastirap; }

  bool operator==(const DriveConfig&) const = default;
};

struct Envelopes {
  double omega01, omega12;
  double d_omega01, d_omega12;  ///< analytic time derivatives
};

Envelopes envelopes(const DriveConfig& cfg, double t);

struct MixingAngle {
  double theta;      ///< atan2(omega01, omega12), in [0, pi/2]
  double theta_dot;
};

MixingAngle mixing_angle(const DriveConfig& cfg, double t);

/// theta_dot / sqrt(omega01^2 + omega12^2); adiabatic when << 1.
double adiabaticity_parameter(const DriveConfig& cfg, double t);

struct HamiltonianSample {
  double t = 0.0;
  Mat3 h = Mat3::Zero();
  bool omega02_clipped = false;  ///< 2 theta_dot < 0 was floored to zero

  double hermiticity_residual() const { return mstirap::hermiticity_residual(h); }
};

struct DrivePhases {
  double phi01, phi12, phi02;
};

/// Base phases shifted by the integrated ac Stark shifts of the two-photon
/// drive. With |Omega_2ph|^2 = 2 sqrt2 Delta theta_dot the integrals are
/// proportional to theta(t) - theta(t_start).
DrivePhases stark_phases(const DriveConfig& cfg, double t);

struct StarkShifts {
  double eps01, eps12, eps02;  ///< rad/s
};

StarkShifts stark_shifts(const DriveConfig& cfg, double t);

/// Counterdiabatic coupling 2 theta_dot floored at zero.
double omega02(const DriveConfig& cfg, double t, bool* clipped = nullptr);
/// |Omega_2ph| = sqrt(sqrt2 Delta Omega02)
double two_photon_coupling(const DriveConfig& cfg, double t, bool* clipped = nullptr);

HamiltonianSample h_stirap(const DriveConfig& cfg, double t, const DrivePhases& phases);
HamiltonianSample h_stirap(const DriveConfig& cfg, double t);
HamiltonianSample h_cd_ideal(const DriveConfig& cfg, double t);
/// Throws ConfigError when delta <= 0.
HamiltonianSample h_twophoton(const DriveConfig& cfg, double t, const DrivePhases& phases);
HamiltonianSample h_twophoton(const DriveConfig& cfg, double t);
/// H0 + H_2ph, with Stark-corrected phases when enabled.
HamiltonianSample h_sastirap(const DriveConfig& cfg, double t);

/// Full Hamiltonian for cfg.mode.
HamiltonianSample hamiltonian(const DriveConfig& cfg, double t);

/// Frame change taking the resonant problem to a spin-1 in a vector field.
Mat3 r_frame();

struct RFrameResiduals {
  double h0;         ///< |R^+ H0 R - (Omega/2)(sin theta Jx + cos theta Jy)|
  double hcd;        ///< |R^+ Hcd R + (Omega02/2) Jz|
  double dark_root;  ///< R-frame dark-state stars vs (+-sin theta, +-cos theta, 0)
};

RFrameResiduals r_frame_check(const DriveConfig& cfg, double t);

namespace presets {

/// ts = -30 ns, sigma = 20 ns, Omega/2pi = 25.5 MHz, -110 .. 80 ns.
DriveConfig fig1_grid();
/// sigma = 35 ns, Omega/2pi = 45 MHz, ts = -1.2 sigma, -182 .. 140 ns, 1800 steps.
DriveConfig simulation_grid(DriveMode mode);

}  // namespace presets

}  // namespace mstirap

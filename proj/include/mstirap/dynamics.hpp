#pragma once

// Fixed-step RK4 integration of the Schrodinger and Lindblad equations on a
// uniform grid, with per-step metric extraction.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mstirap/drive.hpp"
#include "mstirap/majorana.hpp"

namespace mstirap {

/// Raised when the closed-system norm drifts by more than 1e-6.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DensityMatrix {
 public:
  DensityMatrix() : rho_(Mat3::Zero()) { rho_(0, 0) = 1.0; }
  /// Throws std::invalid_argument unless Hermitian (1e-10), unit trace
  /// (1e-8) and eigenvalues >= -1e-9.
  explicit DensityMatrix(const Mat3& rho);

  static DensityMatrix pure(const QutritState& psi);
  /// Wraps without validation; used for integrator output.
  static DensityMatrix unchecked(const Mat3& rho);

  const Mat3& matrix() const { return rho_; }
  cplx operator()(int i, int j) const { return rho_(i, j); }
  double trace() const { return rho_.trace().real(); }
  double purity() const { return (rho_ * rho_).trace().real(); }
  double population(int level) const { return rho_(level, level).real(); }
  double expectation(const QutritState& psi) const;
  double min_eigenvalue() const;
  SpinVector spin_average() const;

 private:
  Mat3 rho_;
};

/// 1/2 ||a - b||_1
double trace_distance(const Mat3& a, const Mat3& b);

struct DecoherenceRates {
  double gamma10 = 0.0, gamma21 = 0.0;              ///< relaxation, 1/s
  double gphi10 = 0.0, gphi21 = 0.0, gphi20 = 0.0;  ///< pure dephasing, 1/s

  void validate() const;  ///< throws ConfigError on negative rates
  /// Symmetric matrix of coherence decay rates gamma_jk, zero diagonal.
  Eigen::Matrix3d coherence_decay() const;
  bool any() const { return gamma10 > 0 || gamma21 > 0 || gphi10 > 0 || gphi21 > 0 || gphi20 > 0; }

  /// Transmon rates used for the decoherence presets (0.5, 0.71, 0.4, 0.56, 0.96 per us).
  static DecoherenceRates transmon();

  bool operator==(const DecoherenceRates&) const = default;
};

/// -i[H, rho] + L[rho]
Mat3 lindblad_rhs(const Mat3& h, const DecoherenceRates& rates, const Mat3& rho);

/// n_steps output intervals, each integrated with `substeps` RK4 steps.
struct TimeGrid {
  double t_start, t_end;
  int n_steps;
  int substeps = 1;

  double dt() const { return (t_end - t_start) / n_steps; }
  double time_at(int k) const { return t_start + k * dt(); }
  static TimeGrid of(const DriveConfig& cfg) { return {cfg.t_start, cfg.t_end, cfg.n_steps, cfg.substeps}; }
};

using HamiltonianFn = std::function<Mat3(double)>;

/// States at every output point (n_steps + 1 entries). No renormalization.
std::vector<Amp3> integrate_schrodinger(const HamiltonianFn& h, const TimeGrid& grid, const Amp3& psi0);
std::vector<Mat3> integrate_lindblad(const HamiltonianFn& h, const DecoherenceRates& rates,
                                     const TimeGrid& grid, const Mat3& rho0);

/// Per-step observables. Star columns are NaN for mixed-state rows until the
/// spectral representation fills them in.
struct MetricRow {
  double t = 0.0;
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
  double theta_mix = 0.0;
  double eta = 0.0;
  double concurrence = 0.0;
  SpinVector j;
  double fid_dark = 0.0;      ///< |<psi|D(t)>|^2 or <D|rho|D>
  double infid_bright = 0.0;  ///< |<psi|n+>|^2 + |<psi|n->|^2
  Vec3 star1 = Vec3::Zero(), star2 = Vec3::Zero();
};

struct TrajectoryRecord {
  DriveConfig cfg;
  std::optional<DecoherenceRates> rates;
  std::vector<double> times;
  std::vector<QutritState> states;    ///< pure runs
  std::vector<DensityMatrix> rhos;    ///< Lindblad runs
  std::vector<MajoranaConstellation> stars;  ///< pure runs, continuity-paired
  std::vector<MetricRow> metrics;

  double norm_drift = 0.0;      ///< pure: max | |psi|^2 - 1 |
  double trace_drift = 0.0;     ///< Lindblad: max |Tr rho - 1|
  double min_eigenvalue = 0.0;  ///< Lindblad: smallest eigenvalue seen
  bool positivity_warning = false;
  double max_star_jump = 0.0;   ///< largest per-step angular move after pairing
  int clipped_samples = 0;      ///< Hamiltonian samples with Omega02 floored

  bool mixed() const { return !rhos.empty(); }
  std::size_t size() const { return times.size(); }
  const MetricRow& final_metrics() const { return metrics.back(); }
};

/// Throws InstabilityError if the norm drifts by more than 1e-6.
TrajectoryRecord evolve_pure(const DriveConfig& cfg, const QutritState& psi0);
TrajectoryRecord evolve_lindblad(const DriveConfig& cfg, const DecoherenceRates& rates,
                                 const DensityMatrix& rho0);

/// Orders current's stars to minimize the summed angular distance to
/// previous's ordered stars; ties keep current's order.
MajoranaConstellation pair_stars(const MajoranaConstellation& previous, const MajoranaConstellation& current);

MetricRow metrics_at(const DriveConfig& cfg, double t, const QutritState& psi, const MajoranaConstellation& stars);
MetricRow metrics_at(const DriveConfig& cfg, double t, const DensityMatrix& rho);
const MetricRow& metrics_at(const TrajectoryRecord& record, std::size_t step);

}  // namespace mstirap

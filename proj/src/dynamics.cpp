#include "mstirap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mstirap {

namespace {

constexpr double kNormDriftLimit = 1e-6;
constexpr double kPositivityWarn = -1e-6;

template <typename T, typename Rhs>
T rk4_step(const Rhs& f, const T& y, double t, double dt) {
  const T k1 = f(t, y);
  const T k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const T k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const T k4 = f(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename T, typename Rhs>
void advance(const Rhs& f, const TimeGrid& grid, std::vector<T>& out) {
  const double h = grid.dt() / grid.substeps;
  for (int k = 0; k < grid.n_steps; ++k) {
    T y = out.back();
    const double t0 = grid.time_at(k);
    for (int s = 0; s < grid.substeps; ++s) y = rk4_step(f, y, t0 + s * h, h);
    out.push_back(y);
  }
}

HamiltonianFn drive_hamiltonian(const DriveConfig& cfg) {
  return [cfg](double t) { return hamiltonian(cfg, t).h; };
}

int count_clipped(const DriveConfig& cfg, const TimeGrid& grid) {
  if (!cfg.uses_two_photon()) return 0;
  int n = 0;
  for (int k = 0; k <= grid.n_steps; ++k) n += hamiltonian(cfg, grid.time_at(k)).omega02_clipped ? 1 : 0;
  return n;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DensityMatrix::DensityMatrix(const Mat3& rho) : rho_(rho) {
  if (hermiticity_residual(rho_) > 1e-10) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - cplx(1.0)) > 1e-8) throw std::invalid_argument("density matrix trace is not 1");
  if (min_eigenvalue() < -1e-9) throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const QutritState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::unchecked(const Mat3& rho) {
  DensityMatrix d;
  d.rho_ = rho;
  return d;
}

double DensityMatrix::expectation(const QutritState& psi) const {
  return psi.amplitudes().dot(rho_ * psi.amplitudes()).real();
}

double DensityMatrix::min_eigenvalue() const {
  const Mat3 herm = 0.5 * (rho_ + rho_.adjoint());
  return Eigen::SelfAdjointEigenSolver<Mat3>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

SpinVector DensityMatrix::spin_average() const {
  return {(rho_ * spin_x()).trace().real(), (rho_ * spin_y()).trace().real(),
          (rho_ * spin_z()).trace().real()};
}

double trace_distance(const Mat3& a, const Mat3& b) {
  const Mat3 d = a - b;
  const Mat3 herm = 0.5 * (d + d.adjoint());
  return 0.5 * Eigen::SelfAdjointEigenSolver<Mat3>(herm, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
}

void DecoherenceRates::validate() const {
  for (double r : {gamma10, gamma21, gphi10, gphi21, gphi20}) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("decoherence rates must be finite and non-negative");
  }
}

Eigen::Matrix3d DecoherenceRates::coherence_decay() const {
  const double g10 = gamma10 / 2.0 + gphi10;
  const double g20 = gamma21 / 2.0 + gphi20;
  const double g21 = (gamma10 + gamma21) / 2.0 + gphi21;
  Eigen::Matrix3d g;
  g << 0.0, g10, g20,
       g10, 0.0, g21,
       g20, g21, 0.0;
  return g;
}

DecoherenceRates DecoherenceRates::transmon() {
  using units::from_per_us;
  return {from_per_us(0.5), from_per_us(0.71), from_per_us(0.4), from_per_us(0.56), from_per_us(0.96)};
}

Mat3 lindblad_rhs(const Mat3& h, const DecoherenceRates& rates, const Mat3& rho) {
  Mat3 out = -kI * (h * rho - rho * h);
  out -= rates.coherence_decay().cast<cplx>().cwiseProduct(rho);
  const cplx r11 = rho(1, 1);
  const cplx r22 = rho(2, 2);
  out(1, 1) += rates.gamma21 * r22;
  out(2, 2) -= rates.gamma21 * r22;
  out(0, 0) += rates.gamma10 * r11;
  out(1, 1) -= rates.gamma10 * r11;
  return out;
}

std::vector<Amp3> integrate_schrodinger(const HamiltonianFn& h, const TimeGrid& grid, const Amp3& psi0) {
  const auto rhs = [&h](double t, const Amp3& y) -> Amp3 { return -kI * (h(t) * y); };
  std::vector<Amp3> out;
  out.reserve(grid.n_steps + 1);
  out.push_back(psi0);
  advance(rhs, grid, out);
  return out;
}

std::vector<Mat3> integrate_lindblad(const HamiltonianFn& h, const DecoherenceRates& rates,
                                     const TimeGrid& grid, const Mat3& rho0) {
  const auto rhs = [&](double t, const Mat3& r) -> Mat3 { return lindblad_rhs(h(t), rates, r); };
  std::vector<Mat3> out;
  out.reserve(grid.n_steps + 1);
  out.push_back(rho0);
  advance(rhs, grid, out);
  return out;
}

MajoranaConstellation pair_stars(const MajoranaConstellation& previous, const MajoranaConstellation& current) {
  const double keep = angular_distance(previous.s1(), current.s1()) + angular_distance(previous.s2(), current.s2());
  const double swap = angular_distance(previous.s1(), current.s2()) + angular_distance(previous.s2(), current.s1());
  return swap < keep ? current.swapped() : current;
}

MetricRow metrics_at(const DriveConfig& cfg, double t, const QutritState& psi, const MajoranaConstellation& stars) {
  MetricRow m;
  m.t = t;
  m.p0 = psi.population(0);
  m.p1 = psi.population(1);
  m.p2 = psi.population(2);
  m.theta_mix = mixing_angle(cfg, t).theta;
  m.eta = stars.eta();
  m.concurrence = concurrence(stars);
  m.j = spin_average(psi);
  m.fid_dark = psi.fidelity(dark_state(m.theta_mix));
  const auto [np, nm] = bright_states(m.theta_mix);
  m.infid_bright = psi.fidelity(np) + psi.fidelity(nm);
  m.star1 = stars.s1().cart();
  m.star2 = stars.s2().cart();
  return m;
}

MetricRow metrics_at(const DriveConfig& cfg, double t, const DensityMatrix& rho) {
  MetricRow m;
  m.t = t;
  m.p0 = rho.population(0);
  m.p1 = rho.population(1);
  m.p2 = rho.population(2);
  m.theta_mix = mixing_angle(cfg, t).theta;
  m.eta = m.concurrence = kNaN;
  m.j = rho.spin_average();
  m.fid_dark = rho.expectation(dark_state(m.theta_mix));
  const auto [np, nm] = bright_states(m.theta_mix);
  m.infid_bright = rho.expectation(np) + rho.expectation(nm);
  m.star1 = m.star2 = Vec3::Constant(kNaN);
  return m;
}

const MetricRow& metrics_at(const TrajectoryRecord& record, std::size_t step) {
  return record.metrics.at(step);
}

TrajectoryRecord evolve_pure(const DriveConfig& cfg, const QutritState& psi0) {
  cfg.validate();
  const TimeGrid grid = TimeGrid::of(cfg);
  const std::vector<Amp3> amps = integrate_schrodinger(drive_hamiltonian(cfg), grid, psi0.amplitudes());

  TrajectoryRecord rec;
  rec.cfg = cfg;
  rec.clipped_samples = count_clipped(cfg, grid);
  rec.times.reserve(amps.size());
  rec.states.reserve(amps.size());
  rec.stars.reserve(amps.size());
  rec.metrics.reserve(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double t = grid.time_at(static_cast<int>(k));
    rec.norm_drift = std::max(rec.norm_drift, std::abs(amps[k].squaredNorm() - 1.0));
    const QutritState psi(amps[k]);
    MajoranaConstellation stars = stars_of(psi);
    if (!rec.stars.empty()) {
      stars = pair_stars(rec.stars.back(), stars);
      const auto& prev = rec.stars.back();
      rec.max_star_jump = std::max(
          {rec.max_star_jump, angular_distance(prev.s1(), stars.s1()), angular_distance(prev.s2(), stars.s2())});
    }
    rec.times.push_back(t);
    rec.states.push_back(psi);
    rec.stars.push_back(stars);
    rec.metrics.push_back(metrics_at(cfg, t, psi, stars));
  }
  if (rec.norm_drift > kNormDriftLimit) {
    std::ostringstream msg;
    msg << "norm drift " << rec.norm_drift << " exceeds " << kNormDriftLimit << "; refine the time grid";
    throw InstabilityError(msg.str());
  }
  return rec;
}

TrajectoryRecord evolve_lindblad(const DriveConfig& cfg, const DecoherenceRates& rates, const DensityMatrix& rho0) {
  cfg.validate();
  rates.validate();
  const TimeGrid grid = TimeGrid::of(cfg);
  const std::vector<Mat3> rhos = integrate_lindblad(drive_hamiltonian(cfg), rates, grid, rho0.matrix());

  TrajectoryRecord rec;
  rec.cfg = cfg;
  rec.rates = rates;
  rec.clipped_samples = count_clipped(cfg, grid);
  rec.min_eigenvalue = std::numeric_limits<double>::infinity();
  rec.times.reserve(rhos.size());
  rec.rhos.reserve(rhos.size());
  rec.metrics.reserve(rhos.size());
  for (std::size_t k = 0; k < rhos.size(); ++k) {
    const double t = grid.time_at(static_cast<int>(k));
    const DensityMatrix rho = DensityMatrix::unchecked(rhos[k]);
    rec.trace_drift = std::max(rec.trace_drift, std::abs(rho.trace() - 1.0));
    rec.min_eigenvalue = std::min(rec.min_eigenvalue, rho.min_eigenvalue());
    rec.times.push_back(t);
    rec.rhos.push_back(rho);
    rec.metrics.push_back(metrics_at(cfg, t, rho));
  }
  rec.positivity_warning = rec.min_eigenvalue < kPositivityWarn;
  return rec;
}

}  // namespace mstirap

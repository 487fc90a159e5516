#include <doctest.h>

#include <cmath>

#include "mstirap/dynamics.hpp"
#include "mstirap/random.hpp"
#include "oracles.hpp"

using namespace mstirap;

namespace {

DriveConfig grid(DriveMode mode) { return presets::simulation_grid(mode); }

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("zero Hamiltonian leaves the state untouched") {
  Rng rng(11);
  const Amp3 psi0 = random_state(rng).amplitudes();
  const auto out = integrate_schrodinger([](double) { return Mat3::Zero().eval(); }, {0.0, 1e-6, 100, 4}, psi0);
  REQUIRE(out.size() == 101);
  for (const Amp3& psi : out) CHECK((psi - psi0).norm() == 0.0);
}

TEST_CASE("resonant Rabi pi pulse") {
  const double omega = 2 * oracle::pi * 20e6;
  Mat3 h = Mat3::Zero();
  h(0, 1) = h(1, 0) = omega / 2;
  const double t_pi = oracle::pi / omega;
  const auto out = integrate_schrodinger([h](double) { return h; }, {0.0, t_pi, 400, 4}, Amp3(1, 0, 0));
  CHECK(std::abs(std::norm(out.back()(1)) - 1.0) < 1e-8);
  for (int k = 0; k <= 400; ++k) {
    const double t = t_pi * k / 400;
    CHECK(std::abs(std::norm(out[k](1)) - std::pow(std::sin(omega * t / 2), 2)) < 1e-8);
  }
}

TEST_CASE("exponential decay of the first excited level") {
  DecoherenceRates r;
  r.gamma10 = 2 * oracle::pi * 1e6;
  Mat3 rho0 = Mat3::Zero();
  rho0(1, 1) = 1.0;
  const TimeGrid g{0.0, 2e-6, 500, 4};
  const auto out = integrate_lindblad([](double) { return Mat3::Zero().eval(); }, r, g, rho0);
  for (int k = 0; k <= g.n_steps; ++k) {
    const double expected = std::exp(-r.gamma10 * g.time_at(k));
    CHECK(std::abs(out[k](1, 1).real() - expected) < 1e-6);
    CHECK(std::abs(out[k](0, 0).real() - (1 - expected)) < 1e-6);
  }
}

TEST_CASE("coherence decay rates") {
  DecoherenceRates r{1.0, 2.0, 3.0, 4.0, 5.0};
  Mat3 rho = Mat3::Constant(cplx(0.0, 0.0));
  rho(0, 1) = rho(1, 0) = 1.0;
  rho(0, 2) = rho(2, 0) = 1.0;
  rho(1, 2) = rho(2, 1) = 1.0;
  const Mat3 d = lindblad_rhs(Mat3::Zero(), r, rho);
  CHECK(d(0, 1).real() == doctest::Approx(-(1.0 / 2 + 3.0)));
  CHECK(d(0, 2).real() == doctest::Approx(-(2.0 / 2 + 5.0)));
  CHECK(d(1, 2).real() == doctest::Approx(-((1.0 + 2.0) / 2 + 4.0)));
  CHECK(d(1, 0) == std::conj(d(0, 1)));
  CHECK_THROWS_AS((DecoherenceRates{-1.0, 0, 0, 0, 0}.validate()), ConfigError);
}

TEST_CASE("drive propagator agrees with a midpoint-exponential oracle") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::cd_ideal, DriveMode::sastirap}) {
    const DriveConfig c = grid(mode);
    const TrajectoryRecord rec = evolve_pure(c, QutritState::basis(0));
    const Mat3 u = oracle::midpoint_propagator([&](double t) { return hamiltonian(c, t).h; }, c.t_start,
                                               c.t_end, 40000);
    const Amp3 ref = u.col(0);
    CHECK((rec.states.back().amplitudes() - ref).norm() < 1e-4);
  }
}

TEST_CASE("closed-system limit of the Lindblad integrator") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::sastirap}) {
    const DriveConfig c = grid(mode);
    const QutritState psi0 = QutritState::basis(0);
    const TrajectoryRecord pure = evolve_pure(c, psi0);
    const TrajectoryRecord mixed = evolve_lindblad(c, DecoherenceRates{}, DensityMatrix::pure(psi0));
    REQUIRE(pure.size() == mixed.size());
    double worst = 0;
    for (std::size_t k = 0; k < pure.size(); ++k) {
      worst = std::max(worst, trace_distance(mixed.rhos[k].matrix(), DensityMatrix::pure(pure.states[k]).matrix()));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("Lindblad trace, Hermiticity and positivity") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::sastirap}) {
    const DriveConfig c = grid(mode);
    const TrajectoryRecord rec = evolve_lindblad(c, DecoherenceRates::transmon(), DensityMatrix());
    CHECK(rec.trace_drift < 1e-8);
    CHECK_FALSE(rec.positivity_warning);
    double herm = 0;
    for (const auto& r : rec.rhos) herm = std::max(herm, hermiticity_residual(r.matrix()));
    CHECK(herm < 1e-10);
    CHECK(rec.metrics.front().fid_dark > 1 - 1e-4);
    CHECK(std::isnan(rec.metrics.front().eta));
  }
}

TEST_CASE("STIRAP preset populations and nonadiabatic signature") {
  const TrajectoryRecord rec = evolve_pure(grid(DriveMode::stirap), QutritState::basis(0));
  const MetricRow& f = rec.final_metrics();
  CHECK(std::abs(f.p0 - 0.010) < 0.02);
  CHECK(std::abs(f.p1 - 0.003) < 0.02);
  CHECK(std::abs(f.p2 - 0.987) < 0.02);
  std::vector<double> p1, jy;
  double max_p1 = 0;
  for (const MetricRow& m : rec.metrics) {
    p1.push_back(m.p1);
    jy.push_back(std::abs(m.j.jy));
    max_p1 = std::max(max_p1, m.p1);
  }
  CHECK(max_p1 <= 0.06);
  CHECK(max_p1 > 0.01);
  CHECK(pearson(p1, jy) > 0.9);
}

TEST_CASE("start of every drive: ground state, unit dark fidelity") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::twophoton, DriveMode::sastirap, DriveMode::cd_ideal}) {
    const TrajectoryRecord rec = evolve_pure(grid(mode), QutritState::basis(0));
    CHECK(rec.metrics.front().p0 == 1.0);
    CHECK(rec.metrics.front().fid_dark > 1 - 1e-4);
    for (std::size_t k = 1; k < rec.times.size(); ++k) CHECK(rec.times[k] > rec.times[k - 1]);
  }
}

TEST_CASE("saSTIRAP: spin average dips and concurrence peaks") {
  const TrajectoryRecord rec = evolve_pure(grid(DriveMode::sastirap), QutritState::basis(0));
  double min_j = 1e9, max_c = 0;
  for (const MetricRow& m : rec.metrics) {
    min_j = std::min(min_j, m.j.norm());
    max_c = std::max(max_c, m.concurrence);
  }
  CHECK(min_j < 0.05);
  CHECK(max_c > 0.98);
  CHECK(rec.final_metrics().p2 > 0.999);
}

TEST_CASE("ideal counterdiabatic driving follows the dark state") {
  DriveConfig f = presets::fig1_grid();
  f.mode = DriveMode::cd_ideal;
  const DriveConfig s = grid(DriveMode::cd_ideal);
  const std::pair<DriveConfig, QutritState> runs[] = {
      {f, QutritState::basis(0)}, {s, dark_state(mixing_angle(s, s.t_start).theta)}};
  for (const auto& [c, psi0] : runs) {
    const TrajectoryRecord rec = evolve_pure(c, psi0);
    CHECK(rec.metrics.front().fid_dark > 1 - 1e-6);
    double worst = 0;
    for (const MetricRow& m : rec.metrics) worst = std::max(worst, 1 - m.fid_dark);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("norm conservation and star continuity on all drives") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::twophoton, DriveMode::sastirap, DriveMode::cd_ideal}) {
    for (bool stark : {false, true}) {
      DriveConfig c = grid(mode);
      c.stark_correction = stark;
      const TrajectoryRecord rec = evolve_pure(c, QutritState::basis(0));
      CHECK(rec.norm_drift < 1e-8);
      if (mode == DriveMode::stirap) CHECK(rec.max_star_jump < 0.2);
    }
  }
  DriveConfig f = presets::fig1_grid();
  CHECK(evolve_pure(f, QutritState::basis(0)).norm_drift < 1e-8);
}

TEST_CASE("doubling the grid changes final populations by less than 1e-4") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::twophoton, DriveMode::sastirap, DriveMode::cd_ideal}) {
    DriveConfig c = grid(mode);
    const MetricRow a = evolve_pure(c, QutritState::basis(0)).final_metrics();
    c.n_steps *= 2;
    const MetricRow b = evolve_pure(c, QutritState::basis(0)).final_metrics();
    CHECK(std::abs(a.p0 - b.p0) < 1e-4);
    CHECK(std::abs(a.p1 - b.p1) < 1e-4);
    CHECK(std::abs(a.p2 - b.p2) < 1e-4);
  }
}

TEST_CASE("a grid too coarse for the drive raises an instability") {
  DriveConfig c = grid(DriveMode::sastirap);
  c.n_steps = 10;
  c.substeps = 1;
  CHECK_THROWS_AS(evolve_pure(c, QutritState::basis(0)), InstabilityError);
}

TEST_CASE("star pairing") {
  const MajoranaConstellation c = stars_of(QutritState(1, 0.3, 0.2));
  const MajoranaConstellation p = pair_stars(c, c);
  CHECK(angular_distance(p.s1(), c.s1()) == 0.0);
  const MajoranaConstellation q = pair_stars(c, c.swapped());
  CHECK(angular_distance(q.s1(), c.s1()) == 0.0);
  CHECK(angular_distance(q.s2(), c.s2()) == 0.0);
}

#include <doctest.h>

#include "mstirap/random.hpp"
#include "mstirap/tomography.hpp"
#include "oracles.hpp"

using namespace mstirap;

namespace {

std::array<Mat3, 9> gell_mann() {
  std::array<Mat3, 9> g;
  for (auto& m : g) m = Mat3::Zero();
  const cplx i(0.0, 1.0);
  g[0] = Mat3::Identity();
  g[1](0, 1) = g[1](1, 0) = 1;
  g[2](0, 1) = -i;
  g[2](1, 0) = i;
  g[3](0, 0) = 1;
  g[3](1, 1) = -1;
  g[4](0, 2) = g[4](2, 0) = 1;
  g[5](0, 2) = -i;
  g[5](2, 0) = i;
  g[6](1, 2) = g[6](2, 1) = 1;
  g[7](1, 2) = -i;
  g[7](2, 1) = i;
  g[8] = Eigen::Vector3cd(1, 1, -2).asDiagonal();
  g[8] /= std::sqrt(3.0);
  g[0] /= std::sqrt(3.0);
  for (int k = 1; k < 9; ++k) g[k] /= std::sqrt(2.0);
  return g;
}

Mat3 proj(const Amp3& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("operator basis is orthonormal and matches the Gell-Mann set") {
  const auto& b = operator_basis();
  const auto g = gell_mann();
  for (int m = 0; m < 9; ++m) {
    CHECK((b[m] - g[m]).norm() < 1e-15);
    CHECK(hermiticity_residual(b[m]) < 1e-15);
    for (int n = 0; n < 9; ++n) {
      CHECK(std::abs((b[m].adjoint() * b[n]).trace() - cplx(m == n ? 1.0 : 0.0)) < 1e-14);
    }
  }
  CHECK(operator_basis_names().size() == 9);
}

TEST_CASE("input states are normalized and span operator space") {
  const auto in = input_basis();
  Eigen::Matrix<cplx, 9, 9> gram;
  for (int i = 0; i < 9; ++i) {
    CHECK(in[i].amplitudes().norm() == doctest::Approx(1.0));
    for (int j = 0; j < 9; ++j) gram(i, j) = (proj(in[i].amplitudes()) * proj(in[j].amplitudes())).trace();
  }
  CHECK(Eigen::FullPivLU<Eigen::Matrix<cplx, 9, 9>>(gram).rank() == 9);
  CHECK(std::abs(in[4].amplitudes()(1) - cplx(0, std::sqrt(0.5))) < 1e-15);
  CHECK(input_basis_labels()[8] == "(|0>+i|2>)/r2");
}

TEST_CASE("identity channel") {
  const ProcessMatrix p = process_of([](const Mat3& r) { return r; });
  CHECK(std::abs(p.chi(0, 0) - cplx(1.0)) < 1e-12);
  CHECK(p.chi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.raw_trace == doctest::Approx(3.0));
  CHECK(p.completely_positive);

  DriveConfig idle = presets::simulation_grid(DriveMode::stirap);
  idle.amp01 = idle.amp12 = 0;
  idle.n_steps = 50;
  const ProcessMatrix q = run_process(idle);
  CHECK(std::abs(q.chi(0, 0) - cplx(1.0)) < 1e-12);
}

TEST_CASE("random unitary channels") {
  Rng rng(31);
  const auto g = gell_mann();
  for (int i = 0; i < 20; ++i) {
    const Mat3 u = random_unitary(rng);
    const ProcessMatrix p = process_of([&](const Mat3& r) { return (u * r * u.adjoint()).eval(); });
    CHECK((p.chi - oracle::unitary_chi(u, g)).norm() < 1e-10);
    CHECK(p.min_eigenvalue > -1e-10);
    for (int k = 0; k < 50; ++k) {
      const Mat3 rho = (k % 2 == 0) ? random_density_matrix(rng).matrix() : proj(random_state(rng).amplitudes());
      CHECK(trace_distance(p.apply(rho), u * rho * u.adjoint()) < 1e-7);
    }
    for (const QutritState& s : input_basis()) {
      const Mat3 rho = proj(s.amplitudes());
      CHECK((p.apply(rho) - u * rho * u.adjoint()).norm() < 1e-8);
    }
  }
}

TEST_CASE("amplitude damping channel is reconstructed") {
  const double gamma = 0.3;
  const auto damp = [&](const Mat3& r) {
    Mat3 k0 = Mat3::Identity();
    k0(1, 1) = std::sqrt(1 - gamma);
    Mat3 k1 = Mat3::Zero();
    k1(0, 1) = std::sqrt(gamma);
    return (k0 * r * k0.adjoint() + k1 * r * k1.adjoint()).eval();
  };
  const ProcessMatrix p = process_of(damp);
  CHECK(p.completely_positive);
  Rng rng(37);
  for (int k = 0; k < 50; ++k) {
    const Mat3 rho = random_density_matrix(rng).matrix();
    CHECK(trace_distance(p.apply(rho), damp(rho)) < 1e-10);
  }
}

TEST_CASE("ill-conditioned or malformed inputs") {
  std::vector<Mat3> in, out;
  for (int i = 0; i < 9; ++i) {
    in.push_back(proj(QutritState::basis(i % 3).amplitudes()));
    out.push_back(in.back());
  }
  CHECK_THROWS_AS(reconstruct_process(in, out), TomographyError);
  in.pop_back();
  CHECK_THROWS_AS(reconstruct_process(in, out), TomographyError);
}

TEST_CASE("comparison") {
  Rng rng(41);
  const Mat3 u = random_unitary(rng);
  const ProcessMatrix a = process_of([&](const Mat3& r) { return (u * r * u.adjoint()).eval(); });
  ProcessComparison c = compare(a, a);
  CHECK(c.fidelity == doctest::Approx(1.0));
  CHECK(c.trace_distance < 1e-12);

  ProcessMatrix x, y;
  x.chi(0, 0) = 1.0;
  y.chi(3, 3) = 1.0;
  c = compare(x, y);
  CHECK(c.fidelity == 0.0);
  CHECK(c.trace_distance == doctest::Approx(1.0));

  ProcessMatrix other = a;
  other.basis = "pauli-product";
  CHECK_THROWS_AS(compare(a, other), TomographyError);
}

TEST_CASE("decoherence on the transfer protocols") {
  for (DriveMode mode : {DriveMode::stirap, DriveMode::sastirap}) {
    const DriveConfig c = presets::simulation_grid(mode);
    const ProcessMatrix clean = run_process(c);
    const ProcessMatrix noisy = run_process(c, DecoherenceRates::transmon());
    CHECK(std::abs(clean.chi.trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(noisy.chi.trace().real() - 1.0) < 1e-12);
    CHECK(clean.completely_positive);
    CHECK(noisy.completely_positive);
    const ProcessComparison cmp = compare(clean, noisy);
    CHECK(cmp.definition_sensitive);
    CHECK(std::abs(cmp.process_fidelity - 0.77) < 0.05);
    CHECK(std::abs(cmp.trace_distance - 0.25) < 0.05);
    CHECK(cmp.fidelity > cmp.process_fidelity);
  }
}

TEST_CASE("reconstruction is deterministic") {
  const DriveConfig c = presets::simulation_grid(DriveMode::stirap);
  const ProcessMatrix a = run_process(c);
  const ProcessMatrix b = run_process(c);
  CHECK(a.chi == b.chi);
}

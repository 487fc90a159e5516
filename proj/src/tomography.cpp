#include "mstirap/tomography.hpp"

#include <cmath>
#include <future>

namespace mstirap {

namespace {

constexpr double kMaxCondition = 1e8;
constexpr double kDefinitionTolerance = 0.05;

Vec9 vec(const Mat3& m) { return Eigen::Map<const Vec9>(m.data()); }

Mat3 unvec(const Vec9& v) { return Eigen::Map<const Mat3>(v.data()); }

Mat3 projector(const QutritState& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

}  // namespace

const std::array<Mat3, 9>& operator_basis() {
  static const std::array<Mat3, 9> basis = [] {
    std::array<Mat3, 9> b;
    for (auto& m : b) m = Mat3::Zero();
    b[0] = Mat3::Identity() / std::sqrt(3.0);
    const auto sym = [](Mat3& m, int i, int j) { m(i, j) = m(j, i) = 1.0; };
    const auto asym = [](Mat3& m, int i, int j) {
      m(i, j) = -kI;
      m(j, i) = kI;
    };
    sym(b[1], 0, 1);
    asym(b[2], 0, 1);
    b[3](0, 0) = 1.0;
    b[3](1, 1) = -1.0;
    sym(b[4], 0, 2);
    asym(b[5], 0, 2);
    sym(b[6], 1, 2);
    asym(b[7], 1, 2);
    b[8](0, 0) = b[8](1, 1) = 1.0 / std::sqrt(3.0);
    b[8](2, 2) = -2.0 / std::sqrt(3.0);
    for (int k = 1; k < 9; ++k) b[k] /= std::sqrt(2.0);
    return b;
  }();
  return basis;
}

const std::array<std::string, 9>& operator_basis_names() {
  static const std::array<std::string, 9> names{"I/sqrt3",      "lambda1/sqrt2", "lambda2/sqrt2",
                                                "lambda3/sqrt2", "lambda4/sqrt2", "lambda5/sqrt2",
                                                "lambda6/sqrt2", "lambda7/sqrt2", "lambda8/sqrt2"};
  return names;
}

std::array<QutritState, 9> input_basis() {
  return {QutritState(1, 0, 0),  QutritState(0, 1, 0),  QutritState(0, 0, 1),
          QutritState(1, 1, 0),  QutritState(1, kI, 0), QutritState(0, 1, 1),
          QutritState(0, 1, kI), QutritState(1, 0, 1),  QutritState(1, 0, kI)};
}

const std::array<std::string, 9>& input_basis_labels() {
  static const std::array<std::string, 9> labels{"|0>",         "|1>",         "|2>",
                                                 "(|0>+|1>)/r2", "(|0>+i|1>)/r2", "(|1>+|2>)/r2",
                                                 "(|1>+i|2>)/r2", "(|0>+|2>)/r2", "(|0>+i|2>)/r2"};
  return labels;
}

Mat3 ProcessMatrix::apply(const Mat3& rho) const {
  const auto& b = operator_basis();
  Mat3 out = Mat3::Zero();
  for (int m = 0; m < 9; ++m) {
    const Mat3 left = b[m] * rho;
    for (int n = 0; n < 9; ++n) {
      if (chi(m, n) != cplx(0.0)) out += chi(m, n) * left * b[n].adjoint();
    }
  }
  return raw_trace * out;
}

ProcessMatrix reconstruct_process(const std::vector<Mat3>& inputs, const std::vector<Mat3>& outputs) {
  if (inputs.size() != 9 || outputs.size() != 9) throw TomographyError("process tomography needs nine input/output pairs");
  Mat9 a, y;
  for (int i = 0; i < 9; ++i) {
    a.col(i) = vec(inputs[i]);
    y.col(i) = vec(outputs[i]);
  }
  const Eigen::JacobiSVD<Mat9> svd(a);
  const auto& sv = svd.singularValues();
  const double cond = sv(8) > 0.0 ? (sv(0) * sv(0)) / (sv(8) * sv(8)) : INFINITY;
  if (!(cond <= kMaxCondition)) throw TomographyError("input Gram matrix is ill-conditioned");

  // Superoperator on column-major vec(rho), then the Choi matrix
  // sum_kl |k><l| (x) E(|k><l|), whose matrix elements in vec(B_m) give chi.
  const Mat9 super = y * a.inverse();
  Mat9 choi = Mat9::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      Mat3 e = Mat3::Zero();
      e(k, l) = 1.0;
      choi.block<3, 3>(3 * k, 3 * l) = unvec(super * vec(e));
    }
  }
  Mat9 basis_vecs;
  for (int m = 0; m < 9; ++m) basis_vecs.col(m) = vec(operator_basis()[m]);

  ProcessMatrix p;
  p.chi = basis_vecs.adjoint() * choi * basis_vecs;
  p.chi = 0.5 * (p.chi + p.chi.adjoint()).eval();
  p.raw_trace = p.chi.trace().real();
  p.chi /= p.raw_trace;
  p.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat9>(p.chi, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  p.completely_positive = p.min_eigenvalue >= -1e-6;
  return p;
}

ProcessMatrix process_of(const Channel& channel) {
  std::vector<Mat3> in, out;
  for (const QutritState& s : input_basis()) {
    in.push_back(projector(s));
    out.push_back(channel(in.back()));
  }
  return reconstruct_process(in, out);
}

ProcessMatrix run_process(const DriveConfig& cfg, const std::optional<DecoherenceRates>& rates) {
  cfg.validate();
  if (rates) rates->validate();
  const TimeGrid grid = TimeGrid::of(cfg);
  const HamiltonianFn h = [cfg](double t) { return hamiltonian(cfg, t).h; };

  const auto evolve_one = [&](const QutritState& s) -> Mat3 {
    if (rates) return integrate_lindblad(h, *rates, grid, projector(s)).back();
    const Amp3 psi = integrate_schrodinger(h, grid, s.amplitudes()).back();
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-6) throw InstabilityError("norm drift during process tomography");
    return psi * psi.adjoint();
  };

  const auto basis = input_basis();
  std::vector<std::future<Mat3>> jobs;
  for (const QutritState& s : basis) jobs.push_back(std::async(std::launch::async, evolve_one, s));
  std::vector<Mat3> in, out;
  for (int i = 0; i < 9; ++i) {
    in.push_back(projector(basis[i]));
    out.push_back(jobs[i].get());
  }
  return reconstruct_process(in, out);
}

ProcessComparison compare(const ProcessMatrix& a, const ProcessMatrix& b) {
  if (a.basis != b.basis) throw TomographyError("cannot compare process matrices in different bases");
  const double overlap = (a.chi * b.chi).trace().real();
  const double pa = (a.chi * a.chi).trace().real();
  const double pb = (b.chi * b.chi).trace().real();
  const Mat9 d = a.chi - b.chi;
  const Mat9 herm = 0.5 * (d + d.adjoint());
  const double td =
      0.5 * Eigen::SelfAdjointEigenSolver<Mat9>(herm, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
  const double fid = overlap / std::sqrt(pa * pb);
  return {fid, overlap, td, std::abs(fid - overlap) > kDefinitionTolerance};
}

}  // namespace mstirap

#include "mstirap/random.hpp"

namespace mstirap {

namespace {

Mat3 ginibre(Rng& rng) {
  std::normal_distribution<double> n;
  Mat3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = cplx(n(rng), n(rng));
  }
  return g;
}

}  // namespace

QutritState random_state(Rng& rng) {
  std::normal_distribution<double> n;
  Amp3 a;
  for (int i = 0; i < 3; ++i) a(i) = cplx(n(rng), n(rng));
  return QutritState(a);
}

DensityMatrix random_density_matrix(Rng& rng) {
  const Mat3 g = ginibre(rng);
  Mat3 rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

Mat3 random_unitary(Rng& rng) {
  const Eigen::HouseholderQR<Mat3> qr(ginibre(rng));
  Mat3 q = qr.householderQ();
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 3; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

}  // namespace mstirap

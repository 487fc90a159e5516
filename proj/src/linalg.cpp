#include "mstirap/linalg.hpp"

#include <cmath>

namespace mstirap {

Mat3 spin_x() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat3 m = Mat3::Zero();
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = s;
  return m;
}

Mat3 spin_y() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat3 m = Mat3::Zero();
  m(0, 1) = -kI * s;
  m(1, 0) = kI * s;
  m(1, 2) = -kI * s;
  m(2, 1) = kI * s;
  return m;
}

Mat3 spin_z() {
  Mat3 m = Mat3::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

double hermiticity_residual(const Mat3& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace mstirap

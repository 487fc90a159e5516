#pragma once

#include <complex>

#include <Eigen/Dense>

namespace mstirap {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Amp3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Spin-1 operators in the {|0>,|1>,|2>} = {m=+1, 0, -1} basis, hbar = 1.
Mat3 spin_x();
Mat3 spin_y();
Mat3 spin_z();

double hermiticity_residual(const Mat3& m);

}  // namespace mstirap

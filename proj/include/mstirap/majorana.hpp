#pragma once

// Majorana stellar representation of qutrit (spin-1) pure states.
//
// Basis convention: |0> = |1,+1>, |1> = |1,0>, |2> = |1,-1>. A state
// c0|0> + c1|1> + c2|2> maps to P(z) = a0 z^2 + a1 z + a2 with
// a0 = c0/sqrt2, a1 = -c1, a2 = c2/sqrt2. The roots z = tan(theta/2) e^{i phi}
// are lifted to the unit sphere by inverse stereographic projection from the
// South Pole, so a root at infinity is a South-Pole star.

#include <array>
#include <utility>

#include "mstirap/linalg.hpp"

namespace mstirap {

class QutritState {
 public:
  QutritState() : amp_(1.0, 0.0, 0.0) {}
  /// Normalizes the amplitudes. Throws std::invalid_argument on a zero vector.
  QutritState(cplx c0, cplx c1, cplx c2);
  explicit QutritState(const Amp3& amplitudes);

  static QutritState basis(int level);

  cplx c0() const { return amp_(0); }
  cplx c1() const { return amp_(1); }
  cplx c2() const { return amp_(2); }
  cplx operator[](int i) const { return amp_(i); }
  const Amp3& amplitudes() const { return amp_; }

  double population(int level) const { return std::norm(amp_(level)); }
  /// |<this|other>|^2
  double fidelity(const QutritState& other) const;

 private:
  Amp3 amp_;
};

struct MajoranaPolynomial {
  cplx a0, a1, a2;

  cplx operator()(cplx z) const { return (a0 * z + a1) * z + a2; }
  double max_abs_coeff() const;
};

class MajoranaStar {
 public:
  MajoranaStar() = default;
  /// theta is clamped to [0, pi], phi wrapped to [0, 2pi).
  MajoranaStar(double theta, double phi);

  static MajoranaStar north() { return {0.0, 0.0}; }
  static MajoranaStar south() { return {kPi, 0.0}; }
  static MajoranaStar from_cartesian(const Vec3& v);
  /// Inverse stereographic image of a finite root.
  static MajoranaStar from_root(cplx z);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  const Vec3& cart() const { return cart_; }

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
  Vec3 cart_ = Vec3::UnitZ();
};

double angular_distance(const MajoranaStar& a, const MajoranaStar& b);

class MajoranaConstellation {
 public:
  MajoranaConstellation() : MajoranaConstellation(MajoranaStar::north(), MajoranaStar::north()) {}
  MajoranaConstellation(const MajoranaStar& s1, const MajoranaStar& s2);

  const MajoranaStar& s1() const { return s1_; }
  const MajoranaStar& s2() const { return s2_; }
  double eta() const { return eta_; }
  MajoranaConstellation swapped() const { return {s2_, s1_}; }

 private:
  MajoranaStar s1_, s2_;
  double eta_;
};

/// Unordered comparison: the cheaper of the two star pairings must match
/// star-by-star within tol radians.
bool same_constellation(const MajoranaConstellation& a, const MajoranaConstellation& b,
                        double tol = 1e-8);

struct SpinVector {
  double jx = 0.0, jy = 0.0, jz = 0.0;

  Vec3 vec() const { return {jx, jy, jz}; }
  double norm() const { return vec().norm(); }
  static SpinVector from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

MajoranaPolynomial to_polynomial(const QutritState& state);
/// Inverse of to_polynomial, normalized. Throws on the zero polynomial.
QutritState from_polynomial(const MajoranaPolynomial& poly);

/// Roots of a0 z^2 + a1 z + a2. A vanishing leading coefficient (relative
/// threshold 1e-12) puts one root at infinity, reported as nullopt-like flag.
struct QuadraticRoots {
  std::array<cplx, 2> z;
  std::array<bool, 2> at_infinity{false, false};
};
QuadraticRoots solve_majorana_roots(const MajoranaPolynomial& poly);

MajoranaConstellation stars_of(const QutritState& state);
/// Global phase fixed so the first nonzero amplitude is real-positive.
QutritState state_of(const MajoranaConstellation& constellation);
/// Puts the first amplitude above 1e-12 on the positive real axis.
QutritState canonical_gauge(const QutritState& state);

double separation(const MajoranaConstellation& c);
double concurrence_from_eta(double eta);
double concurrence(const MajoranaConstellation& c);

SpinVector spin_average(const QutritState& state);
SpinVector spin_average_geometric(const MajoranaConstellation& c);
/// 2 cos(eta/2) / (1 + cos^2(eta/2))
double spin_length_from_eta(double eta);

// Instantaneous eigenbasis of the resonant STIRAP Hamiltonian in the gauge
// phi01 = phi12 = 0, parametrized by the mixing angle.
QutritState dark_state(double mixing_angle);
/// {|n+>, |n->}
std::pair<QutritState, QutritState> bright_states(double mixing_angle);

struct DarkStarCoordinates {
  double x, z;      ///< stars at (-x, 0, z) and (+x, 0, z)
  double colatitude;
};
DarkStarCoordinates dark_star_coordinates(double mixing_angle);

/// |<psi|D>|^2 evaluated from the star angles alone.
double dark_fidelity(const QutritState& state, double mixing_angle);
double dark_fidelity(const MajoranaConstellation& c, double mixing_angle);

/// p1 = |c0|^2 |z1 + z2|^2 / 2; falls back to |c1|^2 when |c0|^2 < 1e-12.
double intermediate_population_geometric(const QutritState& state);

enum class Axis { x, y, z };

/// Action of J_axis as a first-order differential operator in z on P(z).
MajoranaPolynomial j_operator_on_polynomial(Axis which, const MajoranaPolynomial& poly);

struct SymmetrizedQubits {
  Eigen::Vector2cd qubit1, qubit2;
  /// 1 / sqrt(2 [1 + cos^2(eta/2)])
  double normalization;
  /// Symmetric two-qubit state in the |uu>, |ud>, |du>, |dd> basis.
  Eigen::Vector4cd two_qubit_state() const;
  /// Bloch vector of either single-qubit reduced state.
  Vec3 reduced_bloch_vector() const;
  /// Reduced state computed by partial trace of two_qubit_state().
  Eigen::Matrix2cd reduced_density_matrix() const;
};

SymmetrizedQubits symmetrized_qubits(const MajoranaConstellation& c);
/// Maps the symmetric two-qubit state back to qutrit amplitudes.
QutritState qutrit_from_symmetric(const Eigen::Vector4cd& two_qubit);
/// sqrt(2 (1 - Tr rho_red^2))
double concurrence_from_purity(const Eigen::Matrix2cd& reduced);

}  // namespace mstirap

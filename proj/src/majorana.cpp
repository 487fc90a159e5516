#include "mstirap/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mstirap {

namespace {

const double kSqrt2 = std::sqrt(2.0);
constexpr double kInfinityThreshold = 1e-12;

double wrap_phi(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

// Homogeneous spinor (u, v) of a star: z = v / u.
std::pair<cplx, cplx> spinor(const MajoranaStar& s) {
  return {std::cos(s.theta() / 2.0), std::sin(s.theta() / 2.0) * std::polar(1.0, s.phi())};
}

}  // namespace

QutritState::QutritState(cplx c0, cplx c1, cplx c2) : QutritState(Amp3(c0, c1, c2)) {}

QutritState::QutritState(const Amp3& amplitudes) : amp_(amplitudes) {
  const double n = amp_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("QutritState: zero or non-finite amplitudes");
  amp_ /= n;
}

QutritState QutritState::basis(int level) {
  if (level < 0 || level > 2) throw std::out_of_range("QutritState::basis: level must be 0, 1 or 2");
  Amp3 a = Amp3::Zero();
  a(level) = 1.0;
  return QutritState(a);
}

double QutritState::fidelity(const QutritState& other) const {
  return std::norm(amp_.dot(other.amp_));
}

double MajoranaPolynomial::max_abs_coeff() const {
  return std::max({std::abs(a0), std::abs(a1), std::abs(a2)});
}

MajoranaStar::MajoranaStar(double theta, double phi)
    : theta_(std::clamp(theta, 0.0, kPi)), phi_(wrap_phi(phi)) {
  const double st = std::sin(theta_);
  cart_ = Vec3(st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_));
}

MajoranaStar MajoranaStar::from_cartesian(const Vec3& v) {
  const Vec3 u = v.normalized();
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  return {theta, std::atan2(u.y(), u.x())};
}

MajoranaStar MajoranaStar::from_root(cplx z) {
  return {2.0 * std::atan(std::abs(z)), std::arg(z)};
}

double angular_distance(const MajoranaStar& a, const MajoranaStar& b) {
  return std::atan2(a.cart().cross(b.cart()).norm(), a.cart().dot(b.cart()));
}

MajoranaConstellation::MajoranaConstellation(const MajoranaStar& s1, const MajoranaStar& s2)
    : s1_(s1), s2_(s2), eta_(std::acos(std::clamp(s1.cart().dot(s2.cart()), -1.0, 1.0))) {}

bool same_constellation(const MajoranaConstellation& a, const MajoranaConstellation& b, double tol) {
  const double d11 = angular_distance(a.s1(), b.s1());
  const double d22 = angular_distance(a.s2(), b.s2());
  const double d12 = angular_distance(a.s1(), b.s2());
  const double d21 = angular_distance(a.s2(), b.s1());
  if (d11 + d22 <= d12 + d21) return d11 <= tol && d22 <= tol;
  return d12 <= tol && d21 <= tol;
}

MajoranaPolynomial to_polynomial(const QutritState& s) {
  return {s.c0() / kSqrt2, -s.c1(), s.c2() / kSqrt2};
}

QutritState from_polynomial(const MajoranaPolynomial& p) {
  return QutritState(kSqrt2 * p.a0, -p.a1, kSqrt2 * p.a2);
}

QuadraticRoots solve_majorana_roots(const MajoranaPolynomial& p) {
  QuadraticRoots r;
  const double scale = p.max_abs_coeff();
  const double thresh = kInfinityThreshold * scale;
  if (std::abs(p.a0) < thresh) {
    r.at_infinity[1] = true;
    if (std::abs(p.a1) < thresh) {
      r.at_infinity[0] = true;
    } else {
      r.z[0] = -p.a2 / p.a1;
    }
    return r;
  }
  // q = -(b + s sqrt(disc)) / 2 with s aligned to b; the roots are q/a and c/q.
  const cplx disc = p.a1 * p.a1 - 4.0 * p.a0 * p.a2;
  cplx sq = std::sqrt(disc);
  if ((std::conj(p.a1) * sq).real() < 0.0) sq = -sq;
  const cplx q = -0.5 * (p.a1 + sq);
  if (q == cplx(0.0)) {
    // b = 0 and disc = 0, hence c = 0: double root at the origin.
    r.z = {cplx(0.0), cplx(0.0)};
    return r;
  }
  r.z = {q / p.a0, p.a2 / q};
  return r;
}

MajoranaConstellation stars_of(const QutritState& state) {
  const QuadraticRoots roots = solve_majorana_roots(to_polynomial(state));
  std::array<MajoranaStar, 2> s;
  for (int k = 0; k < 2; ++k) {
    s[k] = roots.at_infinity[k] ? MajoranaStar::south() : MajoranaStar::from_root(roots.z[k]);
  }
  return {s[0], s[1]};
}

QutritState canonical_gauge(const QutritState& state) {
  for (int k = 0; k < 3; ++k) {
    const cplx c = state[k];
    if (std::abs(c) > 1e-12) return QutritState(state.amplitudes() * (std::abs(c) / c));
  }
  return state;
}

QutritState state_of(const MajoranaConstellation& c) {
  // P(z) = (u1 z - v1)(u2 z - v2); a South-Pole star has u = 0 and lowers the degree.
  const auto [u1, v1] = spinor(c.s1());
  const auto [u2, v2] = spinor(c.s2());
  const MajoranaPolynomial p{u1 * u2, -(u1 * v2 + u2 * v1), v1 * v2};
  return canonical_gauge(from_polynomial(p));
}

double separation(const MajoranaConstellation& c) {
  const auto& a = c.s1();
  const auto& b = c.s2();
  const double cos_eta = std::sin(a.theta()) * std::sin(b.theta()) * std::cos(a.phi() - b.phi()) +
                         std::cos(a.theta()) * std::cos(b.theta());
  return std::acos(std::clamp(cos_eta, -1.0, 1.0));
}

double concurrence_from_eta(double eta) {
  const double c = std::cos(eta / 2.0);
  const double s = std::sin(eta / 2.0);
  return s * s / (1.0 + c * c);
}

double concurrence(const MajoranaConstellation& c) { return concurrence_from_eta(c.eta()); }

SpinVector spin_average(const QutritState& state) {
  const Amp3& a = state.amplitudes();
  return {a.dot(spin_x() * a).real(), a.dot(spin_y() * a).real(), a.dot(spin_z() * a).real()};
}

SpinVector spin_average_geometric(const MajoranaConstellation& c) {
  const Vec3& s1 = c.s1().cart();
  const Vec3& s2 = c.s2().cart();
  return SpinVector::from(2.0 * (s1 + s2) / (3.0 + s1.dot(s2)));
}

double spin_length_from_eta(double eta) {
  const double c = std::cos(eta / 2.0);
  return 2.0 * std::abs(c) / (1.0 + c * c);
}

QutritState dark_state(double mixing_angle) {
  return QutritState(std::cos(mixing_angle), 0.0, -std::sin(mixing_angle));
}

std::pair<QutritState, QutritState> bright_states(double mixing_angle) {
  const double s = std::sin(mixing_angle) / kSqrt2;
  const double c = std::cos(mixing_angle) / kSqrt2;
  const double m = 1.0 / kSqrt2;
  return {QutritState(s, m, c), QutritState(s, -m, c)};
}

DarkStarCoordinates dark_star_coordinates(double mixing_angle) {
  const double c = std::cos(mixing_angle);
  const double s = std::sin(mixing_angle);
  const double x = std::sqrt(std::max(0.0, 2.0 * std::sin(2.0 * mixing_angle))) / (c + s);
  const double z = (c - s) / (c + s);
  // colatitude pi - 2 arctan sqrt(cot Theta)
  const double colat = s == 0.0 ? 0.0 : kPi - 2.0 * std::atan(std::sqrt(std::max(0.0, c / s)));
  return {x, z, colat};
}

double dark_fidelity(const MajoranaConstellation& c, double mixing_angle) {
  const double t1 = c.s1().theta();
  const double t2 = c.s2().theta();
  const double half = std::cos(c.eta() / 2.0);
  const double num = 1.0 + (std::cos(t1) + std::cos(t2)) * std::cos(2.0 * mixing_angle) +
                     std::cos(t1) * std::cos(t2) -
                     std::sin(t1) * std::sin(t2) * std::sin(2.0 * mixing_angle) *
                         std::cos(c.s1().phi() + c.s2().phi());
  return num / (2.0 * (1.0 + half * half));
}

double dark_fidelity(const QutritState& state, double mixing_angle) {
  return dark_fidelity(stars_of(state), mixing_angle);
}

double intermediate_population_geometric(const QutritState& state) {
  const double p0 = state.population(0);
  if (p0 < 1e-12) return state.population(1);
  const QuadraticRoots r = solve_majorana_roots(to_polynomial(state));
  if (r.at_infinity[0] || r.at_infinity[1]) return state.population(1);
  return p0 * std::norm(r.z[0] + r.z[1]) / 2.0;
}

MajoranaPolynomial j_operator_on_polynomial(Axis which, const MajoranaPolynomial& p) {
  // With P = a0 z^2 + a1 z + a2 and P' = 2 a0 z + a1:
  //   -2zP + z^2 P' = -a1 z^2 - 2 a2 z
  //   zP' - P       =  a0 z^2 - a2
  switch (which) {
    case Axis::x:  // (1/2)(-2z + z^2 d - d)
      return {-0.5 * p.a1, -(p.a2 + p.a0), -0.5 * p.a1};
    case Axis::y: {  // (1/2i)(-2z + z^2 d + d)
      const cplx f = 1.0 / (2.0 * kI);
      return {-p.a1 * f, (2.0 * p.a0 - 2.0 * p.a2) * f, p.a1 * f};
    }
    case Axis::z:  // -1 + z d
      return {p.a0, cplx(0.0), -p.a2};
  }
  throw std::invalid_argument("j_operator_on_polynomial: bad axis");
}

Eigen::Vector4cd SymmetrizedQubits::two_qubit_state() const {
  Eigen::Vector4cd a, b;
  a << qubit1(0) * qubit2(0), qubit1(0) * qubit2(1), qubit1(1) * qubit2(0), qubit1(1) * qubit2(1);
  b << qubit2(0) * qubit1(0), qubit2(0) * qubit1(1), qubit2(1) * qubit1(0), qubit2(1) * qubit1(1);
  return normalization * (a + b);
}

Eigen::Matrix2cd SymmetrizedQubits::reduced_density_matrix() const {
  const Eigen::Vector4cd psi = two_qubit_state();
  Eigen::Matrix2cd rho;
  // trace over the second qubit: index = 2*i + k
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      rho(i, j) = psi(2 * i) * std::conj(psi(2 * j)) + psi(2 * i + 1) * std::conj(psi(2 * j + 1));
    }
  }
  return rho;
}

Vec3 SymmetrizedQubits::reduced_bloch_vector() const {
  const Eigen::Matrix2cd rho = reduced_density_matrix();
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

SymmetrizedQubits symmetrized_qubits(const MajoranaConstellation& c) {
  SymmetrizedQubits q;
  const auto [u1, v1] = spinor(c.s1());
  const auto [u2, v2] = spinor(c.s2());
  q.qubit1 << u1, v1;
  q.qubit2 << u2, v2;
  const double half = std::cos(c.eta() / 2.0);
  q.normalization = 1.0 / std::sqrt(2.0 * (1.0 + half * half));
  return q;
}

QutritState qutrit_from_symmetric(const Eigen::Vector4cd& t) {
  return QutritState(t(0), (t(1) + t(2)) / kSqrt2, t(3));
}

double concurrence_from_purity(const Eigen::Matrix2cd& reduced) {
  const double purity = (reduced * reduced).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

}  // namespace mstirap

#pragma once

// Spectral-decomposition Majorana picture of a mixed qutrit: three
// eigenvector constellations drawn on spheres of radius lambda_i.

#include <array>
#include <optional>
#include <vector>

#include "mstirap/dynamics.hpp"
#include "mstirap/majorana.hpp"

namespace mstirap {

enum class EigenLabel { d = 0, e = 1, f = 2 };

char label_char(EigenLabel l);

struct WeightedConstellation {
  double lambda = 0.0;
  QutritState chi;
  MajoranaConstellation constellation;
  EigenLabel label = EigenLabel::d;
  SpinVector j_contrib;  ///< lambda <chi|J|chi>
};

struct SpectralTriple {
  std::array<WeightedConstellation, 3> parts;  ///< indexed by EigenLabel
  bool degenerate = false;                     ///< some eigenvalue gap < 1e-9

  const WeightedConstellation& operator[](EigenLabel l) const { return parts[static_cast<int>(l)]; }
  WeightedConstellation& operator[](EigenLabel l) { return parts[static_cast<int>(l)]; }
  double purity() const;
  Mat3 reconstruct() const;
};

/// Label d goes to the eigenvector with the largest overlap with dark_ref,
/// e and f to the rest by descending weight. When `previous` is given and
/// the spectrum is degenerate, eigenvectors are rotated inside the
/// degenerate subspace to stay closest to the previous frame.
SpectralTriple decompose(const DensityMatrix& rho, const QutritState& dark_ref,
                         const SpectralTriple* previous = nullptr);

/// Contribution of one weighted constellation to <J>:
/// 2 lambda^2 OO' / (lambda^2 + |OO'|^2) with OO' the star bisector on the
/// radius-lambda sphere, which equals lambda <chi|J|chi>.
SpinVector weighted_spin_average(double lambda, const MajoranaConstellation& c);
SpinVector mixed_spin_average(const SpectralTriple& triple);

struct QubitSpectral {
  double lambda_e, lambda_f;  ///< (1 + r)/2, (1 - r)/2
  MajoranaStar star_e, star_f;
};

/// Spin-1/2 analogue: the single Majorana star of each eigenvector of a
/// 2x2 density matrix.
QubitSpectral decompose_qubit(const Eigen::Matrix2cd& rho);

struct MixedTrajectory {
  std::vector<SpectralTriple> steps;
  std::vector<double> purity;
  std::vector<double> dark_fidelity;
  int degenerate_steps = 0;
  double min_label_d_overlap = 1.0;  ///< min_k |<chi_d(k)|chi_d(k-1)>|^2
};

/// Decomposes each step of a Lindblad record, pairs stars within each label
/// for continuity, and fills the record's star columns from chi_d.
MixedTrajectory mixed_trajectory(const TrajectoryRecord& record);
void fill_mixed_metrics(TrajectoryRecord& record, const MixedTrajectory& mixed);

}  // namespace mstirap

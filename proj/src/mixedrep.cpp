#include "mstirap/mixedrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mstirap {

namespace {

constexpr double kDegeneracyGap = 1e-9;

// Orthonormal basis of span(vectors) chosen to stay closest to `reference`:
// reference vectors are projected onto the subspace and orthonormalized in
// order of decreasing projected norm.
std::vector<Amp3> align_subspace(const std::vector<Amp3>& vectors, const std::array<Amp3, 3>& reference) {
  Mat3 proj = Mat3::Zero();
  for (const Amp3& v : vectors) proj += v * v.adjoint();
  std::array<int, 3> order{0, 1, 2};
  std::array<double, 3> weight;
  for (int i = 0; i < 3; ++i) weight[i] = (proj * reference[i]).norm();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });

  std::vector<Amp3> out;
  for (int i : order) {
    if (out.size() == vectors.size()) break;
    Amp3 w = proj * reference[i];
    for (const Amp3& o : out) w -= o.dot(w) * o;
    if (w.norm() > 1e-6) out.push_back(w.normalized());
  }
  // Reference too far from the subspace: complete with the solver's vectors.
  for (const Amp3& v : vectors) {
    if (out.size() == vectors.size()) break;
    Amp3 w = v;
    for (const Amp3& o : out) w -= o.dot(w) * o;
    if (w.norm() > 1e-6) out.push_back(w.normalized());
  }
  return out;
}

}  // namespace

char label_char(EigenLabel l) {
  switch (l) {
    case EigenLabel::d: return 'd';
    case EigenLabel::e: return 'e';
    case EigenLabel::f: return 'f';
  }
  return '?';
}

double SpectralTriple::purity() const {
  double p = 0.0;
  for (const auto& w : parts) p += w.lambda * w.lambda;
  return p;
}

Mat3 SpectralTriple::reconstruct() const {
  Mat3 m = Mat3::Zero();
  for (const auto& w : parts) m += w.lambda * w.chi.amplitudes() * w.chi.amplitudes().adjoint();
  return m;
}

SpinVector weighted_spin_average(double lambda, const MajoranaConstellation& c) {
  if (lambda <= 0.0) return {};
  const Vec3 oo = lambda * (c.s1().cart() + c.s2().cart()) / 2.0;
  return SpinVector::from(2.0 * lambda * lambda * oo / (lambda * lambda + oo.squaredNorm()));
}

SpinVector mixed_spin_average(const SpectralTriple& triple) {
  Vec3 total = Vec3::Zero();
  for (const auto& w : triple.parts) total += w.j_contrib.vec();
  return SpinVector::from(total);
}

SpectralTriple decompose(const DensityMatrix& rho, const QutritState& dark_ref, const SpectralTriple* previous) {
  const Mat3 herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3> solver(herm);
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  std::array<Amp3, 3> evecs;
  for (int i = 0; i < 3; ++i) evecs[i] = solver.eigenvectors().col(i);

  SpectralTriple out;
  out.degenerate = (evals(1) - evals(0) < kDegeneracyGap) || (evals(2) - evals(1) < kDegeneracyGap);

  if (out.degenerate && previous != nullptr) {
    std::array<Amp3, 3> reference;
    for (int i = 0; i < 3; ++i) reference[i] = previous->parts[i].chi.amplitudes();
    // Group consecutive eigenvalues closer than the gap threshold.
    int start = 0;
    while (start < 3) {
      int end = start + 1;
      while (end < 3 && evals(end) - evals(end - 1) < kDegeneracyGap) ++end;
      if (end - start > 1) {
        std::vector<Amp3> block(evecs.begin() + start, evecs.begin() + end);
        const std::vector<Amp3> aligned = align_subspace(block, reference);
        for (int i = start; i < end; ++i) evecs[i] = aligned[i - start];
      }
      start = end;
    }
  }

  std::array<double, 3> overlap;
  for (int i = 0; i < 3; ++i) overlap[i] = std::norm(evecs[i].dot(dark_ref.amplitudes()));
  int id = 0;
  for (int i = 1; i < 3; ++i) {
    // Ties go to the larger eigenvalue.
    if (overlap[i] >= overlap[id]) id = i;
  }
  std::vector<int> rest;
  for (int i = 2; i >= 0; --i) {
    if (i != id) rest.push_back(i);  // descending eigenvalue
  }

  if (previous != nullptr && std::abs(evals(rest[0]) - evals(rest[1])) < kDegeneracyGap) {
    const auto fid = [&](int i, EigenLabel l) { return std::norm((*previous)[l].chi.amplitudes().dot(evecs[i])); };
    if (fid(rest[1], EigenLabel::e) + fid(rest[0], EigenLabel::f) >
        fid(rest[0], EigenLabel::e) + fid(rest[1], EigenLabel::f)) {
      std::swap(rest[0], rest[1]);
    }
  }
  const std::array<int, 3> source{id, rest[0], rest[1]};
  for (int k = 0; k < 3; ++k) {
    WeightedConstellation& w = out.parts[k];
    w.label = static_cast<EigenLabel>(k);
    w.lambda = std::max(0.0, evals(source[k]));
    w.chi = canonical_gauge(QutritState(evecs[source[k]]));
    w.constellation = stars_of(w.chi);
    w.j_contrib = weighted_spin_average(w.lambda, w.constellation);
  }
  return out;
}

QubitSpectral decompose_qubit(const Eigen::Matrix2cd& rho) {
  const Eigen::Matrix2cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(herm);
  const auto star = [](const Eigen::Vector2cd& v) {
    if (std::abs(v(0)) < 1e-12 * v.norm()) return MajoranaStar::south();
    return MajoranaStar::from_root(v(1) / v(0));
  };
  return {solver.eigenvalues()(1), solver.eigenvalues()(0), star(solver.eigenvectors().col(1)),
          star(solver.eigenvectors().col(0))};
}

MixedTrajectory mixed_trajectory(const TrajectoryRecord& record) {
  MixedTrajectory out;
  out.steps.reserve(record.rhos.size());
  for (std::size_t k = 0; k < record.rhos.size(); ++k) {
    const DensityMatrix& rho = record.rhos[k];
    const QutritState dark = dark_state(mixing_angle(record.cfg, record.times[k]).theta);
    const SpectralTriple* prev = out.steps.empty() ? nullptr : &out.steps.back();
    SpectralTriple triple = decompose(rho, dark, prev);
    if (prev != nullptr) {
      for (int l = 0; l < 3; ++l) {
        auto& w = triple.parts[l];
        w.constellation = pair_stars(prev->parts[l].constellation, w.constellation);
      }
      const double ov = triple[EigenLabel::d].chi.fidelity((*prev)[EigenLabel::d].chi);
      out.min_label_d_overlap = std::min(out.min_label_d_overlap, ov);
    }
    if (triple.degenerate) ++out.degenerate_steps;
    out.purity.push_back(rho.purity());
    out.dark_fidelity.push_back(rho.expectation(dark));
    out.steps.push_back(std::move(triple));
  }
  return out;
}

void fill_mixed_metrics(TrajectoryRecord& record, const MixedTrajectory& mixed) {
  for (std::size_t k = 0; k < record.metrics.size() && k < mixed.steps.size(); ++k) {
    const auto& d = mixed.steps[k][EigenLabel::d].constellation;
    MetricRow& m = record.metrics[k];
    m.eta = d.eta();
    m.concurrence = concurrence(d);
    m.star1 = d.s1().cart();
    m.star2 = d.s2().cart();
  }
}

}  // namespace mstirap

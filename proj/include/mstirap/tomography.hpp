#pragma once

// Qutrit process tomography by linear inversion over nine pure inputs.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mstirap/drive.hpp"
#include "mstirap/dynamics.hpp"

namespace mstirap {

using Mat9 = Eigen::Matrix<cplx, 9, 9>;
using Vec9 = Eigen::Matrix<cplx, 9, 1>;

class TomographyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kOperatorBasisId = "gell-mann-normalized-v1";
inline constexpr const char* kInputBasisId = "nine-state-v1";

/// I/sqrt3 followed by the eight Gell-Mann matrices over sqrt2; orthonormal
/// under Tr(A^+ B).
const std::array<Mat3, 9>& operator_basis();
const std::array<std::string, 9>& operator_basis_names();

/// |0>, |1>, |2>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2, (|1>+|2>)/sqrt2,
/// (|1>+i|2>)/sqrt2, (|0>+|2>)/sqrt2, (|0>+i|2>)/sqrt2
std::array<QutritState, 9> input_basis();
const std::array<std::string, 9>& input_basis_labels();

struct ProcessMatrix {
  Mat9 chi = Mat9::Zero();      ///< trace-normalized
  double raw_trace = 0.0;       ///< trace before normalization (3 for a trace-preserving map)
  std::string basis = kOperatorBasisId;
  std::string inputs = kInputBasisId;
  double min_eigenvalue = 0.0;  ///< complete-positivity diagnostic
  bool completely_positive = true;  ///< min_eigenvalue >= -1e-6

  /// sum chi_mn B_m rho B_n^+, rescaled by raw_trace.
  Mat3 apply(const Mat3& rho) const;
};

using Channel = std::function<Mat3(const Mat3&)>;

/// Throws TomographyError when the inputs' Gram matrix has condition number above 1e8.
ProcessMatrix reconstruct_process(const std::vector<Mat3>& inputs, const std::vector<Mat3>& outputs);
/// Feeds the nine basis states through `channel` and inverts.
ProcessMatrix process_of(const Channel& channel);

/// Evolves each basis input under cfg (Lindblad when rates are given) and
/// inverts. The nine evolutions run concurrently.
ProcessMatrix run_process(const DriveConfig& cfg, const std::optional<DecoherenceRates>& rates = std::nullopt);

struct ProcessComparison {
  double fidelity;          ///< Tr(a b) / sqrt(Tr a^2 Tr b^2)
  double process_fidelity;  ///< Tr(a b), the unnormalized overlap
  double trace_distance;    ///< 1/2 ||a - b||_1
  /// The two fidelity definitions differ by more than 0.05.
  bool definition_sensitive;
};

/// Throws TomographyError if the matrices use different bases.
ProcessComparison compare(const ProcessMatrix& a, const ProcessMatrix& b);

}  // namespace mstirap

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qxp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // dense complex, column-major
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Hard size bound: dense simulation only. 2^12 amplitudes / 4096^2 matrices
// is the largest object the library will allocate on purpose.
inline constexpr int kMaxQubits = 12;

// Centralized numeric tolerances. Every validation threshold in the library
// routes through these constants so they can be audited in one place.
struct Tolerances {
  static constexpr double hermiticity = 1e-10;   // max |A - A†| entry
  static constexpr double unitarity = 1e-12;     // max |U†U - I| entry
  static constexpr double probability = 1e-8;    // |sum - 1| before renormalize
  static constexpr double trace_one = 1e-10;     // |tr(rho) - 1|
  static constexpr double positivity = -1e-8;    // min eigenvalue floor
  static constexpr double kraus_completeness = 1e-10;  // max |sum K†K - I|
  static constexpr double choi_marginal = 1e-9;  // output marginal vs I/2^n
  static constexpr double exactness = 1e-9;      // design-enumeration checks
};

// Error taxonomy. The CLI maps each family to a distinct exit code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates a qubit count for dense allocation and returns the Hilbert-space
// dimension 2^n.
inline std::ptrdiff_t dim_for_qubits(int n, const char* what = "qubit count") {
  if (n < 1 || n > kMaxQubits) {
    throw UsageError(std::string(what) + " must be in [1, " +
                     std::to_string(kMaxQubits) + "], got " +
                     std::to_string(n));
  }
  return std::ptrdiff_t{1} << n;
}

}  // namespace qxp

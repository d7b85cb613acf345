#include "qxp/core/linalg.hpp"

#include <string>

namespace qxp {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw UsageError("kron_all: empty factor list");
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw UsageError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && max_abs_diff(a, a.adjoint()) < tol;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix gram = u.adjoint() * u;
  return max_abs_diff(gram, Matrix::Identity(u.rows(), u.cols())) < tol;
}

void require_hermitian(const Matrix& a, const char* what, double tol) {
  if (!is_hermitian(a, tol)) {
    throw NumericalError(std::string(what) + ": not hermitian within " +
                         std::to_string(tol));
  }
}

void require_unitary(const Matrix& u, const char* what, double tol) {
  if (!is_unitary(u, tol)) {
    throw NumericalError(std::string(what) + ": not unitary within " +
                         std::to_string(tol));
  }
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw UsageError("trace_product: shape mismatch");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  require_hermitian(a, "hermitian_eigenvalues input");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigensolve failed to converge");
  }
  return solver.eigenvalues();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  Matrix diff = a - b;
  // Symmetrize: callers hand in estimates whose hermiticity holds only up to
  // statistical/rounding noise.
  Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("trace_distance eigensolve failed to converge");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qxp

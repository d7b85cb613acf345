#include "qxp/core/state.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qxp {

StateVector::StateVector(int n_, Vector amps_) : n(n_), amps(std::move(amps_)) {
  auto d = dim_for_qubits(n);
  if (amps.size() != d) {
    throw UsageError("state vector length " + std::to_string(amps.size()) +
                     " does not match 2^" + std::to_string(n));
  }
  if (std::abs(amps.norm() - 1.0) > Tolerances::trace_one) {
    throw NumericalError("state vector is not normalized");
  }
}

StateVector StateVector::basis(const Bitstring& bits) {
  Vector amps = Vector::Zero(std::ptrdiff_t{1} << bits.n);
  amps(static_cast<Eigen::Index>(bits.value)) = 1.0;
  return StateVector(bits.n, std::move(amps));
}

DensityMatrix::DensityMatrix(int n_, Matrix mat_) : n(n_), mat(std::move(mat_)) {
  auto d = dim_for_qubits(n);
  if (mat.rows() != d || mat.cols() != d) {
    throw UsageError("density matrix shape does not match 2^" +
                     std::to_string(n));
  }
  require_hermitian(mat, "density matrix");
  if (std::abs(mat.trace().real() - 1.0) > Tolerances::trace_one ||
      std::abs(mat.trace().imag()) > Tolerances::trace_one) {
    throw NumericalError("density matrix trace differs from 1");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.n, psi.amps * psi.amps.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  auto d = dim_for_qubits(n);
  return DensityMatrix(n, Matrix::Identity(d, d) / static_cast<double>(d));
}

void DensityMatrix::validate_positivity() const {
  RealVector evals = hermitian_eigenvalues(mat);
  if (evals.minCoeff() < Tolerances::positivity) {
    throw NumericalError("density matrix has eigenvalue " +
                         std::to_string(evals.minCoeff()) +
                         " below the positivity floor");
  }
}

double purity(const DensityMatrix& rho) {
  return trace_product(rho.mat, rho.mat).real();
}

StateVector maximally_entangled_state(int n) {
  auto d = dim_for_qubits(n, "register qubit count");
  dim_for_qubits(2 * n, "total qubit count");
  Vector amps = Vector::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::ptrdiff_t i = 0; i < d; ++i) amps(i * d + i) = a;
  return StateVector(2 * n, std::move(amps));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int split, Keep which) {
  if (split < 1 || split >= rho.n) {
    throw UsageError("partial_trace: split must leave both registers nonempty");
  }
  const std::ptrdiff_t da = std::ptrdiff_t{1} << split;
  const std::ptrdiff_t db = std::ptrdiff_t{1} << (rho.n - split);
  if (which == Keep::first) {
    Matrix out = Matrix::Zero(da, da);
    for (std::ptrdiff_t i = 0; i < da; ++i) {
      for (std::ptrdiff_t j = 0; j < da; ++j) {
        for (std::ptrdiff_t k = 0; k < db; ++k) {
          out(i, j) += rho.mat(i * db + k, j * db + k);
        }
      }
    }
    return DensityMatrix(split, std::move(out));
  }
  Matrix out = Matrix::Zero(db, db);
  for (std::ptrdiff_t i = 0; i < db; ++i) {
    for (std::ptrdiff_t j = 0; j < db; ++j) {
      for (std::ptrdiff_t k = 0; k < da; ++k) {
        out(i, j) += rho.mat(k * db + i, k * db + j);
      }
    }
  }
  return DensityMatrix(rho.n - split, std::move(out));
}

StateVector apply_unitary(const Matrix& u, const StateVector& psi) {
  if (u.cols() != psi.amps.size()) {
    throw UsageError("apply_unitary: dimension mismatch");
  }
  return StateVector(psi.n, u * psi.amps);
}

DensityMatrix apply_unitary(const Matrix& u, const DensityMatrix& rho) {
  if (u.cols() != rho.mat.rows()) {
    throw UsageError("apply_unitary: dimension mismatch");
  }
  return DensityMatrix(rho.n, u * rho.mat * u.adjoint());
}

RealVector normalize_distribution(RealVector probs, const char* what) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) < 0.0) probs(i) = 0.0;  // rounding dust
    sum += probs(i);
  }
  if (std::abs(sum - 1.0) > Tolerances::probability) {
    throw NumericalError(std::string(what) + ": probabilities sum to " +
                         std::to_string(sum));
  }
  return probs / sum;
}

RealVector born_distribution(const StateVector& psi) {
  return normalize_distribution(psi.amps.cwiseAbs2(), "born_distribution");
}

RealVector born_distribution(const DensityMatrix& rho) {
  return normalize_distribution(rho.mat.diagonal().real(),
                                "born_distribution");
}

}  // namespace qxp

#pragma once

#include <vector>

#include "qxp/core/types.hpp"

namespace qxp {

// Kronecker product. The FIRST factor acts on the more significant bits, so
// kron(A, B) applied to |i⟩|j⟩ (index i*dimB + j) runs A on register i and B
// on register j, consistent with the qubit-0-is-MSB convention.
Matrix kron(const Matrix& a, const Matrix& b);

// Kronecker product of a list, left factor most significant.
Matrix kron_all(const std::vector<Matrix>& factors);

inline Matrix dagger(const Matrix& a) { return a.adjoint(); }

// Largest absolute entry of a - b (0x0 inputs give 0).
double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& a, double tol = Tolerances::hermiticity);
bool is_unitary(const Matrix& u, double tol = Tolerances::unitarity);

// Throws NumericalError when the matrix fails its named property.
void require_hermitian(const Matrix& a, const char* what,
                       double tol = Tolerances::hermiticity);
void require_unitary(const Matrix& u, const char* what,
                     double tol = Tolerances::unitarity);

// tr(a·b) in O(d^2) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

// Ascending eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const Matrix& a);

// Half the 1-norm distance (1/2)·||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace qxp

#include "qxp/core/gates.hpp"

#include <cmath>
#include <numbers>

#include "qxp/core/linalg.hpp"

namespace qxp {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Matrix identity_gate(int n) {
  auto d = dim_for_qubits(n);
  return Matrix::Identity(d, d);
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double r = 1.0 / std::numbers::sqrt2;
  m << r, r, r, -r;
  return m;
}

Matrix s_gate() {
  Matrix m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

Matrix t_gate() {
  Matrix m(2, 2);
  m << 1, 0, 0, std::exp(kI * (std::numbers::pi / 4.0));
  return m;
}

Matrix ry(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

Matrix swap_gate() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Matrix embed_gate(const Matrix& gate, int first, int n) {
  dim_for_qubits(n);
  int gate_qubits = 0;
  for (Eigen::Index d = gate.rows(); d > 1; d >>= 1) ++gate_qubits;
  if (gate.rows() != gate.cols() ||
      gate.rows() != (Eigen::Index{1} << gate_qubits)) {
    throw UsageError("embed_gate: gate dimension is not a power of two");
  }
  if (first < 0 || first + gate_qubits > n) {
    throw UsageError("embed_gate: gate does not fit at requested position");
  }
  Matrix out = gate;
  if (first > 0) out = kron(identity_gate(first), out);
  if (first + gate_qubits < n) {
    out = kron(out, identity_gate(n - first - gate_qubits));
  }
  return out;
}

Matrix pauli_string(const std::vector<int>& factors) {
  if (factors.empty()) throw UsageError("pauli_string: empty factor list");
  std::vector<Matrix> mats;
  mats.reserve(factors.size());
  for (int f : factors) {
    switch (f) {
      case 0: mats.push_back(identity_gate(1)); break;
      case 1: mats.push_back(pauli_x()); break;
      case 2: mats.push_back(pauli_y()); break;
      case 3: mats.push_back(pauli_z()); break;
      default: throw UsageError("pauli_string: factor index must be 0..3");
    }
  }
  return kron_all(mats);
}

}  // namespace qxp

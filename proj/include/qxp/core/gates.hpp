#pragma once

#include "qxp/core/types.hpp"

namespace qxp {

// Standard gate matrices in the computational basis (qubit 0 = MSB).
Matrix identity_gate(int n = 1);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix s_gate();   // diag(1, i)
Matrix t_gate();   // diag(1, exp(i pi/4))
Matrix ry(double theta);

// Two-qubit gates on adjacent registers (control/first operand = MSB qubit).
Matrix cnot();
Matrix cz();
Matrix swap_gate();

// Lifts a gate acting on qubits [first, first + gate_qubits) into the full
// n-qubit space by padding with identities.
Matrix embed_gate(const Matrix& gate, int first, int n);

// n-qubit Pauli string: factor index 0..3 per qubit selects I, X, Y, Z.
Matrix pauli_string(const std::vector<int>& factors);

}  // namespace qxp

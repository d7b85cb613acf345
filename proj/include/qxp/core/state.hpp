#pragma once

#include "qxp/core/bitstring.hpp"
#include "qxp/core/linalg.hpp"
#include "qxp/core/types.hpp"

namespace qxp {

// Normalized pure state on n qubits. Amplitude index uses qubit 0 as MSB.
struct StateVector {
  int n = 0;
  Vector amps;

  StateVector(int n_, Vector amps_);

  // |bits⟩ computational basis state.
  static StateVector basis(const Bitstring& bits);
};

// Hermitian, unit-trace density operator on n qubits. Positivity is an
// invariant of everything the library produces; it is asserted by
// validate_positivity (eigensolve) in tests and diagnostics rather than on
// each construction.
struct DensityMatrix {
  int n = 0;
  Matrix mat;

  DensityMatrix(int n_, Matrix mat_);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n);

  // Throws NumericalError if the minimum eigenvalue is below the tolerance
  // floor.
  void validate_positivity() const;
};

double purity(const DensityMatrix& rho);

// (1/sqrt(2^n)) sum_i |i⟩|i⟩ on 2n qubits. The first n qubits are the
// ancilla/reference register, the last n the main register.
StateVector maximally_entangled_state(int n);

enum class Keep { first, second };

// Reduced state of one register of a bipartite system. `split` is the qubit
// count of the FIRST (most significant) register; `which` names the register
// that is kept.
DensityMatrix partial_trace(const DensityMatrix& rho, int split, Keep which);

StateVector apply_unitary(const Matrix& u, const StateVector& psi);
DensityMatrix apply_unitary(const Matrix& u, const DensityMatrix& rho);

// Computational-basis outcome distribution. Negative rounding dust is
// clipped to zero; a total off by more than the probability tolerance is a
// numerical-integrity error, otherwise the vector is renormalized exactly.
RealVector born_distribution(const StateVector& psi);
RealVector born_distribution(const DensityMatrix& rho);

// Shared tail of the two overloads, exposed for raw probability vectors.
RealVector normalize_distribution(RealVector probs, const char* what);

}  // namespace qxp

#pragma once

#include "qxp/channels/kraus.hpp"
#include "qxp/core/state.hpp"
#include "qxp/fidelity.hpp"

namespace qxp {

// Normalized Choi state of an n-qubit process: the maximally entangled state
// on 2n qubits with the process applied to the main (last n) register. A
// unit-trace density matrix; pure iff the process is unitary.
struct ChoiMatrix {
  int n = 0;           // process qubit count; the state lives on 2n qubits
  DensityMatrix state;

  ChoiMatrix(int n_, DensityMatrix state_);
};

ChoiMatrix choi_of_channel(const KrausChannel& ch);

// Reduced state of the ancilla register; equals I/2^n exactly when the
// channel is trace preserving. Exposed as a diagnostic.
DensityMatrix choi_ancilla_marginal(const ChoiMatrix& choi);

double choi_purity(const ChoiMatrix& choi);

// Hilbert-Schmidt overlap tr(eta_a · eta_b); real for Hermitian inputs, with
// the imaginary residue checked against the probability tolerance.
double exact_overlap(const ChoiMatrix& a, const ChoiMatrix& b);

// Oracle value of the comparison figure of merit:
// overlap / max(purity_i, purity_j), with zero error bar.
FidelityEstimate exact_max_fidelity(const ChoiMatrix& a, const ChoiMatrix& b);

// Same figure of merit for a pair of states rather than processes.
FidelityEstimate exact_max_state_fidelity(const DensityMatrix& a,
                                          const DensityMatrix& b);

}  // namespace qxp

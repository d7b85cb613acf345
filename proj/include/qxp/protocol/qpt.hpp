#pragma once

#include "qxp/protocol/dataset.hpp"

namespace qxp {

// Linear-inversion tomography from a randomized-measurement run. Process
// layouts reconstruct the normalized input-output state on 2n qubits; the
// state layout reconstructs the n-qubit density matrix. Each draw
// contributes dim * U^dag diag(W p_hat) U with U the measured product basis,
// which averages to the true state as draws accumulate.
struct QptResult {
  int qubits = 0;       // register size of the reconstruction
  Matrix estimate;      // raw draw average: Hermitian, unit trace, maybe not PSD
  double trace = 0.0;
  double hermiticity_residue = 0.0;
  double min_eigenvalue = 0.0;
  bool projected = false;  // true when a PSD projection was requested
  Matrix psd_estimate;     // eigenvalue-clipped, trace-renormalized (if projected)
};

QptResult randomized_qpt(const MeasurementDataset& d, bool project = false);

}  // namespace qxp

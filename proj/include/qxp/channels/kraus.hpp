#pragma once

#include <vector>

#include "qxp/core/state.hpp"
#include "qxp/core/types.hpp"

namespace qxp {

// Completely positive trace-preserving map in Kraus form:
// E(rho) = sum_m K_m rho K_m†, with sum_m K_m† K_m = I enforced at
// construction.
struct KrausChannel {
  int n = 0;
  std::vector<Matrix> kraus;

  KrausChannel(int n_, std::vector<Matrix> kraus_);

  // Single unitary Kraus operator (exact pure-state evolution applies).
  bool is_unitary() const;
};

KrausChannel identity_channel(int n);
KrausChannel unitary_channel(const Matrix& u);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// compose(a, b): run a, then b (b is applied after a).
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

// Probabilistic mixture (1 - w)·a + w·b, realized as the Kraus union with
// sqrt(1-w), sqrt(w) prefactors.
KrausChannel mix(const KrausChannel& a, const KrausChannel& b, double w);

}  // namespace qxp

#pragma once

#include <cstdint>

namespace qxp {

// Result record for a pairwise comparison: the Hilbert-Schmidt overlap, the
// two purities, the ratio f_max = overlap / max(purity_i, purity_j), and a
// leave-one-draw-out jackknife standard error of that ratio (0 for exact
// computations). The error field is std_err, not stderr, because stdio
// reserves the latter as a macro.
struct FidelityEstimate {
  double overlap = 0.0;
  double purity_i = 0.0;
  double purity_j = 0.0;
  double f_max = 0.0;
  double std_err = 0.0;
  int n_draws = 0;            // 0 for exact (oracle) values
  std::int64_t shots = 0;     // 0 for exact-probability data
};

}  // namespace qxp

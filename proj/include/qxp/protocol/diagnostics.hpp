#pragma once

#include "qxp/protocol/dataset.hpp"

namespace qxp {

// Total counts (or probability mass) seen on each input-register pattern of
// a joint-layout run, summed over draws. On entangled-register data this
// marginal is uniform for every trace-preserving process, making it a
// channel-independent health check of the register readout.
Eigen::VectorXd input_marginal_counts(const MeasurementDataset& d);

// Pearson statistic of the counts against a uniform distribution.
double chi_square_uniform_statistic(const Eigen::VectorXd& counts);

// 99.9th percentile of the chi-square distribution for small dof.
double chi_square_quantile_999(int dof);

}  // namespace qxp

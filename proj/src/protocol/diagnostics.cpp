#include "qxp/protocol/diagnostics.hpp"

namespace qxp {

Eigen::VectorXd input_marginal_counts(const MeasurementDataset& d) {
  if (d.layout != DatasetLayout::joint) {
    throw UsageError(
        "input-marginal diagnostics need joint-layout data; exhaustive runs "
        "fix the input counts by construction");
  }
  const Eigen::Index dim = Eigen::Index{1} << d.n;
  Eigen::VectorXd marginal = Eigen::VectorXd::Zero(dim);
  for (const DrawRecord& rec : d.draws) {
    const Eigen::VectorXd& h = rec.histograms.front();
    for (Eigen::Index s = 0; s < dim; ++s) {
      marginal(s) += h.segment(s * dim, dim).sum();
    }
  }
  return marginal;
}

double chi_square_uniform_statistic(const Eigen::VectorXd& counts) {
  const double total = counts.sum();
  if (counts.size() < 2 || total <= 0.0) {
    throw DegenerateDataError("no counts to test for uniformity");
  }
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    const double dev = counts(i) - expected;
    stat += dev * dev / expected;
  }
  return stat;
}

double chi_square_quantile_999(int dof) {
  switch (dof) {
    case 1: return 10.828;
    case 3: return 16.266;
    case 7: return 24.322;
    case 15: return 37.697;
  }
  throw UsageError("no stored chi-square quantile for " +
                   std::to_string(dof) + " degrees of freedom");
}

}  // namespace qxp

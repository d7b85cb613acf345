#include "qxp/protocol/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qxp {

void hamming_weight_transform(Eigen::Ref<Eigen::VectorXd> v) {
  const Eigen::Index len = v.size();
  if (len < 1 || (len & (len - 1)) != 0) {
    throw UsageError("transform length must be a power of two");
  }
  for (Eigen::Index step = 1; step < len; step <<= 1) {
    for (Eigen::Index base = 0; base < len; base += step << 1) {
      for (Eigen::Index i = base; i < base + step; ++i) {
        const double x0 = v(i);
        const double x1 = v(i + step);
        v(i) = x0 - 0.5 * x1;
        v(i + step) = x1 - 0.5 * x0;
      }
    }
  }
}

namespace {

double quad_form(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd wb = b;
  hamming_weight_transform(wb);
  return a.dot(wb);
}

// Histograms of one draw as a single frequency vector (counts / shots, or
// exact probabilities). Conditional layout stacks the per-input histograms,
// input index in the high bits — matching the joint-layout index order.
Eigen::VectorXd packed_frequencies(const MeasurementDataset& d,
                                   std::size_t r) {
  const DrawRecord& rec = d.draws[r];
  const Eigen::Index hd = Eigen::Index{1} << d.outcome_bits();
  Eigen::VectorXd v(hd * static_cast<Eigen::Index>(rec.histograms.size()));
  for (std::size_t i = 0; i < rec.histograms.size(); ++i) {
    v.segment(static_cast<Eigen::Index>(i) * hd, hd) = rec.histograms[i];
  }
  if (d.shots > 0) v /= static_cast<double>(d.shots);
  return v;
}

// Scale turning the per-draw quadratic form into an overlap contribution.
// Conditional frequencies carry an implicit uniform input weight, which
// cancels the process-overlap prefactor exactly.
double layout_prefactor(const MeasurementDataset& d) {
  switch (d.layout) {
    case DatasetLayout::conditional: return 1.0;
    case DatasetLayout::joint:
      return static_cast<double>(std::uint64_t{1} << (2 * d.n));
    case DatasetLayout::state:
      return static_cast<double>(std::uint64_t{1} << d.n);
  }
  throw UsageError("unknown dataset layout");
}

void require_estimable(const MeasurementDataset& d) {
  if (d.truncated) {
    throw UsageError(
        "refusing to estimate from a truncated run; trim to the common "
        "prefix first");
  }
  if (d.draws.empty()) throw DegenerateDataError("run holds no draws");
}

}  // namespace

Eigen::VectorXd joint_frequency_vector(const MeasurementDataset& d,
                                       std::size_t r) {
  if (r >= d.draws.size()) throw UsageError("draw index out of range");
  Eigen::VectorXd v = packed_frequencies(d, r);
  if (d.layout == DatasetLayout::conditional) {
    v /= static_cast<double>(std::uint64_t{1} << d.n);
  }
  return v;
}

std::vector<double> overlap_contributions(const MeasurementDataset& a,
                                          const MeasurementDataset& b) {
  if (&a == &b) return purity_contributions(a);
  require_aligned(a, b);
  require_estimable(a);
  require_estimable(b);
  const double pref = layout_prefactor(a);
  std::vector<double> out;
  out.reserve(a.draws.size());
  for (std::size_t r = 0; r < a.draws.size(); ++r) {
    out.push_back(pref * quad_form(packed_frequencies(a, r),
                                   packed_frequencies(b, r)));
  }
  return out;
}

std::vector<double> purity_contributions(const MeasurementDataset& d) {
  require_estimable(d);
  if (d.shots == 1) {
    throw DegenerateDataError(
        "collision-corrected purity needs at least two shots per setting");
  }
  const double pref = layout_prefactor(d);
  const double m = static_cast<double>(d.shots);
  std::vector<double> out;
  out.reserve(d.draws.size());
  for (std::size_t r = 0; r < d.draws.size(); ++r) {
    const Eigen::VectorXd v = packed_frequencies(d, r);
    double form = quad_form(v, v);
    if (d.shots > 0) {
      if (d.layout == DatasetLayout::conditional) {
        // Only the same-input diagonal blocks reuse a sample against itself;
        // correcting each block shifts the total by (block - 1) / (M - 1).
        const Eigen::Index hd = Eigen::Index{1} << d.n;
        for (Eigen::Index s = 0; s < (Eigen::Index{1} << d.n); ++s) {
          const Eigen::VectorXd block = v.segment(s * hd, hd);
          form += (quad_form(block, block) - 1.0) / (m - 1.0);
        }
      } else {
        form = (m * form - 1.0) / (m - 1.0);
      }
    }
    out.push_back(pref * form);
  }
  return out;
}

namespace {

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

namespace {

void require_process_layout(const MeasurementDataset& d, const char* what) {
  if (d.layout == DatasetLayout::state) {
    throw UsageError(std::string(what) +
                     " needs process runs (conditional or joint layout), "
                     "not a measurement-only state run");
  }
}

void require_state_layout(const MeasurementDataset& d, const char* what) {
  if (d.layout != DatasetLayout::state) {
    throw UsageError(std::string(what) +
                     " needs measurement-only state runs, not process runs");
  }
}

}  // namespace

double estimate_process_overlap(const MeasurementDataset& a,
                                const MeasurementDataset& b) {
  require_process_layout(a, "a process overlap");
  require_process_layout(b, "a process overlap");
  return mean_of(overlap_contributions(a, b));
}

double estimate_state_overlap(const MeasurementDataset& a,
                              const MeasurementDataset& b) {
  require_state_layout(a, "a state overlap");
  require_state_layout(b, "a state overlap");
  return mean_of(overlap_contributions(a, b));
}

double estimate_purity(const MeasurementDataset& a) {
  return mean_of(purity_contributions(a));
}

double jackknife_stderr(const std::vector<double>& contributions) {
  const std::size_t n = contributions.size();
  if (n < 2) {
    throw UsageError("jackknife needs at least two draws to resample");
  }
  double total = 0.0;
  for (double v : contributions) total += v;
  std::vector<double> reps(n);
  for (std::size_t r = 0; r < n; ++r) {
    reps[r] = (total - contributions[r]) / static_cast<double>(n - 1);
  }
  const double rep_mean = mean_of(reps);
  double ss = 0.0;
  for (double v : reps) ss += (v - rep_mean) * (v - rep_mean);
  return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

namespace {

FidelityEstimate max_fidelity_impl(const MeasurementDataset& a,
                                   const MeasurementDataset& b) {
  const std::vector<double> o = overlap_contributions(a, b);
  const std::vector<double> pa = purity_contributions(a);
  const std::vector<double> pb = &a == &b ? pa : purity_contributions(b);
  const std::size_t n = o.size();
  if (n < 2) {
    throw DegenerateDataError(
        "a fidelity estimate needs at least two draws");
  }
  double so = 0.0, sa = 0.0, sb = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    so += o[r];
    sa += pa[r];
    sb += pb[r];
  }
  const double nn = static_cast<double>(n);
  const double denom = std::max(sa, sb) / nn;
  if (denom < 1e-9) {
    throw DegenerateDataError(
        "purity estimates too small to normalize a fidelity");
  }
  FidelityEstimate est;
  est.overlap = so / nn;
  est.purity_i = sa / nn;
  est.purity_j = sb / nn;
  est.f_max = est.overlap / denom;
  est.n_draws = static_cast<int>(n);
  est.shots = a.shots == b.shots ? a.shots : std::min(a.shots, b.shots);

  std::vector<double> reps(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double ro = (so - o[r]) / (nn - 1.0);
    const double rd = std::max(sa - pa[r], sb - pb[r]) / (nn - 1.0);
    if (rd < 1e-9) {
      throw DegenerateDataError(
          "a leave-one-out purity replicate is not positive; the data are "
          "too noisy for a stable ratio");
    }
    reps[r] = ro / rd;
  }
  const double rep_mean = mean_of(reps);
  double ss = 0.0;
  for (double v : reps) ss += (v - rep_mean) * (v - rep_mean);
  est.std_err = std::sqrt(ss * (nn - 1.0) / nn);
  return est;
}

}  // namespace

FidelityEstimate estimate_max_process_fidelity(const MeasurementDataset& a,
                                               const MeasurementDataset& b) {
  require_process_layout(a, "a process fidelity");
  require_process_layout(b, "a process fidelity");
  return max_fidelity_impl(a, b);
}

FidelityEstimate estimate_max_state_fidelity(const MeasurementDataset& a,
                                             const MeasurementDataset& b) {
  require_state_layout(a, "a state fidelity");
  require_state_layout(b, "a state fidelity");
  return max_fidelity_impl(a, b);
}

}  // namespace qxp

#pragma once

#include <vector>

#include "qxp/fidelity.hpp"
#include "qxp/protocol/dataset.hpp"

namespace qxp {

// In-place application of the Hamming-weight kernel: the tensor power over
// all index bits of [[1, -1/2], [-1/2, 1]], so that (W v)[x] =
// sum_y (-2)^(-hamming(x, y)) v[y]. Length must be a power of two.
void hamming_weight_transform(Eigen::Ref<Eigen::VectorXd> v);

// Estimated probability of each (input, outcome) index pair for one draw:
// conditional histograms are stacked with the uniform input weight applied;
// joint and state histograms are normalized as stored.
Eigen::VectorXd joint_frequency_vector(const MeasurementDataset& d,
                                       std::size_t r);

// Per-draw overlap contributions a_r^T W b_r, scaled per layout so their
// mean estimates tr[eta_a eta_b] (process layouts, Choi-state overlap) or
// tr[rho_a rho_b] (state layout). Runs must be aligned. Passing the same
// object twice routes to purity_contributions (the collision-corrected
// self-overlap); two distinct-but-equal datasets are treated as independent
// and give the uncorrected plug-in product.
std::vector<double> overlap_contributions(const MeasurementDataset& a,
                                          const MeasurementDataset& b);

// Per-draw purity contributions of a single run. Finite-shot data is
// collision-corrected per histogram — counts pair only with other shots,
// never with themselves — which removes the 1/M plug-in bias exactly.
// Needs shots >= 2 (or exact data).
std::vector<double> purity_contributions(const MeasurementDataset& a);

// Mean Choi-state overlap tr[eta_a eta_b] of two process runs (conditional
// or joint layout). Same-object arguments give the corrected purity.
double estimate_process_overlap(const MeasurementDataset& a,
                                const MeasurementDataset& b);

// Mean state overlap tr[rho_a rho_b] of two measurement-only runs (state
// layout). Same-object arguments give the corrected purity.
double estimate_state_overlap(const MeasurementDataset& a,
                              const MeasurementDataset& b);

// Collision-corrected purity of a run, any layout.
double estimate_purity(const MeasurementDataset& a);

// Leave-one-out standard error of the mean of the given contributions.
// Fewer than two contributions cannot be resampled: usage error.
double jackknife_stderr(const std::vector<double>& contributions);

// Ratio estimate overlap / max(purity_i, purity_j) for two process runs,
// with a leave-one-draw-out jackknife standard error of the full ratio
// statistic. Passing the same object twice yields f_max = 1 exactly.
FidelityEstimate estimate_max_process_fidelity(const MeasurementDataset& a,
                                               const MeasurementDataset& b);

// Same ratio statistic for two state-layout runs.
FidelityEstimate estimate_max_state_fidelity(const MeasurementDataset& a,
                                             const MeasurementDataset& b);

}  // namespace qxp

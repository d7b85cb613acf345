#pragma once

#include <string>
#include <vector>

#include "qxp/cli/config.hpp"
#include "qxp/cli/scaling.hpp"
#include "qxp/platform/perf_matrix.hpp"
#include "qxp/protocol/qpt.hpp"

namespace qxp {

// Command bodies as library functions: the executable parses flags and maps
// exceptions to exit codes; everything observable happens here, so tests
// and batch drivers can run the exact command paths in process.

// compare — collect every listed platform under one centrally seeded plan,
// write each dataset and the pairwise max-fidelity matrix. A platform that
// fails is skipped and reported; what completed stays on disk, flagged.
struct CompareOutcome {
  PerfMatrix matrix;                       // over the platforms that completed
  std::vector<std::string> failed;         // labels that did not complete
  std::vector<std::string> failure_notes;  // parallel failure messages
  std::vector<std::string> files;          // paths written, in order
};
CompareOutcome run_compare(const ExperimentConfig& cfg);

// monitor — one immutable session per labeled time point under
// <out>/sessions (collected on first use, loaded afterwards), compared
// pairwise across time points.
struct MonitorOutcome {
  std::vector<std::string> ids;      // time points, in the order given
  std::vector<std::string> created;  // sessions collected by this call
  PerfMatrix matrix;
  std::vector<std::string> files;
};
MonitorOutcome run_monitor(const ExperimentConfig& cfg);

// scaling — budget sweep (error vs total measurement budget, log-log slope)
// or qubit sweep (minimal budget meeting an error target vs register size,
// fitted exponent). Both write plot-ready CSV.
struct BudgetOutcome {
  BudgetStudy study;
  std::string file;
};
BudgetOutcome run_scaling_budget(const ExperimentConfig& cfg, int points,
                                 int repetitions);

struct QubitOutcome {
  QubitStudy study;
  std::string file;
};
QubitOutcome run_scaling_qubits(const ExperimentConfig& cfg, int n_max,
                                double target, int repetitions,
                                std::int64_t shot_ceiling);

// qpt — reconstruct the process state of one platform and write the entry
// table plus diagnostics. With enumerate = true the run covers every
// ensemble pair exactly (single-qubit, locally simulated channels only)
// instead of sampling draws, which removes statistical noise entirely;
// otherwise draws are sampled and shots follow the config (0 = exact
// probabilities per draw).
struct QptOutcome {
  QptResult result;
  bool oracle_known = false;          // channel spec available locally
  double oracle_trace_distance = 0.0;
  std::string file;
};
QptOutcome run_qpt(const ExperimentConfig& cfg, bool enumerate = false);

}  // namespace qxp

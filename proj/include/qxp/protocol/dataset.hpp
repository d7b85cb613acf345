#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qxp/protocol/design.hpp"

namespace qxp {

enum class ProtocolMode { ancilla_free, ancilla_assisted };
enum class InputMode { exhaustive, sampled };

// Histogram layout of one draw record:
//   conditional — 2^n histograms over 2^n outcomes, one per input bitstring
//                 (ancilla-free, exhaustive inputs)
//   joint       — one histogram over 4^n (input, outcome) pairs; produced by
//                 sampled-input ancilla-free runs and by ancilla-assisted
//                 runs, whose first n outcome bits play the input role
//   state       — one histogram over 2^n outcomes (measurement layer only)
enum class DatasetLayout { conditional, joint, state };

std::string protocol_mode_name(ProtocolMode mode);
ProtocolMode protocol_mode_from_name(const std::string& name);
std::string input_mode_name(InputMode mode);
InputMode input_mode_from_name(const std::string& name);
std::string layout_name(DatasetLayout layout);
DatasetLayout layout_from_name(const std::string& name);

struct DrawRecord {
  UnitaryDraw draw;
  // Outcome counts (or exact probabilities when shots = 0), dense by outcome
  // index. Size and count are fixed by the dataset layout.
  std::vector<Eigen::VectorXd> histograms;
};

// Self-describing container for one platform's randomized-measurement run.
// Serialized as versioned JSON; see save/load below. shots = 0 marks
// exact-probability data (the infinite-shot limit).
struct MeasurementDataset {
  int n = 0;  // main-register qubit count
  DesignKind design = DesignKind::clifford24;
  ProtocolMode protocol = ProtocolMode::ancilla_free;
  DatasetLayout layout = DatasetLayout::conditional;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;  // master seed the run derived everything from
  std::string platform;
  std::string timestamp;
  bool truncated = false;
  std::vector<DrawRecord> draws;

  // Bits per histogram index and histograms per draw, fixed by the layout.
  int outcome_bits() const;
  int histograms_per_draw() const;

  void validate() const;  // shape + histogram totals
};

bool datasets_equal(const MeasurementDataset& a, const MeasurementDataset& b);

std::string dataset_to_json(const MeasurementDataset& d);
MeasurementDataset dataset_from_json(const std::string& text);

void save_dataset(const MeasurementDataset& d, const std::string& path);
MeasurementDataset load_dataset(const std::string& path);

// Throws UsageError unless the two runs used the same ensemble kind, qubit
// count, layout, and identical draw lists — the precondition for pairwise
// estimation. Shot counts may differ.
void require_aligned(const MeasurementDataset& a, const MeasurementDataset& b);

// Copies trimmed to the longest common draw prefix; the only sanctioned way
// to compare runs where one side stopped early.
std::pair<MeasurementDataset, MeasurementDataset> trim_to_common_draws(
    const MeasurementDataset& a, const MeasurementDataset& b);

}  // namespace qxp

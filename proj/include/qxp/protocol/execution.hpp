#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qxp/channels/kraus.hpp"
#include "qxp/core/state.hpp"
#include "qxp/protocol/dataset.hpp"
#include "qxp/protocol/design.hpp"

namespace qxp {

// Outcome distributions of one randomized layer pair.
//
// Ancilla-free runs prepare the transposed preparation factor on each input
// bitstring, push it through the process, rotate by the measurement layer,
// and read out. The ancilla-assisted route instead rotates the process's
// maximally-entangled input-output state by (preparation ⊗ measurement) —
// computed deliberately through that state so the two routes stay
// independent implementations of the same physics.

// One distribution over 2^n outcomes per input bitstring (index = input).
std::vector<RealVector> conditional_distributions(const KrausChannel& channel,
                                                  const TwoDesignSet& set,
                                                  const UnitaryDraw& draw);

// Distribution over 4^n (input, outcome) pairs with uniformly weighted
// inputs; index = input * 2^n + outcome.
RealVector joint_distribution(const KrausChannel& channel,
                              const TwoDesignSet& set,
                              const UnitaryDraw& draw);

// Same index convention, first n bits read from the entangled-register
// measurement. Equals joint_distribution for every channel and draw.
RealVector assisted_joint_distribution(const KrausChannel& channel,
                                       const TwoDesignSet& set,
                                       const UnitaryDraw& draw);

// Distribution over 2^n outcomes after the measurement layer only.
RealVector state_distribution(const DensityMatrix& rho,
                              const TwoDesignSet& set,
                              const UnitaryDraw& draw);

// Deterministic stream seeds. Draw seeds depend only on the master seed, so
// every platform in a comparison samples identical layer pairs; shot seeds
// additionally mix in the platform label, so distinct platforms see
// independent shot noise while re-runs of one platform — in process or
// behind a transport — reproduce bit-identical data.
std::uint64_t draw_seed(std::uint64_t master, int draw_index);
std::uint64_t shot_seed(std::uint64_t master, const std::string& platform,
                        int draw_index);
std::uint64_t input_shot_seed(std::uint64_t request_seed, int input_index);

// p itself when shots = 0 (exact mode), otherwise multinomial counts from
// the stream seeded as above.
Eigen::VectorXd histogram_from_distribution(const RealVector& p,
                                            std::int64_t shots,
                                            std::uint64_t seed);

// Histograms of one draw, shaped for the layout implied by protocol and
// input mode. Pure in all arguments: a coordinator and a remote worker
// calling this with the same request produce identical bytes.
std::vector<Eigen::VectorXd> execute_draw(const KrausChannel& channel,
                                          const TwoDesignSet& set,
                                          const UnitaryDraw& draw,
                                          ProtocolMode protocol,
                                          InputMode inputs, std::int64_t shots,
                                          std::uint64_t request_seed);

DatasetLayout layout_for(ProtocolMode protocol, InputMode inputs);

struct RunPlan {
  DesignKind design = DesignKind::clifford24;
  ProtocolMode protocol = ProtocolMode::ancilla_free;
  InputMode inputs = InputMode::exhaustive;
  int draws = 100;
  std::int64_t shots = 0;  // 0 = exact probabilities
  std::uint64_t seed = 0;  // master seed
  std::string platform = "local";
  std::string timestamp;
};

MeasurementDataset collect_process_dataset(const KrausChannel& channel,
                                           const RunPlan& plan);
MeasurementDataset collect_state_dataset(const DensityMatrix& rho,
                                         const RunPlan& plan);

// Exact-probability run over every preparation/measurement pair of a finite
// ensemble: the ensemble average with zero sampling error, so estimates and
// reconstructions match analytic values to numerical precision. Single-qubit
// registers only — the pair count grows as |set|^(2n).
MeasurementDataset enumerate_process_dataset(const KrausChannel& channel,
                                             DesignKind kind,
                                             ProtocolMode protocol);

}  // namespace qxp

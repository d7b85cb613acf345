#include "qxp/protocol/execution.hpp"

#include <functional>

#include "qxp/channels/choi.hpp"
#include "qxp/core/linalg.hpp"

namespace qxp {

namespace {

// |<k| U2 K_j U1^T |s>|^2 summed over Kraus terms: column s is the outcome
// distribution for input s.
RealMatrix conditional_table(const KrausChannel& channel,
                             const TwoDesignSet& set,
                             const UnitaryDraw& draw) {
  if (draw.qubits() != channel.n) {
    throw UsageError("draw and channel disagree on qubit count");
  }
  const Matrix u1t = draw_layer(set, draw, Layer::preparation, true);
  const Matrix u2 = draw_layer(set, draw, Layer::measurement);
  RealMatrix table = RealMatrix::Zero(u2.rows(), u2.cols());
  for (const Matrix& k : channel.kraus) {
    table += (u2 * k * u1t).cwiseAbs2();
  }
  return table;
}

}  // namespace

std::vector<RealVector> conditional_distributions(const KrausChannel& channel,
                                                  const TwoDesignSet& set,
                                                  const UnitaryDraw& draw) {
  const RealMatrix table = conditional_table(channel, set, draw);
  std::vector<RealVector> dists;
  dists.reserve(static_cast<std::size_t>(table.cols()));
  for (Eigen::Index s = 0; s < table.cols(); ++s) {
    dists.push_back(
        normalize_distribution(table.col(s), "conditional distribution"));
  }
  return dists;
}

RealVector joint_distribution(const KrausChannel& channel,
                              const TwoDesignSet& set,
                              const UnitaryDraw& draw) {
  const RealMatrix table = conditional_table(channel, set, draw);
  const Eigen::Index d = table.rows();
  RealVector q(d * d);
  for (Eigen::Index s = 0; s < d; ++s) {
    q.segment(s * d, d) = table.col(s) / static_cast<double>(d);
  }
  return normalize_distribution(q, "joint distribution");
}

RealVector assisted_joint_distribution(const KrausChannel& channel,
                                       const TwoDesignSet& set,
                                       const UnitaryDraw& draw) {
  if (draw.qubits() != channel.n) {
    throw UsageError("draw and channel disagree on qubit count");
  }
  const ChoiMatrix eta = choi_of_channel(channel);
  const Matrix layer = kron(draw_layer(set, draw, Layer::preparation, false),
                            draw_layer(set, draw, Layer::measurement));
  const DensityMatrix rotated = apply_unitary(layer, eta.state);
  return normalize_distribution(born_distribution(rotated),
                                "entangled-register joint distribution");
}

RealVector state_distribution(const DensityMatrix& rho,
                              const TwoDesignSet& set,
                              const UnitaryDraw& draw) {
  if (draw.qubits() != rho.n) {
    throw UsageError("draw and state disagree on qubit count");
  }
  const Matrix u2 = draw_layer(set, draw, Layer::measurement);
  return normalize_distribution(born_distribution(apply_unitary(u2, rho)),
                                "state distribution");
}

std::uint64_t draw_seed(std::uint64_t master, int draw_index) {
  return derive_seed(master, {hash_label("draws"),
                              static_cast<std::uint64_t>(draw_index)});
}

std::uint64_t shot_seed(std::uint64_t master, const std::string& platform,
                        int draw_index) {
  return derive_seed(master, {hash_label("shots"), hash_label(platform),
                              static_cast<std::uint64_t>(draw_index)});
}

std::uint64_t input_shot_seed(std::uint64_t request_seed, int input_index) {
  return derive_seed(request_seed,
                     {static_cast<std::uint64_t>(input_index)});
}

Eigen::VectorXd histogram_from_distribution(const RealVector& p,
                                            std::int64_t shots,
                                            std::uint64_t seed) {
  if (shots == 0) return p;
  Rng rng(seed);
  return sample_outcomes(p, shots, rng);
}

std::vector<Eigen::VectorXd> execute_draw(const KrausChannel& channel,
                                          const TwoDesignSet& set,
                                          const UnitaryDraw& draw,
                                          ProtocolMode protocol,
                                          InputMode inputs, std::int64_t shots,
                                          std::uint64_t request_seed) {
  if (protocol == ProtocolMode::ancilla_assisted) {
    const RealVector q = assisted_joint_distribution(channel, set, draw);
    return {histogram_from_distribution(q, shots,
                                        input_shot_seed(request_seed, 0))};
  }
  if (inputs == InputMode::sampled) {
    const RealVector q = joint_distribution(channel, set, draw);
    return {histogram_from_distribution(q, shots,
                                        input_shot_seed(request_seed, 0))};
  }
  const std::vector<RealVector> dists =
      conditional_distributions(channel, set, draw);
  std::vector<Eigen::VectorXd> hists;
  hists.reserve(dists.size());
  for (std::size_t s = 0; s < dists.size(); ++s) {
    hists.push_back(histogram_from_distribution(
        dists[s], shots, input_shot_seed(request_seed, static_cast<int>(s))));
  }
  return hists;
}

DatasetLayout layout_for(ProtocolMode protocol, InputMode inputs) {
  if (protocol == ProtocolMode::ancilla_assisted) return DatasetLayout::joint;
  return inputs == InputMode::exhaustive ? DatasetLayout::conditional
                                         : DatasetLayout::joint;
}

namespace {

MeasurementDataset collect(const RunPlan& plan, int n, DatasetLayout layout,
                           ProtocolMode protocol,
                           const std::function<std::vector<Eigen::VectorXd>(
                               const UnitaryDraw&, std::uint64_t)>& run) {
  if (plan.draws < 1) throw UsageError("a run needs at least one draw");
  if (plan.shots < 0) throw UsageError("shots must be >= 0");
  MeasurementDataset d;
  d.n = n;
  d.design = plan.design;
  d.protocol = protocol;
  d.layout = layout;
  d.shots = plan.shots;
  d.seed = plan.seed;
  d.platform = plan.platform;
  d.timestamp = plan.timestamp;
  const TwoDesignSet& set = TwoDesignSet::of(plan.design);
  d.draws.reserve(static_cast<std::size_t>(plan.draws));
  for (int r = 0; r < plan.draws; ++r) {
    Rng rng(draw_seed(plan.seed, r));
    DrawRecord rec;
    rec.draw = sample_draw(set, n, rng);
    rec.histograms = run(rec.draw, shot_seed(plan.seed, plan.platform, r));
    d.draws.push_back(std::move(rec));
  }
  d.validate();
  return d;
}

}  // namespace

MeasurementDataset collect_process_dataset(const KrausChannel& channel,
                                           const RunPlan& plan) {
  const TwoDesignSet& set = TwoDesignSet::of(plan.design);
  return collect(plan, channel.n, layout_for(plan.protocol, plan.inputs),
                 plan.protocol,
                 [&](const UnitaryDraw& draw, std::uint64_t request_seed) {
                   return execute_draw(channel, set, draw, plan.protocol,
                                       plan.inputs, plan.shots, request_seed);
                 });
}

MeasurementDataset collect_state_dataset(const DensityMatrix& rho,
                                         const RunPlan& plan) {
  const TwoDesignSet& set = TwoDesignSet::of(plan.design);
  return collect(plan, rho.n, DatasetLayout::state, ProtocolMode::ancilla_free,
                 [&](const UnitaryDraw& draw, std::uint64_t request_seed) {
                   const RealVector p = state_distribution(rho, set, draw);
                   std::vector<Eigen::VectorXd> hists;
                   hists.push_back(histogram_from_distribution(
                       p, plan.shots, input_shot_seed(request_seed, 0)));
                   return hists;
                 });
}

MeasurementDataset enumerate_process_dataset(const KrausChannel& channel,
                                             DesignKind kind,
                                             ProtocolMode protocol) {
  if (channel.n != 1) {
    throw UsageError("full ensemble enumeration covers single-qubit registers");
  }
  const TwoDesignSet& set = TwoDesignSet::of(kind);
  if (set.size() < 1) {
    throw UsageError("enumeration needs a finite ensemble");
  }
  MeasurementDataset d;
  d.n = 1;
  d.design = kind;
  d.protocol = protocol;
  d.layout = layout_for(protocol, InputMode::exhaustive);
  d.shots = 0;
  d.platform = "enumeration";
  d.timestamp = "exact";
  d.draws.reserve(static_cast<std::size_t>(set.size()) *
                  static_cast<std::size_t>(set.size()));
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      DrawRecord rec;
      rec.draw.u1 = {i};
      rec.draw.u2 = {j};
      rec.histograms = execute_draw(channel, set, rec.draw, protocol,
                                    InputMode::exhaustive, 0, 0);
      d.draws.push_back(std::move(rec));
    }
  }
  d.validate();
  return d;
}

}  // namespace qxp

#pragma once

#include "qxp/channels/presets.hpp"
#include "qxp/core/gates.hpp"
#include "qxp/protocol/execution.hpp"

namespace qxp::testing {

// Single-qubit worked-example pair: a Hadamard followed by depolarizing
// noise, and a mixture of the same Hadamard with a fully dephasing branch.
inline KrausChannel noisy_hadamard_depolarized() {
  return compose(unitary_channel(hadamard()),
                 depolarizing_channel(1, 7.0 / 30.0));
}

inline KrausChannel noisy_hadamard_dephased() {
  return mix(unitary_channel(hadamard()), dephasing_channel(1, 1.0),
             1.0 / 5.0);
}

// Exact-probability run over every layer pair of a finite ensemble
// (single-qubit registers): the ensemble average with no sampling error at
// all, so estimates must match analytic values to numerical precision.
inline MeasurementDataset enumerate_process_run(const KrausChannel& ch,
                                                DesignKind kind,
                                                ProtocolMode mode) {
  if (ch.n != 1) throw UsageError("enumeration helper covers n = 1");
  const TwoDesignSet& set = TwoDesignSet::of(kind);
  MeasurementDataset d;
  d.n = 1;
  d.design = kind;
  d.protocol = mode;
  d.layout = layout_for(mode, InputMode::exhaustive);
  d.shots = 0;
  d.platform = "enumeration";
  d.timestamp = "1970-01-01T00:00:00Z";
  for (int i = 0; i < set.size(); ++i) {
    for (int j = 0; j < set.size(); ++j) {
      DrawRecord rec;
      rec.draw.u1 = {i};
      rec.draw.u2 = {j};
      rec.histograms = execute_draw(ch, set, rec.draw, mode,
                                    InputMode::exhaustive, 0, 0);
      d.draws.push_back(std::move(rec));
    }
  }
  d.validate();
  return d;
}

inline MeasurementDataset enumerate_state_run(const DensityMatrix& rho,
                                              DesignKind kind) {
  if (rho.n != 1) throw UsageError("enumeration helper covers n = 1");
  const TwoDesignSet& set = TwoDesignSet::of(kind);
  MeasurementDataset d;
  d.n = 1;
  d.design = kind;
  d.layout = DatasetLayout::state;
  d.shots = 0;
  d.platform = "enumeration";
  d.timestamp = "1970-01-01T00:00:00Z";
  for (int j = 0; j < set.size(); ++j) {
    DrawRecord rec;
    rec.draw.u1 = {0};
    rec.draw.u2 = {j};
    rec.histograms = {state_distribution(rho, set, rec.draw)};
    d.draws.push_back(std::move(rec));
  }
  d.validate();
  return d;
}

}  // namespace qxp::testing

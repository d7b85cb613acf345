#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qxp/platform/session.hpp"
#include "qxp/platform/worker.hpp"
#include "qxp/protocol/execution.hpp"

namespace qxp {

// One comparison endpoint as named on the command line or in a config file:
// either a locally simulated channel or a remote worker address.
//
// Argument grammar:   label=<channel spec>     in-process simulator
//                     label=@host:port         remote worker
PlatformDescriptor parse_platform_arg(const std::string& text);

// Full experiment description. Defaults are 100 draws of the 24-element
// single-qubit Clifford set with 500 shots per circuit and exhaustive
// computational-basis inputs.
struct ExperimentConfig {
  int n = 1;
  DesignKind design = DesignKind::clifford24;
  ProtocolMode protocol = ProtocolMode::ancilla_free;
  InputMode inputs = InputMode::exhaustive;
  int draws = 100;           // randomized layer pairs per run
  std::int64_t shots = 500;  // repetitions per circuit (0 = exact mode)
  std::uint64_t seed = 0;    // master seed; every stream derives from it
  std::string channel_spec;  // reference channel for single-channel commands
  std::vector<PlatformDescriptor> platforms;
  std::string out_dir = "qxp-out";

  void validate() const;  // throws UsageError on out-of-range counts
};

// JSON config files use the exact key set of session config snapshots —
// n, design, protocol, inputs, draws, shots, seed, channel_spec — plus
// "platforms" (array of {label, channel | host+port, spec_seed}) and "out".
// Unknown keys are rejected so typos fail loudly.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

// The session-file snapshot of this configuration.
SessionConfig session_config_of(const ExperimentConfig& cfg);

// The collection plan for one labeled platform. The timestamp is derived
// from the seed, not the clock, so equal configurations produce byte-equal
// data files.
RunPlan plan_of(const ExperimentConfig& cfg, const std::string& label);

std::string run_tag(std::uint64_t seed);

}  // namespace qxp

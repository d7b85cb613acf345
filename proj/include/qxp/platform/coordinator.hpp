#pragma once

#include <memory>
#include <string>

#include "qxp/channels/kraus.hpp"
#include "qxp/platform/messages.hpp"
#include "qxp/platform/socket.hpp"
#include "qxp/platform/worker.hpp"
#include "qxp/protocol/execution.hpp"

namespace qxp {

// A circuit executor the coordinator can drive. Implementations own their
// noise model (or their connection to whoever does); the coordinator only
// sends requests and reads histograms.
class Platform {
 public:
  virtual ~Platform() = default;
  virtual const std::string& label() const = 0;
  virtual HistogramReply run_circuit(const CircuitRequest& req) = 0;
};

// Executes requests in this process against a fixed channel.
class InProcessPlatform final : public Platform {
 public:
  InProcessPlatform(std::string label, KrausChannel channel);
  const std::string& label() const override { return label_; }
  HistogramReply run_circuit(const CircuitRequest& req) override;

 private:
  std::string label_;
  KrausChannel channel_;
};

// Executes requests over a line-oriented TCP connection to a worker.
// Connects at construction; TransportError when the worker is unreachable
// or the connection drops mid-run. Worker-reported errors re-throw as the
// exception family named by the reply category.
class RemotePlatform final : public Platform {
 public:
  RemotePlatform(std::string label, const std::string& host, int port);
  const std::string& label() const override { return label_; }
  HistogramReply run_circuit(const CircuitRequest& req) override;

 private:
  std::string label_;
  TcpStream stream_;
};

// In-process platform (channel built from the spec) or remote client,
// depending on the descriptor's transport fields. `n` fixes the channel
// size for in-process construction.
std::unique_ptr<Platform> open_platform(const PlatformDescriptor& desc,
                                        int n);

// Cross-platform collection: one centrally sampled draw list (derived from
// plan.seed exactly as single-platform collection derives it), sent to both
// platforms, executed concurrently, and assembled into two datasets whose
// draw lists match field-for-field. plan.platform is ignored; each dataset
// carries its platform's label, which also keys its shot-noise streams.
struct CrossPlatformRun {
  MeasurementDataset first;
  MeasurementDataset second;
  bool complete = true;   // false when either side stopped early
  std::string failure;    // first failure message when incomplete
};

// n is the register size. When a platform fails mid-run, its dataset keeps
// the draws that finished and both datasets are marked truncated;
// estimation then refuses the pair until trim_to_common_draws.
CrossPlatformRun collect_cross_platform(Platform& first, Platform& second,
                                        int n, const RunPlan& plan);

// Single-platform collection over the same centrally derived draw list.
// Datasets from different platforms under one plan align draw-for-draw, so
// any number can be collected one at a time and compared pairwise. Failures
// propagate as their original exception type (no truncation semantics).
MeasurementDataset collect_platform_dataset(Platform& platform, int n,
                                            const RunPlan& plan);

}  // namespace qxp

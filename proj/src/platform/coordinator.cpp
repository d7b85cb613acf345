#include "qxp/platform/coordinator.hpp"

#include <thread>
#include <utility>
#include <vector>

namespace qxp {

InProcessPlatform::InProcessPlatform(std::string label, KrausChannel channel)
    : label_(std::move(label)), channel_(std::move(channel)) {
  if (label_.empty()) throw UsageError("platform label must be nonempty");
}

HistogramReply InProcessPlatform::run_circuit(const CircuitRequest& req) {
  return execute_request(channel_, req);
}

RemotePlatform::RemotePlatform(std::string label, const std::string& host,
                               int port)
    : label_(std::move(label)),
      stream_(TcpStream::connect_to(host, port)) {
  if (label_.empty()) throw UsageError("platform label must be nonempty");
}

HistogramReply RemotePlatform::run_circuit(const CircuitRequest& req) {
  stream_.write_line(message_to_line(req));
  // Workers answer strictly in order, but replies are matched by id, not
  // position, so pipelined or reordered transports would work unchanged.
  for (;;) {
    const std::optional<std::string> line = stream_.read_line();
    if (!line) {
      throw TransportError("platform \"" + label_ +
                           "\" closed the connection mid-request");
    }
    switch (message_kind_of_line(*line)) {
      case MessageKind::histogram_reply: {
        HistogramReply reply = histogram_reply_from_line(*line);
        if (reply.id != req.id) continue;  // stale reply; keep reading
        return reply;
      }
      case MessageKind::error_reply: {
        const ErrorReply err = error_reply_from_line(*line);
        if (err.id != req.id && err.id != 0) continue;
        const std::string text =
            "platform \"" + label_ + "\": " + err.message;
        if (err.category == "usage") throw UsageError(text);
        if (err.category == "degenerate") throw DegenerateDataError(text);
        if (err.category == "numerical") throw NumericalError(text);
        throw TransportError(text);
      }
      case MessageKind::circuit_request:
        throw TransportError("platform \"" + label_ +
                             "\" sent a request to the coordinator");
    }
  }
}

std::unique_ptr<Platform> open_platform(const PlatformDescriptor& desc,
                                        int n) {
  if (!desc.host.empty()) {
    return std::make_unique<RemotePlatform>(desc.label, desc.host, desc.port);
  }
  return std::make_unique<InProcessPlatform>(desc.label,
                                             channel_for(desc, n));
}

namespace {

struct PlatformProgress {
  MeasurementDataset dataset;
  std::string failure;  // empty = ran to completion
};

std::vector<UnitaryDraw> central_draws(const RunPlan& plan, int n) {
  const TwoDesignSet& set = TwoDesignSet::of(plan.design);
  std::vector<UnitaryDraw> draws;
  draws.reserve(static_cast<std::size_t>(plan.draws));
  for (int r = 0; r < plan.draws; ++r) {
    Rng rng(draw_seed(plan.seed, r));
    draws.push_back(sample_draw(set, n, rng));
  }
  return draws;
}

void init_dataset(MeasurementDataset& d, int n, const RunPlan& plan,
                  const std::string& label) {
  d.n = n;
  d.design = plan.design;
  d.protocol = plan.protocol;
  d.layout = layout_for(plan.protocol, plan.inputs);
  d.shots = plan.shots;
  d.seed = plan.seed;
  d.platform = label;
  d.timestamp = plan.timestamp;
}

// Runs one circuit and appends the outcome, checking the reply shape.
void append_draw(Platform& platform, MeasurementDataset& d,
                 const RunPlan& plan, std::size_t r,
                 const UnitaryDraw& draw) {
  CircuitRequest req;
  req.id = r;
  req.n = d.n;
  req.design = plan.design;
  req.protocol = plan.protocol;
  req.input = input_mode_name(plan.inputs);
  req.shots = plan.shots;
  req.seed = shot_seed(plan.seed, platform.label(), static_cast<int>(r));
  req.draw = draw;
  HistogramReply reply = platform.run_circuit(req);
  const int expected_width = d.layout == DatasetLayout::joint ? 2 * d.n : d.n;
  if (reply.width != expected_width ||
      reply.histograms.size() !=
          static_cast<std::size_t>(d.histograms_per_draw())) {
    throw TransportError("platform \"" + platform.label() +
                         "\" returned a reply of the wrong shape");
  }
  DrawRecord rec;
  rec.draw = draw;
  rec.histograms = std::move(reply.histograms);
  d.draws.push_back(std::move(rec));
}

void run_platform(Platform& platform, int n, const RunPlan& plan,
                  const std::vector<UnitaryDraw>& draws,
                  PlatformProgress& out) {
  init_dataset(out.dataset, n, plan, platform.label());
  for (std::size_t r = 0; r < draws.size(); ++r) {
    try {
      append_draw(platform, out.dataset, plan, r, draws[r]);
    } catch (const std::exception& e) {
      out.failure = e.what();
      return;
    }
  }
}

}  // namespace

CrossPlatformRun collect_cross_platform(Platform& first, Platform& second,
                                        int n, const RunPlan& plan) {
  dim_for_qubits(n);
  if (plan.draws < 1) throw UsageError("a run needs at least one draw");
  if (first.label() == second.label()) {
    throw UsageError(
        "platform labels must differ within one comparison (shot streams "
        "are keyed by label)");
  }
  const std::vector<UnitaryDraw> draws = central_draws(plan, n);

  PlatformProgress pa, pb;
  std::thread tb(
      [&] { run_platform(second, n, plan, draws, pb); });
  run_platform(first, n, plan, draws, pa);
  tb.join();

  CrossPlatformRun out;
  out.complete = pa.failure.empty() && pb.failure.empty();
  out.failure = !pa.failure.empty() ? pa.failure : pb.failure;
  if (!out.complete) {
    pa.dataset.truncated = true;
    pb.dataset.truncated = true;
  }
  out.first = std::move(pa.dataset);
  out.second = std::move(pb.dataset);
  out.first.validate();
  out.second.validate();
  return out;
}

MeasurementDataset collect_platform_dataset(Platform& platform, int n,
                                            const RunPlan& plan) {
  dim_for_qubits(n);
  if (plan.draws < 1) throw UsageError("a run needs at least one draw");
  const std::vector<UnitaryDraw> draws = central_draws(plan, n);
  MeasurementDataset d;
  init_dataset(d, n, plan, platform.label());
  for (std::size_t r = 0; r < draws.size(); ++r) {
    append_draw(platform, d, plan, r, draws[r]);
  }
  d.validate();
  return d;
}

}  // namespace qxp

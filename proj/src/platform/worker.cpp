#include "qxp/platform/worker.hpp"

#include <utility>

#include "../protocol/json_codec.hpp"
#include "qxp/channels/presets.hpp"
#include "qxp/protocol/execution.hpp"

namespace qxp {

KrausChannel channel_for(const PlatformDescriptor& desc, int n) {
  if (desc.channel_spec.empty()) {
    throw UsageError("platform \"" + desc.label +
                     "\" has no channel spec to simulate");
  }
  return parse_channel_spec(desc.channel_spec, n, desc.spec_seed);
}

HistogramReply execute_request(const KrausChannel& channel,
                               const CircuitRequest& req) {
  if (channel.n != req.n) {
    throw UsageError("request is for " + std::to_string(req.n) +
                     " qubits, the platform channel acts on " +
                     std::to_string(channel.n));
  }
  const TwoDesignSet& set = TwoDesignSet::of(req.design);
  HistogramReply reply;
  reply.id = req.id;
  reply.shots = req.shots;
  if (req.input == "exhaustive" || req.input == "sampled") {
    const InputMode mode = input_mode_from_name(req.input);
    reply.histograms = execute_draw(channel, set, req.draw, req.protocol,
                                    mode, req.shots, req.seed);
    reply.width = layout_for(req.protocol, mode) == DatasetLayout::joint
                      ? 2 * req.n
                      : req.n;
  } else {
    if (req.protocol == ProtocolMode::ancilla_assisted) {
      throw UsageError(
          "entangled-register runs measure both registers jointly; a "
          "single-input override does not apply");
    }
    const auto s =
        static_cast<int>(detail::bits_value(req.input, req.n));
    const auto dists = conditional_distributions(channel, set, req.draw);
    reply.histograms.push_back(histogram_from_distribution(
        dists[static_cast<std::size_t>(s)], req.shots,
        input_shot_seed(req.seed, s)));
    reply.width = req.n;
  }
  return reply;
}

ErrorReply error_reply_for(std::uint64_t id, const std::exception& e) {
  ErrorReply reply;
  reply.id = id;
  reply.message = e.what();
  if (dynamic_cast<const UsageError*>(&e) != nullptr) {
    reply.category = "usage";
  } else if (dynamic_cast<const DegenerateDataError*>(&e) != nullptr) {
    reply.category = "degenerate";
  } else if (dynamic_cast<const NumericalError*>(&e) != nullptr) {
    reply.category = "numerical";
  } else {
    reply.category = "internal";
  }
  return reply;
}

void serve_connection(TcpStream& stream, const PlatformDescriptor& desc) {
  std::map<int, KrausChannel> channels;
  for (;;) {
    std::optional<std::string> line;
    try {
      line = stream.read_line();
    } catch (const TransportError&) {
      return;  // peer vanished; nothing to answer
    }
    if (!line) return;
    std::string out;
    try {
      const CircuitRequest req = circuit_request_from_line(*line);
      auto it = channels.find(req.n);
      if (it == channels.end()) {
        it = channels.emplace(req.n, channel_for(desc, req.n)).first;
      }
      out = message_to_line(execute_request(it->second, req));
    } catch (const std::exception& e) {
      out = message_to_line(error_reply_for(salvage_request_id(*line), e));
    }
    try {
      stream.write_line(out);
    } catch (const TransportError&) {
      return;
    }
  }
}

PlatformServer::PlatformServer(PlatformDescriptor desc, int port)
    : desc_(std::move(desc)) {
  if (desc_.label.empty()) throw UsageError("platform label must be nonempty");
  // Reject unusable channel grammar at startup: the spec must parse for at
  // least one qubit count (gate arity fixes which ones).
  std::string first_error;
  bool parses = false;
  for (int n = 1; n <= 4 && !parses; ++n) {
    try {
      channel_for(desc_, n);
      parses = true;
    } catch (const UsageError& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!parses) {
    throw UsageError("channel spec \"" + desc_.channel_spec +
                     "\" does not parse: " + first_error);
  }
  listener_ = TcpListener::bind_local(port);
}

PlatformServer::~PlatformServer() { stop(); }

void PlatformServer::run() {
  for (;;) {
    TcpStream conn;
    try {
      conn = listener_.accept_one();
    } catch (const TransportError&) {
      if (stopping_.load()) return;
      throw;
    }
    {
      const std::lock_guard<std::mutex> lock(conn_mutex_);
      if (stopping_.load()) return;  // stop raced the accept
      active_ = &conn;
    }
    serve_connection(conn, desc_);
    {
      // conn outlives this block, so a stop() that grabbed the pointer
      // while we waited on the mutex still shuts down a live stream.
      const std::lock_guard<std::mutex> lock(conn_mutex_);
      active_ = nullptr;
    }
    if (stopping_.load()) return;
  }
}

void PlatformServer::start() {
  if (thread_.joinable()) throw UsageError("server is already running");
  thread_ = std::thread([this] {
    try {
      run();
    } catch (const std::exception&) {
      // A dying listener ends service; clients see closed connections.
    }
  });
}

void PlatformServer::stop() {
  stopping_.store(true);
  listener_.shutdown();
  {
    const std::lock_guard<std::mutex> lock(conn_mutex_);
    if (active_ != nullptr) active_->shutdown();
  }
  if (thread_.joinable()) thread_.join();
}

}  // namespace qxp

#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "qxp/channels/kraus.hpp"
#include "qxp/platform/messages.hpp"
#include "qxp/platform/socket.hpp"

namespace qxp {

// One comparison endpoint: a labeled simulator reachable either in process
// or behind a TCP worker. The channel spec uses the channel grammar from
// the channel library and stays local to the platform — coordinators send
// circuits and receive histograms without learning what they probe.
struct PlatformDescriptor {
  std::string label;
  std::string channel_spec;        // simulated platforms
  std::uint64_t spec_seed = 0;     // seeds spec-internal randomness
  std::string host;                // nonempty = remote worker
  int port = 0;
};

// Executes one request against a channel. Pure: equal arguments give
// bitwise-equal replies, whichever process runs them.
HistogramReply execute_request(const KrausChannel& channel,
                               const CircuitRequest& req);

// Maps a library exception to the error-reply category taxonomy.
ErrorReply error_reply_for(std::uint64_t id, const std::exception& e);

// Serves one established connection until the peer closes: reads request
// lines, writes one histogram or error reply per line. Malformed input gets
// an error reply and the connection stays open. Channels are built from the
// descriptor's spec lazily per qubit count.
void serve_connection(TcpStream& stream, const PlatformDescriptor& desc);

// A TCP worker for one platform: binds at construction (port 0 picks an
// ephemeral port), then serves connections sequentially — run() on the
// calling thread or start()/stop() on a background one.
class PlatformServer {
 public:
  // Throws UsageError when the channel spec does not parse at any qubit
  // count, TransportError when binding fails.
  PlatformServer(PlatformDescriptor desc, int port);
  ~PlatformServer();
  PlatformServer(const PlatformServer&) = delete;
  PlatformServer& operator=(const PlatformServer&) = delete;

  int port() const { return listener_.port(); }
  const PlatformDescriptor& descriptor() const { return desc_; }

  void run();
  void start();

  // Stops service even while a client is connected: unblocks both the
  // pending accept and any in-flight connection, then joins.
  void stop();

 private:
  PlatformDescriptor desc_;
  TcpListener listener_;
  std::thread thread_;
  std::atomic<bool> stopping_{false};
  std::mutex conn_mutex_;
  TcpStream* active_ = nullptr;  // guarded by conn_mutex_
};

// The per-qubit-count channel a descriptor's spec describes.
KrausChannel channel_for(const PlatformDescriptor& desc, int n);

}  // namespace qxp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qxp/protocol/dataset.hpp"
#include "qxp/protocol/design.hpp"

namespace qxp {

// Wire protocol between a coordinator and platform workers: one JSON object
// per line, UTF-8, with a versioned "kind" field on every message. Three
// kinds exist: circuit_request, histogram_reply, error_reply.

inline constexpr int kWireVersion = 1;

// One randomized layer pair to execute. `input` selects coverage:
// "exhaustive" runs every computational input (one histogram per input),
// "sampled" draws inputs per shot into a single joint histogram, and a
// literal bitstring runs that input alone. The seed is the complete shot
// randomness: replies are a pure function of the request and the worker's
// channel.
struct CircuitRequest {
  std::uint64_t id = 0;
  int n = 1;
  DesignKind design = DesignKind::clifford24;
  ProtocolMode protocol = ProtocolMode::ancilla_free;
  std::string input = "exhaustive";
  std::int64_t shots = 0;  // 0 = exact probabilities
  std::uint64_t seed = 0;
  UnitaryDraw draw;
};

// Histograms for one request, in request order (input index for exhaustive
// coverage, single entry otherwise). `width` is the outcome bit count of
// each histogram; entries are counts, or probabilities when shots = 0.
struct HistogramReply {
  std::uint64_t id = 0;
  int width = 1;
  std::int64_t shots = 0;
  std::vector<Eigen::VectorXd> histograms;
};

// Structured failure. `category` mirrors the library's error taxonomy:
// "usage", "degenerate", "numerical", or "internal". Carries the request id
// when one could be parsed (0 otherwise).
struct ErrorReply {
  std::uint64_t id = 0;
  std::string category = "internal";
  std::string message;
};

enum class MessageKind { circuit_request, histogram_reply, error_reply };

// Serialization: one line per message, no trailing newline (the stream
// layer frames lines). Parsing throws UsageError on malformed input,
// unknown kinds, or version mismatches.
std::string message_to_line(const CircuitRequest& msg);
std::string message_to_line(const HistogramReply& msg);
std::string message_to_line(const ErrorReply& msg);

MessageKind message_kind_of_line(const std::string& line);
CircuitRequest circuit_request_from_line(const std::string& line);
HistogramReply histogram_reply_from_line(const std::string& line);
ErrorReply error_reply_from_line(const std::string& line);

// Best-effort request-id recovery from a line that may not parse fully,
// for error replies that echo the id. Returns 0 when unavailable.
std::uint64_t salvage_request_id(const std::string& line);

bool requests_equal(const CircuitRequest& a, const CircuitRequest& b);
bool replies_equal(const HistogramReply& a, const HistogramReply& b);

}  // namespace qxp

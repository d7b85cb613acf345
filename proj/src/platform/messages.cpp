#include "qxp/platform/messages.hpp"

#include <json.hpp>

#include "../protocol/json_codec.hpp"

namespace qxp {

using nlohmann::json;

namespace {

json parse_line(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed message line: ") + e.what());
  }
}

json header(const char* kind) {
  json j;
  j["kind"] = kind;
  j["version"] = kWireVersion;
  return j;
}

void check_header(const json& j, const char* kind) {
  if (j.value("kind", "") != kind) {
    throw UsageError("message is not a " + std::string(kind));
  }
  if (j.value("version", -1) != kWireVersion) {
    throw UsageError("unsupported " + std::string(kind) + " version");
  }
}

void validate_input_field(const std::string& input, int n) {
  if (input == "exhaustive" || input == "sampled") return;
  detail::bits_value(input, n);  // throws unless a well-formed n-bit string
}

}  // namespace

std::string message_to_line(const CircuitRequest& msg) {
  dim_for_qubits(msg.n, "request qubit count");
  if (msg.shots < 0) throw UsageError("request shots must be >= 0");
  if (msg.draw.qubits() != msg.n) {
    throw UsageError("request draw covers " +
                     std::to_string(msg.draw.qubits()) +
                     " qubits, header says " + std::to_string(msg.n));
  }
  validate_input_field(msg.input, msg.n);
  json j = header("circuit_request");
  j["id"] = msg.id;
  j["n"] = msg.n;
  j["design"] = design_kind_name(msg.design);
  j["protocol"] = protocol_mode_name(msg.protocol);
  j["input"] = msg.input;
  j["shots"] = msg.shots;
  j["seed"] = msg.seed;
  detail::draw_to_json(msg.draw, j);
  return j.dump();
}

std::string message_to_line(const HistogramReply& msg) {
  json j = header("histogram_reply");
  j["id"] = msg.id;
  j["width"] = msg.width;
  j["shots"] = msg.shots;
  json hists = json::array();
  for (const Eigen::VectorXd& h : msg.histograms) {
    hists.push_back(detail::histogram_to_json(h, msg.width, msg.shots == 0));
  }
  j["histograms"] = hists;
  return j.dump();
}

std::string message_to_line(const ErrorReply& msg) {
  json j = header("error_reply");
  j["id"] = msg.id;
  j["category"] = msg.category;
  j["message"] = msg.message;
  return j.dump();
}

MessageKind message_kind_of_line(const std::string& line) {
  const json j = parse_line(line);
  const std::string kind = j.value("kind", "");
  if (kind == "circuit_request") return MessageKind::circuit_request;
  if (kind == "histogram_reply") return MessageKind::histogram_reply;
  if (kind == "error_reply") return MessageKind::error_reply;
  throw UsageError("unknown message kind \"" + kind + "\"");
}

CircuitRequest circuit_request_from_line(const std::string& line) {
  const json j = parse_line(line);
  check_header(j, "circuit_request");
  try {
    CircuitRequest msg;
    msg.id = j.at("id").get<std::uint64_t>();
    msg.n = j.at("n").get<int>();
    dim_for_qubits(msg.n, "request qubit count");
    msg.design = design_kind_from_name(j.at("design").get<std::string>());
    msg.protocol =
        protocol_mode_from_name(j.at("protocol").get<std::string>());
    msg.input = j.at("input").get<std::string>();
    validate_input_field(msg.input, msg.n);
    msg.shots = j.at("shots").get<std::int64_t>();
    if (msg.shots < 0) throw UsageError("request shots must be >= 0");
    msg.seed = j.at("seed").get<std::uint64_t>();
    msg.draw = detail::draw_from_json(j);
    if (msg.draw.qubits() != msg.n) {
      throw UsageError("request draw does not cover the declared qubits");
    }
    return msg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad circuit_request field: ") + e.what());
  }
}

HistogramReply histogram_reply_from_line(const std::string& line) {
  const json j = parse_line(line);
  check_header(j, "histogram_reply");
  try {
    HistogramReply msg;
    msg.id = j.at("id").get<std::uint64_t>();
    msg.width = j.at("width").get<int>();
    if (msg.width < 1 || msg.width > kMaxQubits) {
      throw UsageError("reply histogram width out of range");
    }
    msg.shots = j.at("shots").get<std::int64_t>();
    for (const json& h : j.at("histograms")) {
      msg.histograms.push_back(detail::histogram_from_json(h, msg.width));
    }
    return msg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad histogram_reply field: ") + e.what());
  }
}

ErrorReply error_reply_from_line(const std::string& line) {
  const json j = parse_line(line);
  check_header(j, "error_reply");
  try {
    ErrorReply msg;
    msg.id = j.at("id").get<std::uint64_t>();
    msg.category = j.at("category").get<std::string>();
    msg.message = j.at("message").get<std::string>();
    return msg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad error_reply field: ") + e.what());
  }
}

std::uint64_t salvage_request_id(const std::string& line) {
  try {
    const json j = json::parse(line);
    if (j.is_object() && j.contains("id") &&
        j.at("id").is_number_unsigned()) {
      return j.at("id").get<std::uint64_t>();
    }
  } catch (const json::exception&) {
  }
  return 0;
}

bool requests_equal(const CircuitRequest& a, const CircuitRequest& b) {
  return a.id == b.id && a.n == b.n && a.design == b.design &&
         a.protocol == b.protocol && a.input == b.input &&
         a.shots == b.shots && a.seed == b.seed &&
         draws_equal(a.draw, b.draw);
}

bool replies_equal(const HistogramReply& a, const HistogramReply& b) {
  if (a.id != b.id || a.width != b.width || a.shots != b.shots ||
      a.histograms.size() != b.histograms.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.histograms.size(); ++i) {
    if (a.histograms[i].size() != b.histograms[i].size() ||
        (a.histograms[i] - b.histograms[i]).cwiseAbs().maxCoeff() != 0.0) {
      return false;
    }
  }
  return true;
}

}  // namespace qxp

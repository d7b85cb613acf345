#include "qxp/platform/session.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qxp/protocol/estimators.hpp"

namespace qxp {

namespace fs = std::filesystem;
using nlohmann::json;

bool session_configs_equal(const SessionConfig& a, const SessionConfig& b) {
  return a.n == b.n && a.design == b.design && a.protocol == b.protocol &&
         a.inputs == b.inputs && a.draws == b.draws && a.shots == b.shots &&
         a.seed == b.seed && a.channel_spec == b.channel_spec;
}

std::string session_record_to_json(const SessionRecord& rec) {
  if (rec.id.empty()) throw UsageError("session id must be nonempty");
  if (rec.platform.empty()) {
    throw UsageError("session platform label must be nonempty");
  }
  json out;
  out["format"] = "qxp.session";
  out["version"] = 1;
  out["id"] = rec.id;
  out["platform"] = rec.platform;
  out["timestamp"] = rec.timestamp;
  out["dataset_file"] = rec.dataset_file;
  json cfg;
  cfg["n"] = rec.config.n;
  cfg["design"] = design_kind_name(rec.config.design);
  cfg["protocol"] = protocol_mode_name(rec.config.protocol);
  cfg["inputs"] = input_mode_name(rec.config.inputs);
  cfg["draws"] = rec.config.draws;
  cfg["shots"] = rec.config.shots;
  cfg["seed"] = rec.config.seed;
  cfg["channel_spec"] = rec.config.channel_spec;
  out["config"] = cfg;
  return out.dump(2) + "\n";
}

SessionRecord session_record_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("session JSON parse failure: ") + e.what());
  }
  try {
    if (in.value("format", "") != "qxp.session") {
      throw UsageError("not a session record (missing format marker)");
    }
    if (in.value("version", -1) != 1) {
      throw UsageError("unsupported session record version");
    }
    SessionRecord rec;
    rec.id = in.at("id").get<std::string>();
    rec.platform = in.at("platform").get<std::string>();
    rec.timestamp = in.at("timestamp").get<std::string>();
    rec.dataset_file = in.at("dataset_file").get<std::string>();
    const json& cfg = in.at("config");
    rec.config.n = cfg.at("n").get<int>();
    rec.config.design =
        design_kind_from_name(cfg.at("design").get<std::string>());
    rec.config.protocol =
        protocol_mode_from_name(cfg.at("protocol").get<std::string>());
    rec.config.inputs =
        input_mode_from_name(cfg.at("inputs").get<std::string>());
    rec.config.draws = cfg.at("draws").get<int>();
    rec.config.shots = cfg.at("shots").get<std::int64_t>();
    rec.config.seed = cfg.at("seed").get<std::uint64_t>();
    rec.config.channel_spec = cfg.at("channel_spec").get<std::string>();
    return rec;
  } catch (const json::exception& e) {
    throw UsageError(std::string("session JSON field failure: ") + e.what());
  }
}

namespace {

void check_id(const std::string& id) {
  if (id.empty()) throw UsageError("session id must be nonempty");
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                    c == '.';
    if (!ok) {
      throw UsageError("session id \"" + id +
                       "\" may only use [A-Za-z0-9._-]");
    }
  }
  if (id == "." || id == "..") {
    throw UsageError("session id cannot be a directory alias");
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open \"" + path.string() + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot open \"" + path.string() + "\" for writing");
  }
  out << content;
  if (!out) throw UsageError("short write to \"" + path.string() + "\"");
}

}  // namespace

void save_session(const std::string& root, const SessionRecord& rec,
                  const MeasurementDataset& dataset) {
  check_id(rec.id);
  dataset.validate();
  const fs::path dir = fs::path(root) / rec.id;
  if (fs::exists(dir)) {
    throw UsageError("session \"" + rec.id +
                     "\" already exists; sessions are immutable");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw UsageError("cannot create session directory \"" + dir.string() +
                     "\": " + ec.message());
  }
  write_text_file(dir / rec.dataset_file, dataset_to_json(dataset));
  write_text_file(dir / "config.json", session_record_to_json(rec));
}

SessionRecord load_session_record(const std::string& root,
                                  const std::string& id) {
  check_id(id);
  const fs::path file = fs::path(root) / id / "config.json";
  if (!fs::exists(file)) {
    throw UsageError("no session \"" + id + "\" under \"" + root +
                     "\" (missing " + file.string() + ")");
  }
  SessionRecord rec = session_record_from_json(read_text_file(file));
  if (rec.id != id) {
    throw UsageError("session directory \"" + id +
                     "\" holds a record naming itself \"" + rec.id + "\"");
  }
  return rec;
}

MeasurementDataset load_session_dataset(const std::string& root,
                                        const SessionRecord& rec) {
  const fs::path file = fs::path(root) / rec.id / rec.dataset_file;
  if (!fs::exists(file)) {
    throw UsageError("session \"" + rec.id +
                     "\" references a missing dataset file \"" +
                     file.string() + "\"");
  }
  return load_dataset(file.string());
}

std::vector<std::string> list_sessions(const std::string& root) {
  std::vector<std::string> ids;
  std::error_code ec;
  fs::directory_iterator it(root, ec);
  if (ec) return ids;
  for (const fs::directory_entry& entry : it) {
    if (entry.is_directory() && fs::exists(entry.path() / "config.json")) {
      ids.push_back(entry.path().filename().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

void require_matching_policy(const SessionRecord& ref,
                             const SessionRecord& rec) {
  const SessionConfig& a = ref.config;
  const SessionConfig& b = rec.config;
  const std::string head = "sessions \"" + ref.id + "\" and \"" + rec.id +
                           "\" disagree on ";
  if (a.n != b.n) throw UsageError(head + "n");
  if (a.design != b.design) throw UsageError(head + "design");
  if (a.protocol != b.protocol) throw UsageError(head + "protocol");
  if (a.inputs != b.inputs) throw UsageError(head + "inputs");
  if (a.draws != b.draws) throw UsageError(head + "draws");
  if (a.seed != b.seed) throw UsageError(head + "seed");
}

}  // namespace

PerfMatrix compare_sessions(const std::string& root,
                            const std::vector<std::string>& ids) {
  if (ids.empty()) {
    throw UsageError("session comparison needs at least one session id");
  }
  std::vector<SessionRecord> records;
  std::vector<MeasurementDataset> datasets;
  for (const std::string& id : ids) {
    records.push_back(load_session_record(root, id));
    datasets.push_back(load_session_dataset(root, records.back()));
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    require_matching_policy(records[0], records[i]);
  }
  const bool state_mode = datasets[0].layout == DatasetLayout::state;
  const auto fidelity = [&](const MeasurementDataset& a,
                            const MeasurementDataset& b) {
    return state_mode ? estimate_max_state_fidelity(a, b)
                      : estimate_max_process_fidelity(a, b);
  };
  const auto k = static_cast<Eigen::Index>(ids.size());
  PerfMatrix m;
  m.labels = ids;
  m.f_max.resize(k, k);
  m.std_err.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const MeasurementDataset& di = datasets[static_cast<std::size_t>(i)];
    const FidelityEstimate self = fidelity(di, di);
    m.f_max(i, i) = self.f_max;
    m.std_err(i, i) = self.std_err;
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const FidelityEstimate est =
          fidelity(di, datasets[static_cast<std::size_t>(j)]);
      m.f_max(i, j) = est.f_max;
      m.f_max(j, i) = est.f_max;
      m.std_err(i, j) = est.std_err;
      m.std_err(j, i) = est.std_err;
    }
  }
  m.validate();
  return m;
}

}  // namespace qxp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qxp/platform/perf_matrix.hpp"
#include "qxp/protocol/dataset.hpp"

namespace qxp {

// Everything needed to regenerate a run's draw list from its seed, plus the
// channel spec when the platform was a local simulation (may be empty for
// black-box platforms).
struct SessionConfig {
  int n = 1;
  DesignKind design = DesignKind::clifford24;
  ProtocolMode protocol = ProtocolMode::ancilla_free;
  InputMode inputs = InputMode::exhaustive;
  int draws = 100;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::string channel_spec;
};

// One persisted run: a directory `<root>/<id>/` holding `config.json` (this
// record) and `dataset.json` (the measurement data). Session directories
// are immutable once written; monitoring compares files, never re-runs.
struct SessionRecord {
  std::string id;
  std::string platform;
  std::string timestamp;
  SessionConfig config;
  std::string dataset_file = "dataset.json";  // relative to the session dir
};

bool session_configs_equal(const SessionConfig& a, const SessionConfig& b);

std::string session_record_to_json(const SessionRecord& rec);
SessionRecord session_record_from_json(const std::string& text);

// Writes `<root>/<id>/{config.json, dataset.json}`, creating directories as
// needed. Refuses to overwrite an existing session (UsageError).
void save_session(const std::string& root, const SessionRecord& rec,
                  const MeasurementDataset& dataset);

SessionRecord load_session_record(const std::string& root,
                                  const std::string& id);
MeasurementDataset load_session_dataset(const std::string& root,
                                        const SessionRecord& rec);

// Ids of every session directory under root (a directory with a
// config.json), sorted lexicographically. Missing root lists as empty.
std::vector<std::string> list_sessions(const std::string& root);

// Pairwise max-fidelity matrix over the given sessions, labeled by session
// id. All records must agree on the draw-generation policy (n, design,
// protocol, input mode, draw count, and seed) so their datasets align;
// a mismatch throws UsageError naming the offending field. The diagonal is
// the self-comparison of each single dataset: exactly 1.
PerfMatrix compare_sessions(const std::string& root,
                            const std::vector<std::string>& ids);

}  // namespace qxp

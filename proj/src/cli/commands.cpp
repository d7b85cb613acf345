#include "qxp/cli/commands.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qxp/channels/choi.hpp"
#include "qxp/channels/presets.hpp"
#include "qxp/core/linalg.hpp"
#include "qxp/platform/coordinator.hpp"
#include "qxp/platform/session.hpp"
#include "qxp/protocol/estimators.hpp"

namespace qxp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write \"" + path + "\"");
  out << text;
  if (!out) throw UsageError("write to \"" + path + "\" failed");
}

// Labels become file and directory names, so constrain them the same way
// session ids are constrained.
void require_file_safe(const std::string& label) {
  if (label.empty() || label == "." || label == "..") {
    throw UsageError("platform label \"" + label + "\" cannot name a file");
  }
  for (const char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) {
      throw UsageError("platform label \"" + label +
                       "\" may use only letters, digits, '.', '_', '-'");
    }
  }
}

// Pairwise max-fidelity matrix over aligned process datasets. The diagonal
// is each run's self-comparison: exactly 1 with zero error.
PerfMatrix pairwise_matrix(const std::vector<std::string>& labels,
                           const std::vector<MeasurementDataset>& datasets) {
  const auto k = static_cast<Eigen::Index>(datasets.size());
  PerfMatrix m;
  m.labels = labels;
  m.f_max.setZero(k, k);
  m.std_err.setZero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const auto& a = datasets[static_cast<std::size_t>(i)];
      const auto& b = datasets[static_cast<std::size_t>(j)];
      const FidelityEstimate est =
          i == j ? estimate_max_process_fidelity(a, a)
                 : estimate_max_process_fidelity(a, b);
      m.f_max(i, j) = est.f_max;
      m.f_max(j, i) = est.f_max;
      m.std_err(i, j) = est.std_err;
      m.std_err(j, i) = est.std_err;
    }
  }
  m.validate();
  return m;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  const fs::path p = fs::path(cfg.out_dir) / name;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

}  // namespace

CompareOutcome run_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.platforms.size() < 2) {
    throw UsageError(
        "compare needs at least two platforms (an ideal simulator counts)");
  }
  for (const PlatformDescriptor& desc : cfg.platforms) {
    require_file_safe(desc.label);
  }

  CompareOutcome out;
  std::vector<std::string> labels;
  std::vector<MeasurementDataset> datasets;
  for (const PlatformDescriptor& desc : cfg.platforms) {
    try {
      const std::unique_ptr<Platform> platform = open_platform(desc, cfg.n);
      MeasurementDataset d =
          collect_platform_dataset(*platform, cfg.n, plan_of(cfg, desc.label));
      const std::string path =
          out_path(cfg, "datasets/" + desc.label + ".json");
      save_dataset(d, path);
      out.files.push_back(path);
      labels.push_back(desc.label);
      datasets.push_back(std::move(d));
    } catch (const std::exception& e) {
      out.failed.push_back(desc.label);
      out.failure_notes.push_back(e.what());
    }
  }

  if (!out.failed.empty()) {
    json note;
    note["format"] = "qxp.failures";
    note["version"] = 1;
    json list = json::array();
    for (std::size_t i = 0; i < out.failed.size(); ++i) {
      list.push_back({{"label", out.failed[i]},
                      {"message", out.failure_notes[i]}});
    }
    note["failures"] = std::move(list);
    const std::string path = out_path(cfg, "failures.json");
    write_text(path, note.dump(2) + "\n");
    out.files.push_back(path);
  }
  if (datasets.empty()) {
    throw TransportError("no platform completed a run; first failure: " +
                         out.failure_notes.front());
  }

  out.matrix = pairwise_matrix(labels, datasets);
  const std::string csv = out_path(cfg, "matrix.csv");
  const std::string js = out_path(cfg, "matrix.json");
  save_matrix_csv(out.matrix, csv);
  save_matrix_json(out.matrix, js);
  out.files.push_back(csv);
  out.files.push_back(js);
  const std::string snapshot = out_path(cfg, "config.json");
  write_text(snapshot, config_to_json(cfg));
  out.files.push_back(snapshot);
  return out;
}

MonitorOutcome run_monitor(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.platforms.size() < 2) {
    throw UsageError("monitoring needs at least two labeled time points");
  }
  const std::string root = out_path(cfg, "sessions");
  MonitorOutcome out;
  for (const PlatformDescriptor& desc : cfg.platforms) {
    require_file_safe(desc.label);
    out.ids.push_back(desc.label);
    if (fs::exists(fs::path(root) / desc.label / "config.json")) {
      // Immutable session already on disk. It may only be reused if it was
      // collected under the run configuration now requested; the channel
      // spec and shot count may drift between time points, but the fields
      // that define the draw stream may not.
      const SessionRecord rec = load_session_record(root, desc.label);
      const SessionConfig want = session_config_of(cfg);
      const SessionConfig& got = rec.config;
      const std::string head =
          "stored session \"" + desc.label + "\" disagrees with the request on ";
      if (got.n != want.n) throw UsageError(head + "n");
      if (got.design != want.design) throw UsageError(head + "design");
      if (got.protocol != want.protocol) throw UsageError(head + "protocol");
      if (got.inputs != want.inputs) throw UsageError(head + "inputs");
      if (got.draws != want.draws) throw UsageError(head + "draws");
      if (got.seed != want.seed) throw UsageError(head + "seed");
      continue;
    }
    const std::unique_ptr<Platform> platform = open_platform(desc, cfg.n);
    const MeasurementDataset d =
        collect_platform_dataset(*platform, cfg.n, plan_of(cfg, desc.label));
    SessionRecord rec;
    rec.id = desc.label;
    rec.platform = desc.label;
    rec.timestamp = run_tag(cfg.seed);
    rec.config = session_config_of(cfg);
    rec.config.channel_spec = desc.channel_spec;  // may differ per time point
    save_session(root, rec, d);
    out.created.push_back(desc.label);
  }

  out.matrix = compare_sessions(root, out.ids);
  const std::string csv = out_path(cfg, "matrix.csv");
  const std::string js = out_path(cfg, "matrix.json");
  save_matrix_csv(out.matrix, csv);
  save_matrix_json(out.matrix, js);
  out.files = {csv, js};
  return out;
}

BudgetOutcome run_scaling_budget(const ExperimentConfig& cfg, int points,
                                 int repetitions) {
  cfg.validate();
  if (cfg.shots < 1) {
    throw UsageError("a budget sweep needs finite shots (>= 1)");
  }
  std::string spec = cfg.channel_spec;
  if (spec.empty()) spec = cfg.n == 1 ? "H" : "CNOT";
  const KrausChannel channel = parse_channel_spec(spec, cfg.n, cfg.seed);
  const BudgetStudy study = run_budget_study(
      channel, default_budget_grid(points, cfg.draws, cfg.shots), repetitions,
      cfg.seed);
  BudgetOutcome out;
  out.study = study;
  out.file = out_path(cfg, "budget.csv");
  write_text(out.file, budget_csv(study));
  return out;
}

QubitOutcome run_scaling_qubits(const ExperimentConfig& cfg, int n_max,
                                double target, int repetitions,
                                std::int64_t shot_ceiling) {
  cfg.validate();
  std::string spec = cfg.channel_spec;
  if (spec.empty()) spec = "ghz";
  const QubitStudy study = run_qubit_study(
      [&](int n) { return parse_channel_spec(spec, n, cfg.seed); }, cfg.n,
      n_max, cfg.draws, target, repetitions, shot_ceiling, cfg.seed);
  QubitOutcome out;
  out.study = study;
  out.file = out_path(cfg, "qubits.csv");
  write_text(out.file, qubit_csv(study));
  return out;
}

namespace {

json entry_table(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rows.push_back({i, j, m(i, j).real(), m(i, j).imag()});
    }
  }
  return rows;
}

}  // namespace

QptOutcome run_qpt(const ExperimentConfig& cfg, bool enumerate) {
  cfg.validate();
  PlatformDescriptor desc;
  if (cfg.platforms.size() == 1) {
    desc = cfg.platforms.front();
  } else if (cfg.platforms.empty() && !cfg.channel_spec.empty()) {
    desc.label = "local";
    desc.channel_spec = cfg.channel_spec;
  } else {
    throw UsageError(
        "tomography takes exactly one platform (or a --channel to simulate "
        "locally)");
  }
  require_file_safe(desc.label);

  MeasurementDataset d;
  if (enumerate) {
    if (!desc.host.empty()) {
      throw UsageError(
          "exact enumeration needs the channel locally; remote platforms "
          "are sampled");
    }
    d = enumerate_process_dataset(channel_for(desc, cfg.n), cfg.design,
                                  cfg.protocol);
  } else {
    const std::unique_ptr<Platform> platform = open_platform(desc, cfg.n);
    d = collect_platform_dataset(*platform, cfg.n, plan_of(cfg, desc.label));
  }

  QptOutcome out;
  out.result = randomized_qpt(d, /*project=*/true);

  json report;
  report["format"] = "qxp.choi";
  report["version"] = 1;
  report["platform"] = desc.label;
  report["qubits"] = out.result.qubits;
  report["draws"] = static_cast<std::int64_t>(d.draws.size());
  report["shots"] = d.shots;
  report["trace"] = out.result.trace;
  report["hermiticity_residue"] = out.result.hermiticity_residue;
  report["min_eigenvalue"] = out.result.min_eigenvalue;
  report["entries"] = entry_table(out.result.estimate);
  report["psd_entries"] = entry_table(out.result.psd_estimate);
  if (desc.host.empty()) {
    const ChoiMatrix oracle = choi_of_channel(channel_for(desc, cfg.n));
    out.oracle_known = true;
    out.oracle_trace_distance =
        trace_distance(out.result.estimate, oracle.state.mat);
    report["oracle_trace_distance"] = out.oracle_trace_distance;
  }
  out.file = out_path(cfg, "choi.json");
  write_text(out.file, report.dump(2) + "\n");
  return out;
}

}  // namespace qxp

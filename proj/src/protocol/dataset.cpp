#include "qxp/protocol/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "json_codec.hpp"
#include "qxp/core/linalg.hpp"

namespace qxp {

using nlohmann::json;

std::string protocol_mode_name(ProtocolMode mode) {
  return mode == ProtocolMode::ancilla_free ? "free" : "assisted";
}

ProtocolMode protocol_mode_from_name(const std::string& name) {
  if (name == "free") return ProtocolMode::ancilla_free;
  if (name == "assisted") return ProtocolMode::ancilla_assisted;
  throw UsageError("unknown protocol mode \"" + name + "\"");
}

std::string input_mode_name(InputMode mode) {
  return mode == InputMode::exhaustive ? "exhaustive" : "sampled";
}

InputMode input_mode_from_name(const std::string& name) {
  if (name == "exhaustive") return InputMode::exhaustive;
  if (name == "sampled") return InputMode::sampled;
  throw UsageError("unknown input mode \"" + name + "\"");
}

std::string layout_name(DatasetLayout layout) {
  switch (layout) {
    case DatasetLayout::conditional: return "conditional";
    case DatasetLayout::joint: return "joint";
    case DatasetLayout::state: return "state";
  }
  throw UsageError("unknown dataset layout");
}

DatasetLayout layout_from_name(const std::string& name) {
  if (name == "conditional") return DatasetLayout::conditional;
  if (name == "joint") return DatasetLayout::joint;
  if (name == "state") return DatasetLayout::state;
  throw UsageError("unknown dataset layout \"" + name + "\"");
}

int MeasurementDataset::outcome_bits() const {
  return layout == DatasetLayout::joint ? 2 * n : n;
}

int MeasurementDataset::histograms_per_draw() const {
  return layout == DatasetLayout::conditional ? (1 << n) : 1;
}

void MeasurementDataset::validate() const {
  dim_for_qubits(n);
  if (outcome_bits() > kMaxQubits) {
    throw UsageError("joint-layout histograms need 2n <= " +
                     std::to_string(kMaxQubits));
  }
  if (shots < 0) throw UsageError("dataset shots must be >= 0");
  const auto dim = std::ptrdiff_t{1} << outcome_bits();
  const auto per_draw = static_cast<std::size_t>(histograms_per_draw());
  for (const DrawRecord& rec : draws) {
    if (rec.draw.qubits() != n) {
      throw UsageError("draw has " + std::to_string(rec.draw.qubits()) +
                       " qubit slots, dataset declares n = " +
                       std::to_string(n));
    }
    if (rec.histograms.size() != per_draw) {
      throw UsageError("draw record holds " +
                       std::to_string(rec.histograms.size()) +
                       " histograms, layout requires " +
                       std::to_string(per_draw));
    }
    for (const Eigen::VectorXd& h : rec.histograms) {
      if (h.size() != dim) {
        throw UsageError("histogram length does not match the layout");
      }
      const double total = h.sum();
      if (shots == 0) {
        if (std::abs(total - 1.0) > Tolerances::probability) {
          throw NumericalError("exact histogram does not sum to 1");
        }
      } else if (std::llround(total) != shots) {
        throw NumericalError("histogram total " + std::to_string(total) +
                             " differs from declared shots " +
                             std::to_string(shots));
      }
    }
  }
}

bool datasets_equal(const MeasurementDataset& a, const MeasurementDataset& b) {
  if (a.n != b.n || a.design != b.design || a.protocol != b.protocol ||
      a.layout != b.layout || a.shots != b.shots || a.seed != b.seed ||
      a.platform != b.platform || a.timestamp != b.timestamp ||
      a.truncated != b.truncated || a.draws.size() != b.draws.size()) {
    return false;
  }
  for (std::size_t r = 0; r < a.draws.size(); ++r) {
    if (!draws_equal(a.draws[r].draw, b.draws[r].draw)) return false;
    if (a.draws[r].histograms.size() != b.draws[r].histograms.size()) {
      return false;
    }
    for (std::size_t h = 0; h < a.draws[r].histograms.size(); ++h) {
      const Eigen::VectorXd& ha = a.draws[r].histograms[h];
      const Eigen::VectorXd& hb = b.draws[r].histograms[h];
      if (ha.size() != hb.size() || (ha - hb).cwiseAbs().maxCoeff() != 0.0) {
        return false;
      }
    }
  }
  return true;
}

std::string dataset_to_json(const MeasurementDataset& d) {
  d.validate();
  json out;
  out["format"] = "qxp.dataset";
  out["version"] = 1;
  out["n"] = d.n;
  out["design"] = design_kind_name(d.design);
  out["protocol"] = protocol_mode_name(d.protocol);
  out["layout"] = layout_name(d.layout);
  out["shots"] = d.shots;
  out["seed"] = d.seed;
  out["platform"] = d.platform;
  out["timestamp"] = d.timestamp;
  out["truncated"] = d.truncated;
  json draws = json::array();
  const int width = d.outcome_bits();
  for (const DrawRecord& rec : d.draws) {
    json jd;
    detail::draw_to_json(rec.draw, jd);
    json hists = json::array();
    for (const Eigen::VectorXd& h : rec.histograms) {
      hists.push_back(detail::histogram_to_json(h, width, d.shots == 0));
    }
    jd["histograms"] = hists;
    draws.push_back(jd);
  }
  out["draws"] = draws;
  return out.dump(2) + "\n";
}

MeasurementDataset dataset_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("dataset JSON parse failure: ") + e.what());
  }
  try {
    if (in.value("format", "") != "qxp.dataset") {
      throw UsageError("not a dataset file (missing format marker)");
    }
    if (in.value("version", -1) != 1) {
      throw UsageError("unsupported dataset version");
    }
    MeasurementDataset d;
    d.n = in.at("n").get<int>();
    d.design = design_kind_from_name(in.at("design").get<std::string>());
    d.protocol = protocol_mode_from_name(in.at("protocol").get<std::string>());
    d.layout = layout_from_name(in.at("layout").get<std::string>());
    d.shots = in.at("shots").get<std::int64_t>();
    d.seed = in.at("seed").get<std::uint64_t>();
    d.platform = in.at("platform").get<std::string>();
    d.timestamp = in.at("timestamp").get<std::string>();
    d.truncated = in.at("truncated").get<bool>();
    const int width = d.outcome_bits();
    for (const json& jd : in.at("draws")) {
      DrawRecord rec;
      rec.draw = detail::draw_from_json(jd);
      for (const json& h : jd.at("histograms")) {
        rec.histograms.push_back(detail::histogram_from_json(h, width));
      }
      d.draws.push_back(std::move(rec));
    }
    d.validate();
    return d;
  } catch (const json::exception& e) {
    throw UsageError(std::string("dataset JSON field failure: ") + e.what());
  }
}

void save_dataset(const MeasurementDataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open \"" + path + "\" for writing");
  out << dataset_to_json(d);
  if (!out) throw UsageError("short write to \"" + path + "\"");
}

MeasurementDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open dataset \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_json(buf.str());
}

void require_aligned(const MeasurementDataset& a, const MeasurementDataset& b) {
  if (a.n != b.n) {
    throw UsageError("datasets disagree on qubit count (" +
                     std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
  }
  if (a.design != b.design) {
    throw UsageError("datasets disagree on design kind (" +
                     design_kind_name(a.design) + " vs " +
                     design_kind_name(b.design) + ")");
  }
  if (a.layout != b.layout) {
    throw UsageError("datasets disagree on layout (" + layout_name(a.layout) +
                     " vs " + layout_name(b.layout) + ")");
  }
  if (a.truncated || b.truncated) {
    throw UsageError(
        "refusing to estimate from a truncated dataset; trim both runs to "
        "the common draw prefix first");
  }
  if (a.draws.size() != b.draws.size()) {
    throw UsageError("datasets hold different draw counts (" +
                     std::to_string(a.draws.size()) + " vs " +
                     std::to_string(b.draws.size()) + ")");
  }
  for (std::size_t r = 0; r < a.draws.size(); ++r) {
    if (!draws_equal(a.draws[r].draw, b.draws[r].draw)) {
      throw UsageError("draw " + std::to_string(r) +
                       " differs between datasets; runs are not aligned");
    }
  }
}

std::pair<MeasurementDataset, MeasurementDataset> trim_to_common_draws(
    const MeasurementDataset& a, const MeasurementDataset& b) {
  const std::size_t keep = std::min(a.draws.size(), b.draws.size());
  if (keep < 2) {
    throw DegenerateDataError(
        "common draw prefix is shorter than two draws; nothing to compare");
  }
  MeasurementDataset ta = a, tb = b;
  ta.draws.resize(keep);
  tb.draws.resize(keep);
  ta.truncated = false;
  tb.truncated = false;
  for (std::size_t r = 0; r < keep; ++r) {
    if (!draws_equal(ta.draws[r].draw, tb.draws[r].draw)) {
      throw UsageError("draw " + std::to_string(r) +
                       " differs between runs; they do not share a prefix");
    }
  }
  return {std::move(ta), std::move(tb)};
}

}  // namespace qxp

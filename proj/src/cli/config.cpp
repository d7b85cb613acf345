#include "qxp/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qxp/channels/presets.hpp"

namespace qxp {

using nlohmann::json;

PlatformDescriptor parse_platform_arg(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw UsageError("platform argument \"" + text +
                     "\" must be label=<channel spec> or label=@host:port");
  }
  PlatformDescriptor desc;
  desc.label = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  if (rest.front() != '@') {
    desc.channel_spec = rest;
    return desc;
  }
  const std::size_t colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 1 || colon + 1 >= rest.size()) {
    throw UsageError("remote platform \"" + text +
                     "\" must be label=@host:port");
  }
  desc.host = rest.substr(1, colon - 1);
  try {
    desc.port = std::stoi(rest.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("port in \"" + text + "\" is not a number");
  }
  if (desc.port <= 0 || desc.port > 65535) {
    throw UsageError("port in \"" + text + "\" must be in [1, 65535]");
  }
  return desc;
}

void ExperimentConfig::validate() const {
  dim_for_qubits(n);
  if (draws < 1) throw UsageError("draw count must be at least 1");
  if (shots < 0) throw UsageError("shot count must be nonnegative");
  std::set<std::string> labels;
  for (const PlatformDescriptor& p : platforms) {
    if (p.label.empty()) throw UsageError("platform label must be nonempty");
    if (!labels.insert(p.label).second) {
      throw UsageError("duplicate platform label \"" + p.label + "\"");
    }
    if (p.host.empty() && p.channel_spec.empty()) {
      throw UsageError("platform \"" + p.label +
                       "\" needs a channel spec or a host:port");
    }
  }
}

namespace {

PlatformDescriptor platform_from_json(const json& in) {
  PlatformDescriptor desc;
  for (const auto& [key, value] : in.items()) {
    if (key == "label") {
      desc.label = value.get<std::string>();
    } else if (key == "channel") {
      desc.channel_spec = value.get<std::string>();
    } else if (key == "host") {
      desc.host = value.get<std::string>();
    } else if (key == "port") {
      desc.port = value.get<int>();
    } else if (key == "spec_seed") {
      desc.spec_seed = value.get<std::uint64_t>();
    } else {
      throw UsageError("unknown platform key \"" + key + "\" in config");
    }
  }
  return desc;
}

json platform_to_json(const PlatformDescriptor& desc) {
  json out;
  out["label"] = desc.label;
  if (!desc.channel_spec.empty()) out["channel"] = desc.channel_spec;
  if (!desc.host.empty()) {
    out["host"] = desc.host;
    out["port"] = desc.port;
  }
  if (desc.spec_seed != 0) out["spec_seed"] = desc.spec_seed;
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!in.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : in.items()) {
      if (key == "n") {
        cfg.n = value.get<int>();
      } else if (key == "design") {
        cfg.design = design_kind_from_name(value.get<std::string>());
      } else if (key == "protocol") {
        cfg.protocol = protocol_mode_from_name(value.get<std::string>());
      } else if (key == "inputs") {
        cfg.inputs = input_mode_from_name(value.get<std::string>());
      } else if (key == "draws") {
        cfg.draws = value.get<int>();
      } else if (key == "shots") {
        cfg.shots = value.get<std::int64_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "channel_spec") {
        cfg.channel_spec = value.get<std::string>();
      } else if (key == "platforms") {
        for (const json& p : value) cfg.platforms.push_back(platform_from_json(p));
      } else if (key == "out") {
        cfg.out_dir = value.get<std::string>();
      } else {
        throw UsageError("unknown config key \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json out;
  out["n"] = cfg.n;
  out["design"] = design_kind_name(cfg.design);
  out["protocol"] = protocol_mode_name(cfg.protocol);
  out["inputs"] = input_mode_name(cfg.inputs);
  out["draws"] = cfg.draws;
  out["shots"] = cfg.shots;
  out["seed"] = cfg.seed;
  out["channel_spec"] = cfg.channel_spec;
  json platforms = json::array();
  for (const PlatformDescriptor& p : cfg.platforms) {
    platforms.push_back(platform_to_json(p));
  }
  out["platforms"] = std::move(platforms);
  out["out"] = cfg.out_dir;
  return out.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file \"" + path + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_json(text.str());
}

SessionConfig session_config_of(const ExperimentConfig& cfg) {
  SessionConfig sc;
  sc.n = cfg.n;
  sc.design = cfg.design;
  sc.protocol = cfg.protocol;
  sc.inputs = cfg.inputs;
  sc.draws = cfg.draws;
  sc.shots = cfg.shots;
  sc.seed = cfg.seed;
  sc.channel_spec = cfg.channel_spec;
  return sc;
}

RunPlan plan_of(const ExperimentConfig& cfg, const std::string& label) {
  RunPlan plan;
  plan.design = cfg.design;
  plan.protocol = cfg.protocol;
  plan.inputs = cfg.inputs;
  plan.draws = cfg.draws;
  plan.shots = cfg.shots;
  plan.seed = cfg.seed;
  plan.platform = label;
  plan.timestamp = run_tag(cfg.seed);
  return plan;
}

std::string run_tag(std::uint64_t seed) {
  return "run-seed-" + std::to_string(seed);
}

}  // namespace qxp

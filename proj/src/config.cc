#include "panelfusion/config.h"

#include <json.hpp>

#include "panelfusion/csv.h"
#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

using nlohmann::json;

template <typename T>
T Get(const json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: \"") + key +
                          "\" has the wrong type");
  }
}

int64_t GetPositive(const json& value, const char* key) {
  if (!value.is_number_integer()) {
    throw ValidationError(std::string("config: \"") + key +
                          "\" must be an integer");
  }
  const int64_t v = value.get<int64_t>();
  if (v < 1) {
    throw ValidationError(std::string("config: \"") + key +
                          "\" must be >= 1");
  }
  return v;
}

}  // namespace

CostModel EngineConfig::BaseModel(CostMode mode) const {
  CostModel model;
  model.mode = mode;
  model.penalty = penalty;
  model.cost_scale = cost_scale;
  return model;
}

RelaxationSchedule EngineConfig::Schedule() const {
  RelaxationSchedule out;
  out.stages = schedule;
  if (mode_per_stage.size() == 1) {
    out.modes.assign(schedule.size(), mode_per_stage[0]);
  } else {
    out.modes = mode_per_stage;
  }
  return out;
}

FusionOptions EngineConfig::Options() const {
  FusionOptions options;
  options.pruning = pruning;
  options.no_split = no_split;
  options.workers = workers;
  options.single_arc_cap = single_arc_cap;
  return options;
}

EngineConfig ParseEngineConfig(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: expected an object");

  EngineConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "unit_scale") {
      config.unit_scale = GetPositive(value, "unit_scale");
    } else if (key == "cost_scale") {
      config.cost_scale = GetPositive(value, "cost_scale");
    } else if (key == "penalty") {
      if (!value.is_number_integer() || value.get<int64_t>() < 0) {
        throw ValidationError(
            "config: \"penalty\" must be a non-negative integer");
      }
      config.penalty = value.get<int64_t>();
    } else if (key == "mode_per_stage") {
      config.mode_per_stage.clear();
      if (value.is_string()) {
        config.mode_per_stage.push_back(
            ParseCostMode(value.get<std::string>()));
      } else {
        for (const std::string& mode :
             Get<std::vector<std::string>>(value, "mode_per_stage")) {
          config.mode_per_stage.push_back(ParseCostMode(mode));
        }
      }
    } else if (key == "schedule") {
      config.schedule =
          Get<std::vector<std::vector<std::string>>>(value, "schedule");
    } else if (key == "pruning") {
      if (!value.is_object()) {
        throw ValidationError("config: \"pruning\" must be an object");
      }
      for (const auto& [sub, sub_value] : value.items()) {
        if (sub == "enabled") {
          config.pruning.enabled = Get<bool>(sub_value, "pruning.enabled");
        } else if (sub == "k") {
          if (!sub_value.is_number_integer() || sub_value.get<int64_t>() < 0 ||
              sub_value.get<int64_t>() > (int64_t{1} << 30)) {
            throw ValidationError(
                "config: \"pruning.k\" must be a non-negative integer");
          }
          config.pruning.k = sub_value.get<int>();
        } else {
          throw ValidationError("config: unknown key \"pruning." + sub + "\"");
        }
      }
    } else if (key == "no_split") {
      config.no_split = Get<bool>(value, "no_split");
    } else if (key == "workers") {
      const int64_t workers = GetPositive(value, "workers");
      if (workers > 1024) {
        throw ValidationError("config: \"workers\" must be <= 1024");
      }
      config.workers = static_cast<int>(workers);
    } else if (key == "seed") {
      config.seed = Get<uint64_t>(value, "seed");
    } else if (key == "single_arc_cap") {
      config.single_arc_cap = GetPositive(value, "single_arc_cap");
    } else {
      throw ValidationError("config: unknown key \"" + key + "\"");
    }
  }
  if (config.schedule.empty() || !config.schedule.back().empty()) {
    throw ValidationError("config: schedule must end with []");
  }
  if (config.mode_per_stage.size() > 1 &&
      config.mode_per_stage.size() != config.schedule.size()) {
    throw ValidationError(
        "config: mode_per_stage must have one entry or one per stage");
  }
  return config;
}

EngineConfig LoadEngineConfig(const std::string& path) {
  return ParseEngineConfig(ReadFile(path));
}

std::string FormatEngineConfig(const EngineConfig& config) {
  json doc;
  doc["unit_scale"] = config.unit_scale;
  doc["cost_scale"] = config.cost_scale;
  doc["penalty"] = config.penalty;
  json modes = json::array();
  for (CostMode mode : config.mode_per_stage) modes.push_back(CostModeName(mode));
  doc["mode_per_stage"] = modes;
  doc["schedule"] = config.schedule;
  doc["pruning"] = {{"enabled", config.pruning.enabled},
                    {"k", config.pruning.k}};
  doc["no_split"] = config.no_split;
  doc["workers"] = config.workers;
  doc["seed"] = config.seed;
  doc["single_arc_cap"] = config.single_arc_cap;
  return doc.dump(2) + "\n";
}

}  // namespace panelfusion

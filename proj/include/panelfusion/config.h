#ifndef PANELFUSION_CONFIG_H_
#define PANELFUSION_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "panelfusion/fusion_engine.h"

namespace panelfusion {

// Engine settings as read from the JSON config file. Keys:
//   unit_scale, cost_scale, penalty, mode_per_stage, schedule,
//   pruning {enabled, k}, no_split, workers, seed, single_arc_cap
// All keys are optional; unknown keys are rejected.
struct EngineConfig {
  int64_t unit_scale = 1000;
  CostValue cost_scale = kDefaultCostScale;
  CostValue penalty = kDefaultPenalty;
  // Either empty (engine default), one entry (applied to every partitioned
  // stage) or one entry per stage.
  std::vector<CostMode> mode_per_stage;
  std::vector<std::vector<std::string>> schedule = {{}};
  PruneConfig pruning;
  bool no_split = false;
  int workers = 1;
  uint64_t seed = 0;
  int64_t single_arc_cap = 1'000'000'000;

  CostModel BaseModel(CostMode mode = CostMode::kSoft) const;
  RelaxationSchedule Schedule() const;
  FusionOptions Options() const;
};

// Throws ValidationError on malformed JSON, wrong types or unknown keys.
EngineConfig ParseEngineConfig(const std::string& json_text);
// Throws IoError if the file cannot be read.
EngineConfig LoadEngineConfig(const std::string& path);
std::string FormatEngineConfig(const EngineConfig& config);

}  // namespace panelfusion

#endif  // PANELFUSION_CONFIG_H_

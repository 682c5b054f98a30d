#ifndef PANELFUSION_COST_MODEL_H_
#define PANELFUSION_COST_MODEL_H_

#include <optional>
#include <string>
#include <vector>

#include "panelfusion/panel.h"
#include "panelfusion/types.h"

namespace panelfusion {

enum class CostMode { kHard, kSoft };

inline constexpr CostValue kDefaultCostScale = 1'000'000;
// 1000 normalized squared-distance units, expressed in integer cost units.
inline constexpr CostValue kDefaultPenalty = 1000 * kDefaultCostScale;

std::string CostModeName(CostMode mode);
// Accepts "hard" or "soft"; throws ValidationError otherwise.
CostMode ParseCostMode(const std::string& text);

struct CostModel {
  CostMode mode = CostMode::kSoft;
  CostValue penalty = kDefaultPenalty;  // per mismatched categorical
  CostValue cost_scale = kDefaultCostScale;
  // Hard mode only: which categorical features exclude an arc on mismatch.
  // Empty means every feature. Mismatches on the remaining features are
  // charged the soft penalty.
  std::vector<bool> hard_features;

  // Throws ValidationError on cost_scale < 1, penalty < 0, or a
  // hard_features mask of the wrong length.
  void Validate(int num_categorical) const;
};

// round(cost_scale * sum of squared real differences) plus the categorical
// term; nullopt when a hard-mode feature differs. Real components are
// expected to be normalized already.
std::optional<CostValue> Distance(const int32_t* cat_a, const double* real_a,
                                  const int32_t* cat_b, const double* real_b,
                                  int num_categorical, int num_real,
                                  const CostModel& model);

// Same, on panelists that share a schema.
std::optional<CostValue> Distance(const Panelist& a, const Panelist& b,
                                  const CostModel& model);

}  // namespace panelfusion

#endif  // PANELFUSION_COST_MODEL_H_

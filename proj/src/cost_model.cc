#include "panelfusion/cost_model.h"

#include <cmath>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

bool IsHard(const CostModel& model, int feature) {
  return model.hard_features.empty() || model.hard_features[feature];
}

template <typename Cat>
std::optional<CostValue> Evaluate(const Cat* cat_a, const double* real_a,
                                  const Cat* cat_b, const double* real_b,
                                  int num_categorical, int num_real,
                                  const CostModel& model) {
  CostValue mismatches = 0;
  for (int k = 0; k < num_categorical; ++k) {
    if (cat_a[k] == cat_b[k]) continue;
    if (model.mode == CostMode::kHard && IsHard(model, k)) {
      return std::nullopt;
    }
    ++mismatches;
  }
  double sum = 0;
  for (int k = 0; k < num_real; ++k) {
    const double d = real_a[k] - real_b[k];
    sum += d * d;
  }
  return std::llround(static_cast<double>(model.cost_scale) * sum) +
         model.penalty * mismatches;
}

}  // namespace

std::string CostModeName(CostMode mode) {
  return mode == CostMode::kHard ? "hard" : "soft";
}

CostMode ParseCostMode(const std::string& text) {
  if (text == "hard") return CostMode::kHard;
  if (text == "soft") return CostMode::kSoft;
  throw ValidationError("unknown cost mode \"" + text +
                        "\" (expected hard or soft)");
}

void CostModel::Validate(int num_categorical) const {
  if (cost_scale < 1) throw ValidationError("cost_scale must be >= 1");
  if (penalty < 0) throw ValidationError("penalty must be >= 0");
  if (!hard_features.empty() &&
      static_cast<int>(hard_features.size()) != num_categorical) {
    throw ValidationError("hard feature mask has the wrong length");
  }
}

std::optional<CostValue> Distance(const int32_t* cat_a, const double* real_a,
                                  const int32_t* cat_b, const double* real_b,
                                  int num_categorical, int num_real,
                                  const CostModel& model) {
  return Evaluate(cat_a, real_a, cat_b, real_b, num_categorical, num_real,
                  model);
}

std::optional<CostValue> Distance(const Panelist& a, const Panelist& b,
                                  const CostModel& model) {
  if (a.categorical.size() != b.categorical.size() ||
      a.real.size() != b.real.size()) {
    throw ValidationError("Distance: feature vectors differ in arity");
  }
  return Evaluate(a.categorical.data(), a.real.data(), b.categorical.data(),
                  b.real.data(), static_cast<int>(a.categorical.size()),
                  static_cast<int>(a.real.size()), model);
}

}  // namespace panelfusion

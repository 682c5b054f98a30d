#ifndef PANELFUSION_FEATURES_H_
#define PANELFUSION_FEATURES_H_

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "panelfusion/panel.h"

namespace panelfusion {

struct RealRange {
  double min = 0;
  double max = 0;
};

struct FeatureSchema {
  std::vector<std::string> categorical_names;
  std::vector<std::string> real_names;
  std::vector<RealRange> real_ranges;  // observed over both panels

  int CategoricalIndex(const std::string& name) const;  // -1 if absent
};

// Min-max maps each real feature onto [0,1] using the range over the union of
// both panels; a constant feature maps to 0. Categoricals pass through. If
// the right panel lists the same features in another order its columns are
// reordered to the left panel's order.
//
// Throws ValidationError naming the first feature present on one side only.
std::tuple<Panel, Panel, FeatureSchema> NormalizeFeatures(const Panel& left,
                                                          const Panel& right);

// Feature matrices with categoricals replaced by per-feature integer codes.
// Codes follow the sorted order of the category strings over both panels, so
// comparing codes orders exactly as comparing strings.
struct EncodedPanel {
  int num_categorical = 0;
  int num_real = 0;
  std::vector<int32_t> categorical;  // row-major, size() * num_categorical
  std::vector<double> real;          // row-major, size() * num_real

  size_t size() const { return rows_; }
  const int32_t* cat_row(size_t i) const {
    return categorical.data() + i * num_categorical;
  }
  const double* real_row(size_t i) const {
    return real.data() + i * num_real;
  }

  size_t rows_ = 0;
};

struct EncodedPair {
  EncodedPanel left;
  EncodedPanel right;
  // dictionary[k][code] is the category string for feature k.
  std::vector<std::vector<std::string>> dictionary;
};

// Encodes two panels that already share a schema (e.g. NormalizeFeatures
// output).
EncodedPair EncodeFeatures(const Panel& left, const Panel& right);

}  // namespace panelfusion

#endif  // PANELFUSION_FEATURES_H_

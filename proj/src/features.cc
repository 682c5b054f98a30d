#include "panelfusion/features.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

// Position of each of `names` within `reference`, or throws naming the
// first mismatch.
std::vector<size_t> MatchColumns(const std::vector<std::string>& reference,
                                 const std::vector<std::string>& names,
                                 const char* kind) {
  std::unordered_map<std::string, size_t> where;
  for (size_t i = 0; i < names.size(); ++i) where.emplace(names[i], i);
  std::vector<size_t> order;
  for (const std::string& name : reference) {
    auto it = where.find(name);
    if (it == where.end()) {
      throw ValidationError(std::string("schema mismatch: ") + kind +
                            " feature \"" + name +
                            "\" missing from the right panel");
    }
    order.push_back(it->second);
  }
  if (names.size() != reference.size()) {
    for (const std::string& name : names) {
      if (std::find(reference.begin(), reference.end(), name) ==
          reference.end()) {
        throw ValidationError(std::string("schema mismatch: ") + kind +
                              " feature \"" + name +
                              "\" missing from the left panel");
      }
    }
  }
  return order;
}

}  // namespace

int FeatureSchema::CategoricalIndex(const std::string& name) const {
  auto it =
      std::find(categorical_names.begin(), categorical_names.end(), name);
  return it == categorical_names.end()
             ? -1
             : static_cast<int>(it - categorical_names.begin());
}

std::tuple<Panel, Panel, FeatureSchema> NormalizeFeatures(const Panel& left,
                                                          const Panel& right) {
  const std::vector<size_t> cat_order =
      MatchColumns(left.schema.categorical_names,
                   right.schema.categorical_names, "categorical");
  const std::vector<size_t> real_order = MatchColumns(
      left.schema.real_names, right.schema.real_names, "real");

  Panel out_left = left;
  Panel out_right = right;
  out_right.schema = left.schema;
  for (size_t i = 0; i < right.size(); ++i) {
    const Panelist& src = right.panelists[i];
    Panelist& dst = out_right.panelists[i];
    for (size_t k = 0; k < cat_order.size(); ++k) {
      dst.categorical[k] = src.categorical[cat_order[k]];
    }
    for (size_t k = 0; k < real_order.size(); ++k) {
      dst.real[k] = src.real[real_order[k]];
    }
  }

  FeatureSchema schema;
  schema.categorical_names = left.schema.categorical_names;
  schema.real_names = left.schema.real_names;
  const size_t num_real = schema.real_names.size();
  schema.real_ranges.assign(num_real,
                            {std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()});
  for (const Panel* panel : {&out_left, &out_right}) {
    for (const Panelist& p : panel->panelists) {
      for (size_t k = 0; k < num_real; ++k) {
        schema.real_ranges[k].min = std::min(schema.real_ranges[k].min, p.real[k]);
        schema.real_ranges[k].max = std::max(schema.real_ranges[k].max, p.real[k]);
      }
    }
  }
  for (RealRange& range : schema.real_ranges) {
    if (range.min > range.max) range = {0, 0};  // both panels empty
  }
  for (Panel* panel : {&out_left, &out_right}) {
    for (Panelist& p : panel->panelists) {
      for (size_t k = 0; k < num_real; ++k) {
        const RealRange& range = schema.real_ranges[k];
        const double span = range.max - range.min;
        p.real[k] = span > 0 ? (p.real[k] - range.min) / span : 0.0;
      }
    }
  }
  return {std::move(out_left), std::move(out_right), std::move(schema)};
}

EncodedPair EncodeFeatures(const Panel& left, const Panel& right) {
  if (!(left.schema == right.schema)) {
    throw ValidationError("EncodeFeatures: panels do not share a schema");
  }
  const int num_cat = static_cast<int>(left.schema.categorical_names.size());
  const int num_real = static_cast<int>(left.schema.real_names.size());
  EncodedPair out;
  out.dictionary.resize(num_cat);
  std::vector<std::unordered_map<std::string, int32_t>> codes(num_cat);
  for (int k = 0; k < num_cat; ++k) {
    std::vector<std::string>& values = out.dictionary[k];
    for (const Panel* panel : {&left, &right}) {
      for (const Panelist& p : panel->panelists) {
        values.push_back(p.categorical[k]);
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (size_t c = 0; c < values.size(); ++c) {
      codes[k].emplace(values[c], static_cast<int32_t>(c));
    }
  }
  auto encode = [&](const Panel& panel, EncodedPanel& encoded) {
    encoded.num_categorical = num_cat;
    encoded.num_real = num_real;
    encoded.rows_ = panel.size();
    encoded.categorical.reserve(panel.size() * num_cat);
    encoded.real.reserve(panel.size() * num_real);
    for (const Panelist& p : panel.panelists) {
      for (int k = 0; k < num_cat; ++k) {
        encoded.categorical.push_back(codes[k].at(p.categorical[k]));
      }
      encoded.real.insert(encoded.real.end(), p.real.begin(), p.real.end());
    }
  };
  encode(left, out.left);
  encode(right, out.right);
  return out;
}

}  // namespace panelfusion

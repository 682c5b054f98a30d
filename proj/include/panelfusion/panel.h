#ifndef PANELFUSION_PANEL_H_
#define PANELFUSION_PANEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "panelfusion/types.h"

namespace panelfusion {

struct PanelSchema {
  std::vector<std::string> categorical_names;
  std::vector<std::string> real_names;

  bool operator==(const PanelSchema&) const = default;
};

struct Panelist {
  std::string id;
  double weight = 0;       // universe persons
  FlowQuantity units = 0;  // set by QuantizeWeights
  std::vector<std::string> categorical;
  std::vector<double> real;
};

struct Panel {
  PanelSchema schema;
  std::vector<Panelist> panelists;
  // Units per universe person; 0 until QuantizeWeights has run.
  int64_t unit_scale = 0;

  size_t size() const { return panelists.size(); }
  double TotalWeight() const;
  FlowQuantity TotalUnits() const;
};

// Reads the panel CSV contract:
//   id,weight,cat:<name>...,num:<name>...
// Throws IoError if the file cannot be read and ValidationError for
// duplicate ids, non-positive weights, arity mismatches and non-numeric
// values. Row numbers in messages count the header as row 1.
Panel LoadPanel(const std::string& path);
Panel ParsePanel(const std::string& text, const std::string& source = "panel");

// Writes the same contract. Weights use the shortest decimal form that reads
// back to the identical double.
void WritePanel(const Panel& panel, const std::string& path);
std::string FormatPanel(const Panel& panel);

// Checks the basic invariants (unique ids, positive finite weights, feature
// arity). Throws ValidationError.
void ValidatePanel(const Panel& panel);

inline constexpr double kUniverseTolerance = 1e-6;

// Converts weights to integer units, units = round(weight * unit_scale) with
// a minimum of 1. Both sides are then adjusted to a common total of
// round(unit_scale * mean of the two weight totals); each side's drift is
// absorbed by its largest-weight panelist (lowest id on ties).
//
// Throws ValidationError "universe mismatch" when the weight totals differ
// by more than tolerance relative to their mean, or when absorbing the drift
// would leave a panelist with fewer than one unit.
void QuantizeWeights(Panel& left, Panel& right, int64_t unit_scale,
                     double tolerance = kUniverseTolerance);

}  // namespace panelfusion

#endif  // PANELFUSION_PANEL_H_

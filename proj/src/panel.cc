#include "panelfusion/panel.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "panelfusion/csv.h"
#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

constexpr std::string_view kCatPrefix = "cat:";
constexpr std::string_view kNumPrefix = "num:";

std::string RowLabel(const std::string& source, size_t row) {
  return source + " row " + std::to_string(row);
}

// Index of the panelist that absorbs rounding drift.
size_t LargestWeight(const Panel& panel) {
  size_t best = 0;
  for (size_t i = 1; i < panel.size(); ++i) {
    const Panelist& p = panel.panelists[i];
    const Panelist& b = panel.panelists[best];
    if (p.weight > b.weight || (p.weight == b.weight && p.id < b.id)) best = i;
  }
  return best;
}

}  // namespace

double Panel::TotalWeight() const {
  double total = 0;
  for (const Panelist& p : panelists) total += p.weight;
  return total;
}

FlowQuantity Panel::TotalUnits() const {
  FlowQuantity total = 0;
  for (const Panelist& p : panelists) total += p.units;
  return total;
}

Panel ParsePanel(const std::string& text, const std::string& source) {
  std::vector<CsvRow> rows = ParseCsv(text, source);
  if (rows.empty()) throw ValidationError(source + ": missing header");
  const std::vector<std::string>& header = rows[0].fields;
  if (header.size() < 2 || header[0] != "id" || header[1] != "weight") {
    throw ValidationError(source +
                          ": header must start with \"id,weight\"");
  }

  Panel panel;
  std::unordered_set<std::string> names;
  bool seen_num = false;
  for (size_t c = 2; c < header.size(); ++c) {
    std::string_view column = header[c];
    std::string name;
    if (column.starts_with(kCatPrefix)) {
      if (seen_num) {
        throw ValidationError(source + ": column \"" + header[c] +
                              "\" must precede the num: columns");
      }
      name = std::string(column.substr(kCatPrefix.size()));
      panel.schema.categorical_names.push_back(name);
    } else if (column.starts_with(kNumPrefix)) {
      seen_num = true;
      name = std::string(column.substr(kNumPrefix.size()));
      panel.schema.real_names.push_back(name);
    } else {
      throw ValidationError(source + ": column \"" + header[c] +
                            "\" lacks a cat: or num: prefix");
    }
    if (name.empty() || !names.insert(name).second) {
      throw ValidationError(source + ": duplicate or empty feature name \"" +
                            name + "\"");
    }
  }

  const size_t num_cat = panel.schema.categorical_names.size();
  std::unordered_set<std::string> ids;
  panel.panelists.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw ValidationError(RowLabel(source, row.row) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(row.fields.size()));
    }
    Panelist p;
    p.id = row.fields[0];
    if (p.id.empty()) {
      throw ValidationError(RowLabel(source, row.row) + ": empty id");
    }
    if (!ids.insert(p.id).second) {
      throw ValidationError(RowLabel(source, row.row) + ": duplicate id \"" +
                            p.id + "\"");
    }
    if (!ParseDouble(row.fields[1], p.weight)) {
      throw ValidationError(RowLabel(source, row.row) +
                            ": non-numeric weight \"" + row.fields[1] + "\"");
    }
    if (!(p.weight > 0)) {
      throw ValidationError(RowLabel(source, row.row) +
                            ": non-positive weight " + row.fields[1]);
    }
    p.categorical.assign(row.fields.begin() + 2,
                         row.fields.begin() + 2 + num_cat);
    p.real.resize(panel.schema.real_names.size());
    for (size_t k = 0; k < p.real.size(); ++k) {
      const std::string& cell = row.fields[2 + num_cat + k];
      if (!ParseDouble(cell, p.real[k])) {
        throw ValidationError(RowLabel(source, row.row) + ": feature \"" +
                              panel.schema.real_names[k] +
                              "\" is not numeric: \"" + cell + "\"");
      }
    }
    panel.panelists.push_back(std::move(p));
  }
  return panel;
}

Panel LoadPanel(const std::string& path) {
  return ParsePanel(ReadFile(path), path);
}

std::string FormatPanel(const Panel& panel) {
  std::string out = "id,weight";
  for (const std::string& name : panel.schema.categorical_names) {
    out += ',';
    out += EscapeCsvField(std::string(kCatPrefix) + name);
  }
  for (const std::string& name : panel.schema.real_names) {
    out += ',';
    out += EscapeCsvField(std::string(kNumPrefix) + name);
  }
  out += '\n';
  for (const Panelist& p : panel.panelists) {
    out += EscapeCsvField(p.id);
    out += ',';
    out += FormatDouble(p.weight);
    for (const std::string& value : p.categorical) {
      out += ',';
      out += EscapeCsvField(value);
    }
    for (double value : p.real) {
      out += ',';
      out += FormatDouble(value);
    }
    out += '\n';
  }
  return out;
}

void WritePanel(const Panel& panel, const std::string& path) {
  WriteFile(path, FormatPanel(panel));
}

void ValidatePanel(const Panel& panel) {
  std::unordered_set<std::string> ids;
  for (size_t i = 0; i < panel.size(); ++i) {
    const Panelist& p = panel.panelists[i];
    const std::string where = "panelist \"" + p.id + "\"";
    if (!ids.insert(p.id).second) {
      throw ValidationError("duplicate id \"" + p.id + "\"");
    }
    if (!(p.weight > 0) || !std::isfinite(p.weight)) {
      throw ValidationError(where + ": non-positive weight");
    }
    if (p.categorical.size() != panel.schema.categorical_names.size() ||
        p.real.size() != panel.schema.real_names.size()) {
      throw ValidationError(where + ": feature arity mismatch");
    }
  }
}

void QuantizeWeights(Panel& left, Panel& right, int64_t unit_scale,
                     double tolerance) {
  if (unit_scale < 1) throw ValidationError("unit_scale must be >= 1");
  if (left.size() == 0 || right.size() == 0) {
    throw ValidationError("cannot quantize an empty panel");
  }
  const double left_total = left.TotalWeight();
  const double right_total = right.TotalWeight();
  const double mean = (left_total + right_total) / 2;
  if (std::abs(left_total - right_total) > tolerance * mean) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "universe mismatch: left total " << left_total
        << ", right total " << right_total;
    throw ValidationError(msg.str());
  }
  const long double scaled_target =
      static_cast<long double>(mean) * static_cast<long double>(unit_scale);
  if (scaled_target > 1e18L) {
    throw OverflowError("universe total too large for unit_scale " +
                        std::to_string(unit_scale));
  }
  const FlowQuantity target = std::llround(scaled_target);

  for (Panel* panel : {&left, &right}) {
    FlowQuantity total = 0;
    for (Panelist& p : panel->panelists) {
      p.units = std::max<FlowQuantity>(
          1, std::llround(static_cast<long double>(p.weight) * unit_scale));
      total += p.units;
    }
    Panelist& absorber = panel->panelists[LargestWeight(*panel)];
    absorber.units += target - total;
    if (absorber.units < 1) {
      throw ValidationError(
          "universe mismatch: rounding drift of " +
          std::to_string(target - total) +
          " units cannot be absorbed by panelist \"" + absorber.id + "\"");
    }
    panel->unit_scale = unit_scale;
  }
}

}  // namespace panelfusion

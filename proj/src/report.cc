#include "panelfusion/report.h"

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

using nlohmann::ordered_json;

const Panelist& Lookup(const std::unordered_map<std::string, size_t>& index,
                       const Panel& panel, const std::string& id,
                       const char* side) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw IntegrityError(std::string("assignment references unknown ") + side +
                         " id \"" + id + "\"");
  }
  return panel.panelists[it->second];
}

std::unordered_map<std::string, size_t> IndexIds(const Panel& panel) {
  std::unordered_map<std::string, size_t> index;
  index.reserve(panel.size());
  for (size_t i = 0; i < panel.size(); ++i) index.emplace(panel.panelists[i].id, i);
  return index;
}

ordered_json TraceJson(const IterationTrace& trace) {
  ordered_json stages = ordered_json::array();
  for (const StageTrace& s : trace.stages) {
    stages.push_back({{"stage", s.stage},
                      {"clusters", s.clusters},
                      {"matched_left", s.matched_left},
                      {"matched_right", s.matched_right},
                      {"residual_left", s.residual_left},
                      {"residual_right", s.residual_right},
                      {"deferred_left", s.deferred_left},
                      {"deferred_right", s.deferred_right},
                      {"dummy_nodes", s.dummy_nodes},
                      {"pruned_fallbacks", s.pruned_fallbacks},
                      {"arcs", s.arcs},
                      {"cost", WideToString(s.cost)},
                      {"elapsed_seconds", s.elapsed_seconds}});
  }
  return stages;
}

std::string CountAndPct(size_t count, int64_t pct) {
  return std::to_string(count) + " (" + FormatHundredths(pct) + "%)";
}

}  // namespace

int64_t Hundredths(WideCost part, WideCost whole) {
  if (whole <= 0) return 0;
  return static_cast<int64_t>((part * 20000 + whole) / (2 * whole));
}

std::string FormatHundredths(int64_t hundredths) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%lld.%02lld",
                static_cast<long long>(hundredths / 100),
                static_cast<long long>(hundredths % 100));
  return buffer;
}

FusionReport MakeFusionReport(const AssignmentSet& assignments,
                              const Panel& left, const Panel& right) {
  const auto left_index = IndexIds(left);
  const auto right_index = IndexIds(right);
  FusionReport report;
  report.assignments = assignments.pairs.size();
  for (const AssignedPair& pair : assignments.pairs) {
    const Panelist& a = Lookup(left_index, left, pair.left_id, "left");
    const Panelist& b = Lookup(right_index, right, pair.right_id, "right");
    if (a.categorical == b.categorical) {
      ++report.within_count;
      report.within_units += pair.units;
    } else {
      ++report.across_count;
      report.across_units += pair.units;
    }
  }
  if (report.assignments > 0) {
    report.within_count_pct =
        Hundredths(report.within_count, report.assignments);
    report.across_count_pct = 10000 - report.within_count_pct;
  }
  const WideCost units = static_cast<WideCost>(report.within_units) +
                         report.across_units;
  if (units > 0) {
    report.within_flow_pct = Hundredths(report.within_units, units);
    report.across_flow_pct = 10000 - report.within_flow_pct;
  }
  return report;
}

FusionReport MakeFusionReport(const FusionResult& result, const Panel& left,
                              const Panel& right) {
  FusionReport report = MakeFusionReport(result.assignments, left, right);
  report.total_cost = result.total_cost;
  report.has_cost = true;
  report.trace = result.trace;
  report.wall_seconds = result.elapsed_seconds;
  return report;
}

std::string ReportToJson(const FusionReport& report) {
  ordered_json doc;
  doc["total_cost"] =
      report.has_cost ? ordered_json(WideToString(report.total_cost)) : nullptr;
  doc["assignments"] = report.assignments;
  doc["within_count"] = report.within_count;
  doc["within_count_pct"] = FormatHundredths(report.within_count_pct);
  doc["across_count"] = report.across_count;
  doc["across_count_pct"] = FormatHundredths(report.across_count_pct);
  doc["within_units"] = report.within_units;
  doc["within_flow_pct"] = FormatHundredths(report.within_flow_pct);
  doc["across_units"] = report.across_units;
  doc["across_flow_pct"] = FormatHundredths(report.across_flow_pct);
  doc["stages"] = TraceJson(report.trace);
  doc["wall_seconds"] = report.wall_seconds;
  return doc.dump(2) + "\n";
}

std::string ReportToText(const FusionReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(44) << label << value << "\n";
  };
  if (report.has_cost) row("Cost", WideToString(report.total_cost));
  row("Assignments", std::to_string(report.assignments));
  row("Assignments within same demo categories",
      CountAndPct(report.within_count, report.within_count_pct));
  row("Assignments across demo categories",
      CountAndPct(report.across_count, report.across_count_pct));
  row("Flow assigned within same demo categories",
      CountAndPct(report.within_units, report.within_flow_pct));
  row("Flow assigned across demo categories",
      CountAndPct(report.across_units, report.across_flow_pct));
  if (report.has_cost) {
    std::ostringstream seconds;
    seconds << std::fixed << std::setprecision(3) << report.wall_seconds;
    row("Wall time (s)", seconds.str());
  }
  if (!report.trace.stages.empty()) {
    out << "\n" << TraceToText(report.trace);
  }
  return out.str();
}

std::string TraceToCsv(const IterationTrace& trace) {
  std::ostringstream out;
  out << "stage,clusters,matched_left,matched_right,residual_left,"
         "residual_right,deferred_left,deferred_right,dummy_nodes,"
         "pruned_fallbacks,arcs,cost,elapsed_seconds\n";
  for (const StageTrace& s : trace.stages) {
    out << s.stage << ',' << s.clusters << ',' << s.matched_left << ','
        << s.matched_right << ',' << s.residual_left << ','
        << s.residual_right << ',' << s.deferred_left << ','
        << s.deferred_right << ',' << s.dummy_nodes << ','
        << s.pruned_fallbacks << ',' << s.arcs << ',' << WideToString(s.cost)
        << ',' << std::fixed << std::setprecision(3) << s.elapsed_seconds
        << std::defaultfloat << '\n';
  }
  return out.str();
}

std::string TraceToText(const IterationTrace& trace) {
  std::ostringstream out;
  out << std::right << std::setw(6) << "Stage" << std::setw(10) << "Clusters"
      << std::setw(14) << "Matched L" << std::setw(12) << "Matched R"
      << std::setw(14) << "Residual L" << std::setw(12) << "Residual R"
      << std::setw(10) << "Time(s)" << "\n";
  for (const StageTrace& s : trace.stages) {
    out << std::setw(6) << s.stage << std::setw(10) << s.clusters
        << std::setw(14) << s.matched_left << std::setw(12) << s.matched_right
        << std::setw(14) << s.residual_left << std::setw(12)
        << s.residual_right << std::setw(10) << std::fixed
        << std::setprecision(2) << s.elapsed_seconds << std::defaultfloat
        << "\n";
  }
  return out.str();
}

SelfFusionReport SelfFusionQuality(const Panel& panel,
                                   const EngineConfig& config) {
  Panel left = panel;
  Panel right = panel;
  QuantizeWeights(left, right, config.unit_scale);
  const FusionResult result =
      FuseIterative(left, right, config.Schedule(), config.BaseModel(),
                    config.Options());

  SelfFusionReport report;
  report.panelists = left.size();
  report.total_units = left.TotalUnits();
  report.total_cost = result.total_cost;
  std::unordered_map<std::string, FlowQuantity> self_units;
  for (const AssignedPair& pair : result.assignments.pairs) {
    if (pair.left_id == pair.right_id) {
      report.self_units += pair.units;
      self_units[pair.left_id] += pair.units;
    }
  }
  for (const Panelist& p : left.panelists) {
    auto it = self_units.find(p.id);
    if (it != self_units.end() && it->second == p.units) ++report.fully_self;
  }
  report.self_flow_pct = Hundredths(report.self_units, report.total_units);
  report.fully_self_pct = Hundredths(report.fully_self, report.panelists);
  return report;
}

std::string SelfFusionToJson(const SelfFusionReport& report) {
  ordered_json doc;
  doc["panelists"] = report.panelists;
  doc["total_units"] = report.total_units;
  doc["self_units"] = report.self_units;
  doc["self_flow_pct"] = FormatHundredths(report.self_flow_pct);
  doc["fully_self"] = report.fully_self;
  doc["fully_self_pct"] = FormatHundredths(report.fully_self_pct);
  doc["total_cost"] = WideToString(report.total_cost);
  return doc.dump(2) + "\n";
}

std::string SelfFusionToText(const SelfFusionReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(36) << label << value << "\n";
  };
  row("Panelists", std::to_string(report.panelists));
  row("Flow self-assigned",
      FormatHundredths(report.self_flow_pct) + "% (" +
          std::to_string(report.self_units) + " of " +
          std::to_string(report.total_units) + " units)");
  row("Panelists fully self-assigned",
      FormatHundredths(report.fully_self_pct) + "% (" +
          std::to_string(report.fully_self) + ")");
  row("Total cost", WideToString(report.total_cost));
  return out.str();
}

}  // namespace panelfusion

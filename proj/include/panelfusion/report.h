#ifndef PANELFUSION_REPORT_H_
#define PANELFUSION_REPORT_H_

#include <cstdint>
#include <string>

#include "panelfusion/assignment.h"
#include "panelfusion/config.h"
#include "panelfusion/fusion_engine.h"
#include "panelfusion/panel.h"

namespace panelfusion {

// Percentages are carried as integer hundredths of a percent (6102 is
// 61.02%), rounded half up from the exact ratio.
int64_t Hundredths(WideCost part, WideCost whole);
std::string FormatHundredths(int64_t hundredths);

struct FusionReport {
  WideCost total_cost = 0;
  bool has_cost = false;
  size_t assignments = 0;
  // "Within" means equal on every categorical feature.
  size_t within_count = 0;
  size_t across_count = 0;
  int64_t within_count_pct = 0;  // hundredths
  int64_t across_count_pct = 0;
  FlowQuantity within_units = 0;
  FlowQuantity across_units = 0;
  int64_t within_flow_pct = 0;
  int64_t across_flow_pct = 0;
  IterationTrace trace;
  double wall_seconds = 0;
};

// Throws IntegrityError if a pair names an id missing from its panel.
FusionReport MakeFusionReport(const AssignmentSet& assignments,
                              const Panel& left, const Panel& right);
// Adds cost, trace and timing from the run that produced the assignments.
FusionReport MakeFusionReport(const FusionResult& result, const Panel& left,
                              const Panel& right);

std::string ReportToJson(const FusionReport& report);
std::string ReportToText(const FusionReport& report);

// stage,clusters,matched_left,matched_right,residual_left,residual_right,...
std::string TraceToCsv(const IterationTrace& trace);
std::string TraceToText(const IterationTrace& trace);

struct SelfFusionReport {
  size_t panelists = 0;
  FlowQuantity total_units = 0;
  FlowQuantity self_units = 0;
  int64_t self_flow_pct = 0;  // hundredths
  size_t fully_self = 0;      // panelists whose whole weight went to self
  int64_t fully_self_pct = 0;
  WideCost total_cost = 0;
};

// Fuses a panel with a copy of itself using the iterative engine and the
// config's schedule, and measures how much flow stays on the diagonal.
SelfFusionReport SelfFusionQuality(const Panel& panel,
                                   const EngineConfig& config);

std::string SelfFusionToJson(const SelfFusionReport& report);
std::string SelfFusionToText(const SelfFusionReport& report);

}  // namespace panelfusion

#endif  // PANELFUSION_REPORT_H_

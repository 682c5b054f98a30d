#ifndef PANELFUSION_FUSION_ENGINE_H_
#define PANELFUSION_FUSION_ENGINE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "panelfusion/assignment.h"
#include "panelfusion/bipartite.h"
#include "panelfusion/cost_model.h"
#include "panelfusion/features.h"
#include "panelfusion/min_cost_flow.h"
#include "panelfusion/panel.h"

namespace panelfusion {

// Ordered partition-feature subsets. The last stage must be empty.
struct RelaxationSchedule {
  std::vector<std::vector<std::string>> stages = {{}};
  // Cost mode per stage. Empty means hard for every partitioned stage. The
  // final stage always runs soft regardless of this entry.
  std::vector<CostMode> modes;

  // Throws ValidationError if the last stage is not empty, a name is not a
  // categorical feature of the schema, or modes has the wrong length.
  void Validate(const PanelSchema& schema) const;
};

struct StageTrace {
  int stage = 0;
  size_t clusters = 0;
  size_t matched_left = 0;  // panelists whose residual reached 0 this stage
  size_t matched_right = 0;
  size_t residual_left = 0;  // panelists with units left after the stage
  size_t residual_right = 0;
  size_t deferred_left = 0;  // in one-sided clusters, skipped this stage
  size_t deferred_right = 0;
  size_t dummy_nodes = 0;
  size_t pruned_fallbacks = 0;
  size_t arcs = 0;
  double elapsed_seconds = 0;
  WideCost cost = 0;
};

struct IterationTrace {
  std::vector<StageTrace> stages;
};

struct FusionOptions {
  PruneConfig pruning;
  // Per partitioned stage, drop every assignment of a left panelist that was
  // split across several right panelists. Ignored in the final stage.
  bool no_split = false;
  int workers = 1;
  // FuseSingle refuses problems whose estimated arc count exceeds this.
  int64_t single_arc_cap = 1'000'000'000;
  SolverOptions solver;
  std::function<void(const StageTrace&)> on_stage;
};

struct FusionResult {
  AssignmentSet assignments;
  WideCost total_cost = 0;  // sum of units * integer arc cost
  IterationTrace trace;
  double elapsed_seconds = 0;
};

// Core framework: one bipartite graph over both whole panels.
// Panels must be quantized with equal unit totals (ValidationError
// otherwise). Throws InfeasibleError when no feasible flow exists, listing
// the category blocks whose units differ in hard mode.
FusionResult FuseSingle(const Panel& left, const Panel& right,
                        const CostModel& model,
                        const FusionOptions& options = {});

// Iterative relaxed partitioned fusion. base supplies penalty and cost_scale;
// per stage, hard mode excludes arcs only on the stage's own partition
// features (which already agree inside a cluster) and charges the penalty on
// the others. The final stage always runs soft and split-allowed.
FusionResult FuseIterative(const Panel& left, const Panel& right,
                           const RelaxationSchedule& schedule,
                           const CostModel& base,
                           const FusionOptions& options = {});

// ---- Building blocks, exposed for tests and tooling. ----

struct Cluster {
  std::vector<int32_t> key;  // category codes on the stage features
  SideSelection left;
  SideSelection right;
};

struct PartitionResult {
  std::vector<Cluster> clusters;  // sorted by key
  std::vector<int32_t> deferred_left;
  std::vector<int32_t> deferred_right;
};

// Groups rows with positive units by their codes on `features` (indices into
// the categorical columns). Keys present on one side only are deferred. An
// empty feature list yields at most one cluster.
PartitionResult Partition(const EncodedPair& encoded,
                          std::span<const FlowQuantity> left_units,
                          std::span<const FlowQuantity> right_units,
                          const std::vector<int>& features);

// Adds the dummy balancing node when unit totals differ. With
// w_d = sum(left) - sum(right): w_d > 0 adds a demand node of -w_d fed by
// every left node, w_d < 0 a supply node of |w_d| feeding every right node.
// Dummy arcs cost 0. Returns the dummy node or -1.
NodeIndex BalanceCluster(BipartiteGraph& graph);

struct IndexedPair {
  int32_t left;   // row in the left panel
  int32_t right;  // row in the right panel
  FlowQuantity units;
  CostValue unit_cost;

  bool operator==(const IndexedPair&) const = default;
};

// Positive-flow arcs between real panelists, in arc order; arcs touching the
// dummy are dropped.
std::vector<IndexedPair> GenerateAssignedPairs(const FlowSolution& solution,
                                               const BipartiteGraph& graph);

// Subtracts assigned units from the residuals and returns the pairs that were
// kept. In no_split mode all pairs of a left row with more than one right
// partner are discarded first. Throws IntegrityError if a pair exceeds a
// residual.
std::vector<IndexedPair> UpdateResiduals(
    const std::vector<IndexedPair>& pairs,
    std::vector<FlowQuantity>& left_units,
    std::vector<FlowQuantity>& right_units, bool no_split);

// Merges duplicate (left, right) pairs and sorts by ids. Weight is
// units / unit_scale.
AssignmentSet ToAssignmentSet(const std::vector<IndexedPair>& pairs,
                              const Panel& left, const Panel& right,
                              int64_t unit_scale);

}  // namespace panelfusion

#endif  // PANELFUSION_FUSION_ENGINE_H_

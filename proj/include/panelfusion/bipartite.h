#ifndef PANELFUSION_BIPARTITE_H_
#define PANELFUSION_BIPARTITE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "panelfusion/cost_model.h"
#include "panelfusion/features.h"
#include "panelfusion/flow_network.h"

namespace panelfusion {

struct PruneConfig {
  bool enabled = false;
  int k = 0;  // arcs kept per left node; 0 selects DefaultPruneK
};

// max(16, ceil(2 * log2(n1 + n2))).
int DefaultPruneK(size_t num_left, size_t num_right);

struct CandidateArc {
  int32_t right;
  CostValue cost;

  bool operator==(const CandidateArc&) const = default;
};

// Keeps the k cheapest arcs of every left node (ties by right id), then gives
// each right node that lost all of its arcs back its single cheapest one
// (ties by left id). Output lists are sorted by right id.
std::vector<std::vector<CandidateArc>> PruneEdges(
    const std::vector<std::vector<CandidateArc>>& arcs_by_left,
    int32_t num_right, int k);

// One side of a bipartite subproblem: rows of an EncodedPanel and the units
// each row currently supplies or demands.
struct SideSelection {
  std::vector<int32_t> rows;
  std::vector<FlowQuantity> units;
};

// Node layout: left i -> i, right j -> num_left + j, then the dummy (if any).
// Arcs are ordered left-major, then by right node.
struct BipartiteGraph {
  FlowNetwork network;
  std::vector<int32_t> left_rows;
  std::vector<int32_t> right_rows;
  NodeIndex num_left = 0;
  NodeIndex num_right = 0;
  NodeIndex dummy = -1;
  bool pruned = false;
  // Left/right nodes left without any incident arc (hard mode exclusions).
  std::vector<NodeIndex> isolated;

  NodeIndex LeftNode(int32_t i) const { return i; }
  NodeIndex RightNode(int32_t j) const { return num_left + j; }
  bool IsDummy(NodeIndex node) const { return node == dummy; }
};

// Supply +units per left node, demand -units per right node, one arc per
// non-excluded pair with lower 0 and unbounded upper.
BipartiteGraph BuildBipartite(const EncodedPanel& left,
                              const SideSelection& left_side,
                              const EncodedPanel& right,
                              const SideSelection& right_side,
                              const CostModel& model,
                              const PruneConfig& pruning);

// Whole-panel convenience: normalizes, encodes and uses every panelist with
// its quantized units. Throws ValidationError if a panel is not quantized.
BipartiteGraph BuildBipartite(const Panel& left, const Panel& right,
                              const CostModel& model,
                              const PruneConfig& pruning);

}  // namespace panelfusion

#endif  // PANELFUSION_BIPARTITE_H_

#ifndef PANELFUSION_MIN_COST_FLOW_H_
#define PANELFUSION_MIN_COST_FLOW_H_

#include <cstdint>

#include "panelfusion/flow_network.h"

namespace panelfusion {

struct SolverOptions {
  // Epsilon is divided by this factor between refine phases.
  int64_t alpha = 2;
  // Global price updates after every num_nodes relabels.
  bool use_price_updates = true;
  // Relabel the head of an admissible arc before pushing into it when the
  // head has no admissible arc of its own.
  bool use_look_ahead = true;
};

// Exact min-cost flow by cost-scaling push-relabel (successive
// approximation). Costs are multiplied by (num_nodes + 1) so that
// 1-optimality in scaled units implies optimality, and epsilon is reduced
// from the largest scaled cost down to 1.
//
// Feasibility is decided first with a max-flow saturation check; an
// infeasible network yields status kInfeasible and no flows. The result is a
// deterministic function of the network.
//
// Throws std::invalid_argument if network.Validate() fails and OverflowError
// if the scaled costs or supplies do not fit in 62 bits.
FlowSolution SolveMinCostFlow(const FlowNetwork& network,
                              const SolverOptions& options = {});

// True when a feasible flow exists (max-flow from supplies to demands
// saturates every supply).
bool IsFeasible(const FlowNetwork& network);

}  // namespace panelfusion

#endif  // PANELFUSION_MIN_COST_FLOW_H_

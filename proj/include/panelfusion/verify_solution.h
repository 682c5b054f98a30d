#ifndef PANELFUSION_VERIFY_SOLUTION_H_
#define PANELFUSION_VERIFY_SOLUTION_H_

#include <string>
#include <vector>

#include "panelfusion/flow_network.h"

namespace panelfusion {

struct NodeBalanceViolation {
  NodeIndex node;
  FlowQuantity expected;  // the node balance
  WideCost actual;        // outflow minus inflow
};

struct ArcBoundViolation {
  ArcIndex arc;
  FlowQuantity flow;
  FlowQuantity lower;
  FlowQuantity upper;
};

struct VerificationReport {
  bool status_optimal = true;
  bool arity_matches = true;  // one flow per arc
  std::vector<NodeBalanceViolation> node_violations;
  std::vector<ArcBoundViolation> arc_violations;
  WideCost recomputed_cost = 0;
  bool cost_matches = true;

  bool Passed() const {
    return status_optimal && arity_matches && node_violations.empty() &&
           arc_violations.empty() && cost_matches;
  }
  std::string Describe() const;
};

// Checks mass balance at every node, bounds on every arc and the reported
// total cost. Never throws.
VerificationReport VerifySolution(const FlowNetwork& network,
                                  const FlowSolution& solution);

}  // namespace panelfusion

#endif  // PANELFUSION_VERIFY_SOLUTION_H_

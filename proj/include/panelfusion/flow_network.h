#ifndef PANELFUSION_FLOW_NETWORK_H_
#define PANELFUSION_FLOW_NETWORK_H_

#include <span>
#include <vector>

#include "panelfusion/types.h"

namespace panelfusion {

struct NetworkArc {
  NodeIndex from = 0;
  NodeIndex to = 0;
  CostValue cost = 0;
  FlowQuantity lower = 0;
  FlowQuantity upper = kUnboundedCapacity;
};

// An integer min-cost-flow instance. Node ids are dense indices in insertion
// order. A positive balance is a supply, a negative balance a demand.
//
// Arcs whose upper bound is kUnboundedCapacity are treated by the solver as
// having capacity equal to the total supply, which no feasible flow exceeds.
class FlowNetwork {
 public:
  NodeIndex AddNode(FlowQuantity balance);
  ArcIndex AddArc(NodeIndex from, NodeIndex to, CostValue cost,
                  FlowQuantity upper = kUnboundedCapacity,
                  FlowQuantity lower = 0);

  void SetBalance(NodeIndex node, FlowQuantity balance) {
    balances_[node] = balance;
  }

  NodeIndex num_nodes() const {
    return static_cast<NodeIndex>(balances_.size());
  }
  ArcIndex num_arcs() const { return static_cast<ArcIndex>(arcs_.size()); }
  FlowQuantity balance(NodeIndex node) const { return balances_[node]; }
  const NetworkArc& arc(ArcIndex index) const { return arcs_[index]; }
  std::span<const FlowQuantity> balances() const { return balances_; }
  std::span<const NetworkArc> arcs() const { return arcs_; }

  // Sum of positive balances.
  FlowQuantity TotalSupply() const;
  CostValue MaxAbsCost() const;

  // Throws std::invalid_argument if an arc references a missing node or is
  // a self-loop, if lower > upper or lower < 0, or if the balances do not
  // sum to zero.
  void Validate() const;

  void ReserveArcs(size_t count) { arcs_.reserve(count); }

 private:
  std::vector<FlowQuantity> balances_;
  std::vector<NetworkArc> arcs_;
};

enum class SolveStatus { kOptimal, kInfeasible };

struct FlowSolution {
  SolveStatus status = SolveStatus::kOptimal;
  std::vector<FlowQuantity> flows;  // indexed by arc; empty when infeasible
  WideCost total_cost = 0;
};

}  // namespace panelfusion

#endif  // PANELFUSION_FLOW_NETWORK_H_

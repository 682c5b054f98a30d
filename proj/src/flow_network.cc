#include "panelfusion/flow_network.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace panelfusion {

NodeIndex FlowNetwork::AddNode(FlowQuantity balance) {
  balances_.push_back(balance);
  return static_cast<NodeIndex>(balances_.size() - 1);
}

ArcIndex FlowNetwork::AddArc(NodeIndex from, NodeIndex to, CostValue cost,
                             FlowQuantity upper, FlowQuantity lower) {
  arcs_.push_back(NetworkArc{from, to, cost, lower, upper});
  return static_cast<ArcIndex>(arcs_.size() - 1);
}

FlowQuantity FlowNetwork::TotalSupply() const {
  FlowQuantity total = 0;
  for (FlowQuantity b : balances_) {
    if (b > 0) total += b;
  }
  return total;
}

CostValue FlowNetwork::MaxAbsCost() const {
  CostValue max_cost = 0;
  for (const NetworkArc& arc : arcs_) {
    max_cost = std::max(max_cost, arc.cost < 0 ? -arc.cost : arc.cost);
  }
  return max_cost;
}

void FlowNetwork::Validate() const {
  const NodeIndex n = num_nodes();
  for (size_t a = 0; a < arcs_.size(); ++a) {
    const NetworkArc& arc = arcs_[a];
    if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " references a missing node");
    }
    if (arc.from == arc.to) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " is a self-loop");
    }
    if (arc.lower < 0 || arc.lower > arc.upper) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " has invalid bounds");
    }
  }
  WideCost sum = 0;
  for (FlowQuantity b : balances_) sum += b;
  if (sum != 0) {
    throw std::invalid_argument("node balances sum to " + WideToString(sum) +
                                ", expected 0");
  }
}

}  // namespace panelfusion

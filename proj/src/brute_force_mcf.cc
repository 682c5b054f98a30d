#include "panelfusion/brute_force_mcf.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace panelfusion {
namespace {

constexpr WideCost kInfinite = std::numeric_limits<WideCost>::max();
constexpr int kDemandBits = 7;  // remaining demand <= 64 fits in 7 bits

struct Cell {
  ArcIndex arc;
  int supply_pos;
  int demand_pos;
  CostValue cost;
  FlowQuantity capacity;
};

// Minimum cost of routing the remaining flow through cells[k..], given the
// remaining demand vector. The supply still to be sent by the current supply
// node follows from the remaining demand, so it is not part of the state.
class Enumerator {
 public:
  Enumerator(std::vector<Cell> cells, std::vector<FlowQuantity> supplies)
      : cells_(std::move(cells)),
        supply_after_(supplies.size() + 1, 0) {
    for (size_t i = supplies.size(); i-- > 0;) {
      supply_after_[i] = supply_after_[i + 1] + supplies[i];
    }
    last_cell_of_supply_.assign(supplies.size(), -1);
    for (size_t k = 0; k < cells_.size(); ++k) {
      last_cell_of_supply_[cells_[k].supply_pos] = static_cast<int>(k);
    }
  }

  WideCost Best(size_t k, std::vector<FlowQuantity>& demand) {
    if (k == cells_.size()) {
      return Remaining(demand) == 0 ? 0 : kInfinite;
    }
    const uint64_t key = Key(k, demand);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    WideCost best = kInfinite;
    const auto [lo, hi] = Choices(k, demand);
    const Cell& cell = cells_[k];
    for (FlowQuantity x = lo; x <= hi; ++x) {
      demand[cell.demand_pos] -= x;
      const WideCost rest = Best(k + 1, demand);
      demand[cell.demand_pos] += x;
      if (rest == kInfinite) continue;
      best = std::min(best, rest + static_cast<WideCost>(cell.cost) * x);
    }
    memo_.emplace(key, best);
    return best;
  }

  // Walks the memo, taking the smallest optimal allocation at each cell.
  std::vector<FlowQuantity> Reconstruct(std::vector<FlowQuantity> demand,
                                        size_t num_arcs) {
    std::vector<FlowQuantity> flows(num_arcs, 0);
    WideCost target = Best(0, demand);
    for (size_t k = 0; k < cells_.size(); ++k) {
      const Cell& cell = cells_[k];
      const auto [lo, hi] = Choices(k, demand);
      for (FlowQuantity x = lo; x <= hi; ++x) {
        demand[cell.demand_pos] -= x;
        const WideCost rest = Best(k + 1, demand);
        if (rest != kInfinite &&
            rest + static_cast<WideCost>(cell.cost) * x == target) {
          flows[cell.arc] = x;
          target = rest;
          break;
        }
        demand[cell.demand_pos] += x;
      }
    }
    return flows;
  }

 private:
  FlowQuantity Remaining(const std::vector<FlowQuantity>& demand) const {
    return std::accumulate(demand.begin(), demand.end(), FlowQuantity{0});
  }

  std::pair<FlowQuantity, FlowQuantity> Choices(
      size_t k, const std::vector<FlowQuantity>& demand) const {
    const Cell& cell = cells_[k];
    const FlowQuantity unsent =
        Remaining(demand) - supply_after_[cell.supply_pos + 1];
    const FlowQuantity hi =
        std::min({unsent, cell.capacity, demand[cell.demand_pos]});
    if (last_cell_of_supply_[cell.supply_pos] == static_cast<int>(k)) {
      // The last cell of a supply node must take whatever is left.
      if (hi != unsent) return {1, 0};
      return {unsent, unsent};
    }
    return {0, hi};
  }

  uint64_t Key(size_t k, const std::vector<FlowQuantity>& demand) const {
    uint64_t key = k;
    for (FlowQuantity d : demand) {
      key = (key << kDemandBits) | static_cast<uint64_t>(d);
    }
    return key;
  }

  std::vector<Cell> cells_;
  std::vector<FlowQuantity> supply_after_;
  std::vector<int> last_cell_of_supply_;
  std::unordered_map<uint64_t, WideCost> memo_;
};

}  // namespace

FlowSolution BruteForceMinCostFlow(const FlowNetwork& network,
                                   const OracleLimits& limits) {
  network.Validate();
  const NodeIndex n = network.num_nodes();
  std::vector<int> position(n, -1);
  std::vector<FlowQuantity> supplies;
  std::vector<FlowQuantity> demands;
  for (NodeIndex v = 0; v < n; ++v) {
    const FlowQuantity b = network.balance(v);
    if (b > 0) {
      position[v] = static_cast<int>(supplies.size());
      supplies.push_back(b);
    } else if (b < 0) {
      position[v] = static_cast<int>(demands.size());
      demands.push_back(-b);
    }
  }
  const FlowQuantity total = std::accumulate(supplies.begin(), supplies.end(),
                                             FlowQuantity{0});
  if (total > limits.max_total_supply ||
      static_cast<int>(supplies.size()) > limits.max_nodes_per_side ||
      static_cast<int>(demands.size()) > limits.max_nodes_per_side ||
      total >= (FlowQuantity{1} << kDemandBits) ||
      demands.size() * kDemandBits + kDemandBits > 64) {
    throw OracleCapExceeded(
        "oracle cap exceeded: supply " + std::to_string(total) + ", " +
        std::to_string(supplies.size()) + " supply and " +
        std::to_string(demands.size()) + " demand nodes");
  }

  std::vector<Cell> cells;
  for (ArcIndex a = 0; a < network.num_arcs(); ++a) {
    const NetworkArc& arc = network.arc(a);
    if (arc.lower != 0 || network.balance(arc.from) <= 0 ||
        network.balance(arc.to) >= 0) {
      throw std::invalid_argument(
          "oracle needs supply-to-demand arcs with zero lower bounds");
    }
    cells.push_back({a, position[arc.from], position[arc.to], arc.cost,
                     std::min(arc.upper, total)});
  }
  if (cells.size() >= (size_t{1} << kDemandBits)) {
    throw OracleCapExceeded("oracle cap exceeded: too many arcs");
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) {
                     return a.supply_pos < b.supply_pos;
                   });

  FlowSolution solution;
  // A supply node without arcs can never ship its supply.
  std::vector<char> has_cell(supplies.size(), 0);
  for (const Cell& cell : cells) has_cell[cell.supply_pos] = 1;
  if (std::find(has_cell.begin(), has_cell.end(), 0) != has_cell.end()) {
    solution.status = SolveStatus::kInfeasible;
    return solution;
  }

  Enumerator enumerator(std::move(cells), supplies);
  std::vector<FlowQuantity> demand = demands;
  const WideCost best = enumerator.Best(0, demand);
  if (best == kInfinite) {
    solution.status = SolveStatus::kInfeasible;
    return solution;
  }
  solution.flows =
      enumerator.Reconstruct(demands, static_cast<size_t>(network.num_arcs()));
  solution.total_cost = best;
  return solution;
}

}  // namespace panelfusion

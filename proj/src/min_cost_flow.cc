#include "panelfusion/min_cost_flow.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

// Potentials drift by up to O(n * epsilon) per refine phase; 128 bits keeps
// them exact for any network whose scaled costs fit in 62 bits.
using Price = __int128;
using ResidualArc = int32_t;

constexpr int64_t kMagnitudeLimit = int64_t{1} << 62;

// Bounds and balances after removing lower bounds and clamping unbounded
// capacities to the total supply.
struct ReducedInstance {
  std::vector<FlowQuantity> balances;
  std::vector<FlowQuantity> capacities;
  FlowQuantity total_supply = 0;
};

ReducedInstance Reduce(const FlowNetwork& network) {
  ReducedInstance out;
  out.balances.assign(network.balances().begin(), network.balances().end());
  for (const NetworkArc& arc : network.arcs()) {
    out.balances[arc.from] -= arc.lower;
    out.balances[arc.to] += arc.lower;
  }
  WideCost supply = 0;
  for (FlowQuantity b : out.balances) {
    if (b > 0) supply += b;
  }
  if (supply >= kMagnitudeLimit) {
    throw OverflowError("total supply exceeds 2^62");
  }
  out.total_supply = static_cast<FlowQuantity>(supply);
  out.capacities.reserve(network.arcs().size());
  for (const NetworkArc& arc : network.arcs()) {
    out.capacities.push_back(arc.upper == kUnboundedCapacity
                                 ? out.total_supply
                                 : std::min(arc.upper - arc.lower,
                                            out.total_supply));
  }
  return out;
}

// Compressed adjacency of the residual graph. The residual arcs of a node
// are ordered by original arc index.
struct ResidualGraph {
  std::vector<ResidualArc> first;  // num_nodes + 1 offsets
  std::vector<NodeIndex> head;
  std::vector<ResidualArc> opposite;
  std::vector<FlowQuantity> residual;
  std::vector<CostValue> cost;
  std::vector<ResidualArc> forward;  // residual index per original arc

  NodeIndex num_nodes() const {
    return static_cast<NodeIndex>(first.size() - 1);
  }
};

ResidualGraph BuildResidualGraph(const FlowNetwork& network,
                                 const std::vector<FlowQuantity>& capacities,
                                 CostValue cost_multiplier) {
  const NodeIndex n = network.num_nodes();
  const auto arcs = network.arcs();
  if (arcs.size() * 2 >=
      static_cast<size_t>(std::numeric_limits<ResidualArc>::max())) {
    throw OverflowError("too many arcs for the residual graph");
  }
  ResidualGraph g;
  g.first.assign(n + 1, 0);
  for (const NetworkArc& arc : arcs) {
    ++g.first[arc.from + 1];
    ++g.first[arc.to + 1];
  }
  for (NodeIndex v = 0; v < n; ++v) g.first[v + 1] += g.first[v];
  const size_t total = arcs.size() * 2;
  g.head.resize(total);
  g.opposite.resize(total);
  g.residual.resize(total);
  g.cost.resize(total);
  g.forward.resize(arcs.size());
  std::vector<ResidualArc> fill(g.first.begin(), g.first.end() - 1);
  for (size_t a = 0; a < arcs.size(); ++a) {
    const NetworkArc& arc = arcs[a];
    const ResidualArc fwd = fill[arc.from]++;
    const ResidualArc bwd = fill[arc.to]++;
    const CostValue scaled = arc.cost * cost_multiplier;
    g.head[fwd] = arc.to;
    g.opposite[fwd] = bwd;
    g.residual[fwd] = capacities[a];
    g.cost[fwd] = scaled;
    g.head[bwd] = arc.from;
    g.opposite[bwd] = fwd;
    g.residual[bwd] = 0;
    g.cost[bwd] = -scaled;
    g.forward[a] = fwd;
  }
  return g;
}

// Dinic max-flow from a virtual source feeding every supply to a virtual
// sink draining every demand.
class SupplyMaxFlow {
 public:
  SupplyMaxFlow(const FlowNetwork& network, const ReducedInstance& reduced) {
    const NodeIndex n = network.num_nodes();
    source_ = n;
    sink_ = n + 1;
    num_nodes_ = n + 2;
    std::vector<std::pair<NodeIndex, NodeIndex>> ends;
    std::vector<FlowQuantity> caps;
    const auto arcs = network.arcs();
    for (size_t a = 0; a < arcs.size(); ++a) {
      if (reduced.capacities[a] == 0) continue;
      ends.emplace_back(arcs[a].from, arcs[a].to);
      caps.push_back(reduced.capacities[a]);
    }
    for (NodeIndex v = 0; v < n; ++v) {
      const FlowQuantity b = reduced.balances[v];
      if (b > 0) {
        ends.emplace_back(source_, v);
        caps.push_back(b);
      } else if (b < 0) {
        ends.emplace_back(v, sink_);
        caps.push_back(-b);
      }
    }
    first_.assign(num_nodes_ + 1, 0);
    for (const auto& [from, to] : ends) {
      ++first_[from + 1];
      ++first_[to + 1];
    }
    for (NodeIndex v = 0; v < num_nodes_; ++v) first_[v + 1] += first_[v];
    head_.resize(ends.size() * 2);
    opposite_.resize(ends.size() * 2);
    residual_.resize(ends.size() * 2);
    std::vector<int64_t> fill(first_.begin(), first_.end() - 1);
    for (size_t e = 0; e < ends.size(); ++e) {
      const auto [from, to] = ends[e];
      const int64_t fwd = fill[from]++;
      const int64_t bwd = fill[to]++;
      head_[fwd] = to;
      opposite_[fwd] = bwd;
      residual_[fwd] = caps[e];
      head_[bwd] = from;
      opposite_[bwd] = fwd;
      residual_[bwd] = 0;
    }
  }

  FlowQuantity Run() {
    FlowQuantity total = 0;
    level_.resize(num_nodes_);
    current_.resize(num_nodes_);
    while (BuildLevels()) {
      std::copy(first_.begin(), first_.end() - 1, current_.begin());
      total += Augment();
    }
    return total;
  }

 private:
  bool BuildLevels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<NodeIndex> queue{source_};
    level_[source_] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
      const NodeIndex v = queue[i];
      for (int64_t a = first_[v]; a < first_[v + 1]; ++a) {
        const NodeIndex w = head_[a];
        if (residual_[a] > 0 && level_[w] < 0) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  // Blocking flow by iterative depth-first search over the level graph.
  FlowQuantity Augment() {
    FlowQuantity pushed = 0;
    std::vector<int64_t> path;
    NodeIndex v = source_;
    while (true) {
      if (v == sink_) {
        FlowQuantity bottleneck = std::numeric_limits<FlowQuantity>::max();
        for (int64_t a : path) bottleneck = std::min(bottleneck, residual_[a]);
        size_t cut = path.size();
        for (size_t i = 0; i < path.size(); ++i) {
          residual_[path[i]] -= bottleneck;
          residual_[opposite_[path[i]]] += bottleneck;
          if (residual_[path[i]] == 0 && cut == path.size()) cut = i;
        }
        pushed += bottleneck;
        path.resize(cut);
        v = path.empty() ? source_ : head_[path.back()];
        continue;
      }
      int64_t& a = current_[v];
      for (; a < first_[v + 1]; ++a) {
        if (residual_[a] > 0 && level_[head_[a]] == level_[v] + 1) break;
      }
      if (a < first_[v + 1]) {
        path.push_back(a);
        v = head_[a];
        continue;
      }
      level_[v] = -1;
      if (path.empty()) break;
      path.pop_back();
      v = path.empty() ? source_ : head_[path.back()];
      ++current_[v];
    }
    return pushed;
  }

  NodeIndex source_ = 0;
  NodeIndex sink_ = 0;
  NodeIndex num_nodes_ = 0;
  std::vector<int64_t> first_;
  std::vector<NodeIndex> head_;
  std::vector<int64_t> opposite_;
  std::vector<FlowQuantity> residual_;
  std::vector<int32_t> level_;
  std::vector<int64_t> current_;
};

class CostScalingSolver {
 public:
  CostScalingSolver(ResidualGraph& graph, std::vector<FlowQuantity> excess,
                    const SolverOptions& options)
      : g_(graph),
        options_(options),
        num_nodes_(graph.num_nodes()),
        excess_(std::move(excess)),
        potential_(num_nodes_, 0),
        current_(graph.first.begin(), graph.first.end() - 1) {}

  void Run() {
    CostValue max_cost = 1;
    for (CostValue c : g_.cost) max_cost = std::max(max_cost, c);
    epsilon_ = max_cost;
    do {
      epsilon_ = std::max<CostValue>(epsilon_ / options_.alpha, 1);
      Refine();
    } while (epsilon_ != 1);
  }

 private:
  Price ReducedCost(ResidualArc arc, NodeIndex tail) const {
    return static_cast<Price>(g_.cost[arc]) + potential_[tail] -
           potential_[g_.head[arc]];
  }

  bool IsAdmissible(ResidualArc arc, NodeIndex tail) const {
    return g_.residual[arc] > 0 && ReducedCost(arc, tail) < 0;
  }

  void Push(ResidualArc arc, NodeIndex tail, FlowQuantity amount) {
    g_.residual[arc] -= amount;
    g_.residual[g_.opposite[arc]] += amount;
    excess_[tail] -= amount;
    excess_[g_.head[arc]] += amount;
  }

  ResidualArc Begin(NodeIndex v) const { return g_.first[v]; }
  ResidualArc End(NodeIndex v) const { return g_.first[v + 1]; }

  void Refine() {
    // Saturating every arc with negative reduced cost makes the pseudo-flow
    // 0-optimal; the remaining work restores the balances.
    for (NodeIndex v = 0; v < num_nodes_; ++v) {
      for (ResidualArc a = Begin(v); a < End(v); ++a) {
        if (IsAdmissible(a, v)) Push(a, v, g_.residual[a]);
      }
      current_[v] = End(v);
    }
    active_.clear();
    for (NodeIndex v = num_nodes_ - 1; v >= 0; --v) {
      if (excess_[v] > 0) active_.push_back(v);
    }
    while (!active_.empty()) {
      if (options_.use_price_updates && relabels_since_update_ >= num_nodes_) {
        relabels_since_update_ = 0;
        UpdatePrices();
      }
      const NodeIndex v = active_.back();
      active_.pop_back();
      if (excess_[v] > 0) Discharge(v);
    }
  }

  void Discharge(NodeIndex v) {
    while (true) {
      for (ResidualArc a = current_[v]; a < End(v); ++a) {
        if (!IsAdmissible(a, v)) continue;
        const NodeIndex w = g_.head[a];
        if (options_.use_look_ahead && !LookAhead(a, v, w)) continue;
        const bool was_active = excess_[w] > 0;
        Push(a, v, std::min(excess_[v], g_.residual[a]));
        if (!was_active && excess_[w] > 0) active_.push_back(w);
        if (excess_[v] == 0) {
          current_[v] = a;
          return;
        }
      }
      Relabel(v);
    }
  }

  // Before pushing along `in_arc` into `node`, makes sure the flow can move
  // on from there. Returns whether `in_arc` is still admissible.
  bool LookAhead(ResidualArc in_arc, NodeIndex tail, NodeIndex node) {
    if (excess_[node] < 0) return true;
    for (ResidualArc a = current_[node]; a < End(node); ++a) {
      if (IsAdmissible(a, node)) {
        current_[node] = a;
        return true;
      }
    }
    Relabel(node);
    return IsAdmissible(in_arc, tail);
  }

  // Lowers the potential of `v` as far as epsilon-optimality allows.
  // Precondition: no admissible arc leaves `v`.
  void Relabel(NodeIndex v) {
    ++relabels_since_update_;
    const Price guaranteed = potential_[v] - epsilon_;
    constexpr Price kNone = std::numeric_limits<Price>::min();
    Price best = kNone;
    Price previous_best = kNone;
    ResidualArc best_arc = End(v);
    for (ResidualArc a = Begin(v); a < End(v); ++a) {
      if (g_.residual[a] <= 0) continue;
      // The arc is admissible iff potential_[v] < threshold.
      const Price threshold = potential_[g_.head[a]] - g_.cost[a];
      if (threshold <= best) continue;
      if (threshold > guaranteed) {
        potential_[v] = guaranteed;
        current_[v] = a;
        return;
      }
      previous_best = best;
      best = threshold;
      best_arc = a;
    }
    if (best == kNone) {
      if (excess_[v] != 0) {
        throw std::logic_error("stranded excess after feasibility check");
      }
      potential_[v] = guaranteed;
      current_[v] = Begin(v);
      return;
    }
    potential_[v] = best - epsilon_;
    current_[v] = previous_best <= potential_[v] ? best_arc : Begin(v);
  }

  // Global price update. Grows the set S of nodes that reach a deficit
  // through admissible arcs (reverse search); whenever S stalls, the
  // potentials outside S are lowered by the largest amount that keeps
  // epsilon-optimality, which makes at least one more arc into S admissible.
  // Stops once S holds every node with positive excess.
  void UpdatePrices() {
    std::vector<char> in_set(num_nodes_, 0);
    std::vector<char> on_frontier(num_nodes_, 0);
    std::vector<Price> need(num_nodes_, 0);
    std::vector<NodeIndex> queue;
    std::vector<NodeIndex> frontier;
    FlowQuantity remaining = 0;
    Price offset = 0;  // pending shift of every potential outside S

    for (NodeIndex v = 0; v < num_nodes_; ++v) {
      if (excess_[v] < 0) {
        in_set[v] = 1;
        queue.push_back(v);
        remaining -= excess_[v];
      }
    }
    auto join = [&](NodeIndex u) {
      potential_[u] += offset;
      if (offset != 0) current_[u] = Begin(u);
      in_set[u] = 1;
      queue.push_back(u);
      remaining -= excess_[u];
    };

    size_t next = 0;
    while (remaining > 0) {
      for (; next < queue.size() && remaining > 0; ++next) {
        const NodeIndex v = queue[next];
        for (ResidualArc a = Begin(v); a < End(v); ++a) {
          const NodeIndex u = g_.head[a];
          if (in_set[u]) continue;
          const ResidualArc into = g_.opposite[a];
          if (g_.residual[into] <= 0) continue;
          const Price threshold = potential_[v] - g_.cost[into];
          if (potential_[u] + offset < threshold) {
            join(u);
            if (remaining == 0) break;
          } else if (!on_frontier[u]) {
            on_frontier[u] = 1;
            need[u] = threshold;
            frontier.push_back(u);
          } else {
            need[u] = std::max(need[u], threshold);
          }
        }
      }
      if (remaining == 0) break;

      size_t kept = 0;
      Price best = std::numeric_limits<Price>::min();
      for (NodeIndex u : frontier) {
        if (in_set[u]) continue;
        frontier[kept++] = u;
        best = std::max(best, need[u] - (potential_[u] + offset));
      }
      frontier.resize(kept);
      if (frontier.empty()) break;
      offset += best - epsilon_;
      for (NodeIndex u : frontier) {
        if (!in_set[u] && potential_[u] + offset < need[u]) join(u);
      }
    }

    if (offset == 0) return;
    for (NodeIndex v = 0; v < num_nodes_; ++v) {
      if (!in_set[v]) {
        potential_[v] += offset;
        current_[v] = Begin(v);
      }
    }
  }

  ResidualGraph& g_;
  const SolverOptions options_;
  const NodeIndex num_nodes_;
  std::vector<FlowQuantity> excess_;
  std::vector<Price> potential_;
  std::vector<ResidualArc> current_;
  std::vector<NodeIndex> active_;
  CostValue epsilon_ = 1;
  NodeIndex relabels_since_update_ = 0;
};

void CheckMagnitudes(const FlowNetwork& network,
                     const ReducedInstance& reduced) {
  const WideCost scaled_cost = static_cast<WideCost>(network.MaxAbsCost()) *
                               (static_cast<WideCost>(network.num_nodes()) + 1);
  if (scaled_cost >= kMagnitudeLimit) {
    throw OverflowError("max |cost| * (num_nodes + 1) = " +
                        WideToString(scaled_cost) + " exceeds 2^62");
  }
  // A node's excess is bounded by the sum of its incident capacities.
  const WideCost excess_bound =
      static_cast<WideCost>(reduced.total_supply) *
      (static_cast<WideCost>(network.num_arcs()) + 1);
  if (excess_bound >= kMagnitudeLimit) {
    throw OverflowError("total supply * (num_arcs + 1) = " +
                        WideToString(excess_bound) + " exceeds 2^62");
  }
}

}  // namespace

bool IsFeasible(const FlowNetwork& network) {
  network.Validate();
  const ReducedInstance reduced = Reduce(network);
  if (reduced.total_supply == 0) return true;
  SupplyMaxFlow max_flow(network, reduced);
  return max_flow.Run() == reduced.total_supply;
}

FlowSolution SolveMinCostFlow(const FlowNetwork& network,
                              const SolverOptions& options) {
  network.Validate();
  if (options.alpha < 2) {
    throw std::invalid_argument("alpha must be at least 2");
  }
  const ReducedInstance reduced = Reduce(network);
  CheckMagnitudes(network, reduced);

  FlowSolution solution;
  if (reduced.total_supply > 0) {
    SupplyMaxFlow max_flow(network, reduced);
    if (max_flow.Run() != reduced.total_supply) {
      solution.status = SolveStatus::kInfeasible;
      return solution;
    }
  }

  const CostValue multiplier = network.num_nodes() + 1;
  ResidualGraph graph =
      BuildResidualGraph(network, reduced.capacities, multiplier);
  CostScalingSolver solver(graph, reduced.balances, options);
  solver.Run();

  solution.status = SolveStatus::kOptimal;
  solution.flows.resize(network.arcs().size());
  for (size_t a = 0; a < network.arcs().size(); ++a) {
    const NetworkArc& arc = network.arc(static_cast<ArcIndex>(a));
    const FlowQuantity flow =
        graph.residual[graph.opposite[graph.forward[a]]] + arc.lower;
    solution.flows[a] = flow;
    solution.total_cost += static_cast<WideCost>(arc.cost) * flow;
  }
  return solution;
}

}  // namespace panelfusion

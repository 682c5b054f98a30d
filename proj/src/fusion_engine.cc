#include "panelfusion/fusion_engine.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <tuple>

#include "panelfusion/errors.h"
#include "panelfusion/verify_solution.h"
#include "worker_pool.h"

namespace panelfusion {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ClusterOutcome {
  std::vector<IndexedPair> pairs;
  bool infeasible = false;
  bool pruned_fallback = false;
  bool has_dummy = false;
  size_t arcs = 0;
};

// Normalized, encoded panels plus the original ones for id lookup.
struct Prepared {
  Panel left;
  Panel right;
  FeatureSchema schema;
  EncodedPair encoded;
};

Prepared Prepare(const Panel& left, const Panel& right) {
  ValidatePanel(left);
  ValidatePanel(right);
  if (left.unit_scale < 1 || right.unit_scale != left.unit_scale) {
    throw ValidationError(
        "panels must be quantized with a common unit_scale before fusion");
  }
  for (const Panel* panel : {&left, &right}) {
    for (const Panelist& p : panel->panelists) {
      if (p.units < 1) {
        throw ValidationError("panelist \"" + p.id + "\" has no units");
      }
    }
  }
  if (left.TotalUnits() != right.TotalUnits()) {
    throw ValidationError("universe mismatch in units: left " +
                          std::to_string(left.TotalUnits()) + ", right " +
                          std::to_string(right.TotalUnits()));
  }
  Prepared prepared;
  std::tie(prepared.left, prepared.right, prepared.schema) =
      NormalizeFeatures(left, right);
  prepared.encoded = EncodeFeatures(prepared.left, prepared.right);
  return prepared;
}

ClusterOutcome SolveCluster(const EncodedPair& encoded, const Cluster& cluster,
                            const CostModel& model, const PruneConfig& pruning,
                            const SolverOptions& solver) {
  ClusterOutcome outcome;
  auto attempt = [&](const PruneConfig& prune, BipartiteGraph& graph) {
    graph = BuildBipartite(encoded.left, cluster.left, encoded.right,
                           cluster.right, model, prune);
    BalanceCluster(graph);
    return SolveMinCostFlow(graph.network, solver);
  };
  BipartiteGraph graph;
  FlowSolution solution = attempt(pruning, graph);
  if (solution.status == SolveStatus::kInfeasible && graph.pruned) {
    outcome.pruned_fallback = true;
    solution = attempt(PruneConfig{}, graph);
  }
  outcome.has_dummy = graph.dummy >= 0;
  outcome.arcs = static_cast<size_t>(graph.network.num_arcs());
  if (solution.status == SolveStatus::kInfeasible) {
    outcome.infeasible = true;
    return outcome;
  }
  const VerificationReport report = VerifySolution(graph.network, solution);
  if (!report.Passed()) {
    throw IntegrityError("cluster solution failed verification: " +
                         report.Describe());
  }
  outcome.pairs = GenerateAssignedPairs(solution, graph);
  return outcome;
}

WideCost PairCost(const std::vector<IndexedPair>& pairs) {
  WideCost total = 0;
  for (const IndexedPair& pair : pairs) {
    total += static_cast<WideCost>(pair.units) * pair.unit_cost;
  }
  return total;
}

size_t CountPositive(const std::vector<FlowQuantity>& units) {
  return static_cast<size_t>(
      std::count_if(units.begin(), units.end(),
                    [](FlowQuantity u) { return u > 0; }));
}

std::string DescribeKey(const EncodedPair& encoded,
                        const std::vector<int>& features,
                        const std::vector<int32_t>& key,
                        const FeatureSchema& schema) {
  std::string text = "{";
  for (size_t f = 0; f < features.size(); ++f) {
    if (f) text += ", ";
    text += schema.categorical_names[features[f]] + "=" +
            encoded.dictionary[features[f]][key[f]];
  }
  return text + "}";
}

// Category blocks whose unit totals differ between the panels, for hard-mode
// infeasibility messages.
std::string ImbalancedBlocks(const Prepared& prepared,
                             const CostModel& model) {
  std::vector<int> features;
  for (int k = 0; k < prepared.encoded.left.num_categorical; ++k) {
    if (model.hard_features.empty() || model.hard_features[k]) {
      features.push_back(k);
    }
  }
  std::map<std::vector<int32_t>, std::pair<FlowQuantity, FlowQuantity>> blocks;
  auto add = [&](const EncodedPanel& panel, const Panel& source, bool left) {
    for (size_t i = 0; i < panel.size(); ++i) {
      std::vector<int32_t> key;
      for (int k : features) key.push_back(panel.cat_row(i)[k]);
      auto& totals = blocks[key];
      (left ? totals.first : totals.second) += source.panelists[i].units;
    }
  };
  add(prepared.encoded.left, prepared.left, true);
  add(prepared.encoded.right, prepared.right, false);
  std::string text;
  size_t listed = 0;
  size_t imbalanced = 0;
  for (const auto& [key, totals] : blocks) {
    if (totals.first == totals.second) continue;
    ++imbalanced;
    if (listed < 10) {
      text += "\n  " + DescribeKey(prepared.encoded, features, key,
                                   prepared.schema) +
              ": left " + std::to_string(totals.first) + " units, right " +
              std::to_string(totals.second) + " units";
      ++listed;
    }
  }
  if (imbalanced > listed) {
    text += "\n  ... " + std::to_string(imbalanced - listed) + " more";
  }
  return text;
}

SideSelection WholeSide(const Panel& panel) {
  SideSelection side;
  for (size_t i = 0; i < panel.size(); ++i) {
    side.rows.push_back(static_cast<int32_t>(i));
    side.units.push_back(panel.panelists[i].units);
  }
  return side;
}

}  // namespace

void RelaxationSchedule::Validate(const PanelSchema& schema) const {
  if (stages.empty() || !stages.back().empty()) {
    throw ValidationError("schedule must end with an empty stage");
  }
  if (!modes.empty() && modes.size() != stages.size()) {
    throw ValidationError("mode_per_stage must list one mode per stage");
  }
  for (const auto& stage : stages) {
    for (const std::string& name : stage) {
      if (std::find(schema.categorical_names.begin(),
                    schema.categorical_names.end(),
                    name) == schema.categorical_names.end()) {
        throw ValidationError("schedule feature \"" + name +
                              "\" is not a categorical feature");
      }
      if (std::count(stage.begin(), stage.end(), name) > 1) {
        throw ValidationError("schedule stage repeats feature \"" + name +
                              "\"");
      }
    }
  }
}

PartitionResult Partition(const EncodedPair& encoded,
                          std::span<const FlowQuantity> left_units,
                          std::span<const FlowQuantity> right_units,
                          const std::vector<int>& features) {
  std::map<std::vector<int32_t>, Cluster> groups;
  auto add = [&](const EncodedPanel& panel, std::span<const FlowQuantity> units,
                 bool left) {
    std::vector<int32_t> key(features.size());
    for (size_t i = 0; i < panel.size(); ++i) {
      if (units[i] <= 0) continue;
      for (size_t f = 0; f < features.size(); ++f) {
        key[f] = panel.cat_row(i)[features[f]];
      }
      Cluster& cluster = groups[key];
      SideSelection& side = left ? cluster.left : cluster.right;
      side.rows.push_back(static_cast<int32_t>(i));
      side.units.push_back(units[i]);
    }
  };
  add(encoded.left, left_units, true);
  add(encoded.right, right_units, false);

  PartitionResult result;
  for (auto& [key, cluster] : groups) {
    if (cluster.left.rows.empty() || cluster.right.rows.empty()) {
      result.deferred_left.insert(result.deferred_left.end(),
                                  cluster.left.rows.begin(),
                                  cluster.left.rows.end());
      result.deferred_right.insert(result.deferred_right.end(),
                                   cluster.right.rows.begin(),
                                   cluster.right.rows.end());
      continue;
    }
    cluster.key = key;
    result.clusters.push_back(std::move(cluster));
  }
  std::sort(result.deferred_left.begin(), result.deferred_left.end());
  std::sort(result.deferred_right.begin(), result.deferred_right.end());
  return result;
}

NodeIndex BalanceCluster(BipartiteGraph& graph) {
  FlowNetwork& network = graph.network;
  FlowQuantity w_d = 0;
  for (NodeIndex v = 0; v < graph.num_left + graph.num_right; ++v) {
    w_d += network.balance(v);
  }
  if (w_d == 0) return graph.dummy = -1;
  if (w_d > 0) {
    graph.dummy = network.AddNode(-w_d);
    for (NodeIndex i = 0; i < graph.num_left; ++i) {
      network.AddArc(graph.LeftNode(i), graph.dummy, 0);
    }
  } else {
    graph.dummy = network.AddNode(-w_d);
    for (NodeIndex j = 0; j < graph.num_right; ++j) {
      network.AddArc(graph.dummy, graph.RightNode(j), 0);
    }
  }
  return graph.dummy;
}

std::vector<IndexedPair> GenerateAssignedPairs(const FlowSolution& solution,
                                               const BipartiteGraph& graph) {
  std::vector<IndexedPair> pairs;
  if (solution.status != SolveStatus::kOptimal) return pairs;
  for (ArcIndex a = 0; a < graph.network.num_arcs(); ++a) {
    const FlowQuantity flow = solution.flows[a];
    if (flow == 0) continue;
    const NetworkArc& arc = graph.network.arc(a);
    if (graph.IsDummy(arc.from) || graph.IsDummy(arc.to)) continue;
    pairs.push_back({graph.left_rows[arc.from],
                     graph.right_rows[arc.to - graph.num_left], flow,
                     arc.cost});
  }
  return pairs;
}

std::vector<IndexedPair> UpdateResiduals(
    const std::vector<IndexedPair>& pairs,
    std::vector<FlowQuantity>& left_units,
    std::vector<FlowQuantity>& right_units, bool no_split) {
  std::vector<IndexedPair> kept;
  if (no_split) {
    // Distinct right partners per left row.
    std::map<int32_t, std::pair<int32_t, bool>> partners;
    for (const IndexedPair& pair : pairs) {
      auto [it, inserted] = partners.try_emplace(pair.left, pair.right, false);
      if (!inserted && it->second.first != pair.right) it->second.second = true;
    }
    for (const IndexedPair& pair : pairs) {
      if (!partners[pair.left].second) kept.push_back(pair);
    }
  } else {
    kept = pairs;
  }
  for (const IndexedPair& pair : kept) {
    if (pair.left < 0 || static_cast<size_t>(pair.left) >= left_units.size() ||
        pair.right < 0 ||
        static_cast<size_t>(pair.right) >= right_units.size()) {
      throw IntegrityError("assignment references an unknown panelist row");
    }
    if (pair.units <= 0 || pair.units > left_units[pair.left] ||
        pair.units > right_units[pair.right]) {
      throw IntegrityError(
          "assignment of " + std::to_string(pair.units) + " units exceeds "
          "residual (left row " + std::to_string(pair.left) + " has " +
          std::to_string(left_units[pair.left]) + ", right row " +
          std::to_string(pair.right) + " has " +
          std::to_string(right_units[pair.right]) + ")");
    }
    left_units[pair.left] -= pair.units;
    right_units[pair.right] -= pair.units;
  }
  return kept;
}

AssignmentSet ToAssignmentSet(const std::vector<IndexedPair>& pairs,
                              const Panel& left, const Panel& right,
                              int64_t unit_scale) {
  std::map<std::pair<int32_t, int32_t>, FlowQuantity> merged;
  for (const IndexedPair& pair : pairs) {
    merged[{pair.left, pair.right}] += pair.units;
  }
  AssignmentSet set;
  set.pairs.reserve(merged.size());
  for (const auto& [key, units] : merged) {
    set.pairs.push_back({left.panelists[key.first].id,
                         right.panelists[key.second].id,
                         static_cast<double>(units) /
                             static_cast<double>(unit_scale),
                         units});
  }
  std::sort(set.pairs.begin(), set.pairs.end(),
            [](const AssignedPair& a, const AssignedPair& b) {
              return std::tie(a.left_id, a.right_id) <
                     std::tie(b.left_id, b.right_id);
            });
  return set;
}

FusionResult FuseSingle(const Panel& left, const Panel& right,
                        const CostModel& model, const FusionOptions& options) {
  const Clock::time_point start = Clock::now();
  const Prepared prepared = Prepare(left, right);
  model.Validate(prepared.encoded.left.num_categorical);

  const size_t n1 = prepared.left.size();
  const size_t n2 = prepared.right.size();
  const int k = options.pruning.k > 0 ? options.pruning.k
                                      : DefaultPruneK(n1, n2);
  const long double estimate =
      options.pruning.enabled && static_cast<size_t>(k) < n2
          ? static_cast<long double>(n1) * k + n2
          : static_cast<long double>(n1) * n2;
  if (estimate > static_cast<long double>(options.single_arc_cap)) {
    throw ValidationError(
        "single-graph fusion would build about " +
        std::to_string(static_cast<long long>(estimate)) +
        " arcs, above the cap of " + std::to_string(options.single_arc_cap) +
        "; use iterative mode or enable pruning");
  }

  Cluster cluster;
  cluster.left = WholeSide(prepared.left);
  cluster.right = WholeSide(prepared.right);
  ClusterOutcome outcome = SolveCluster(prepared.encoded, cluster, model,
                                        options.pruning, options.solver);
  if (outcome.infeasible) {
    std::string message = "no feasible assignment";
    if (model.mode == CostMode::kHard) {
      message += "; hard-mode category blocks with unequal units:" +
                 ImbalancedBlocks(prepared, model);
    }
    throw InfeasibleError(message);
  }

  std::vector<FlowQuantity> left_units = cluster.left.units;
  std::vector<FlowQuantity> right_units = cluster.right.units;
  std::vector<IndexedPair> kept =
      UpdateResiduals(outcome.pairs, left_units, right_units, false);

  FusionResult result;
  result.total_cost = PairCost(kept);
  result.assignments =
      ToAssignmentSet(kept, prepared.left, prepared.right, left.unit_scale);
  StageTrace stage;
  stage.stage = 1;
  stage.clusters = 1;
  stage.matched_left = n1 - CountPositive(left_units);
  stage.matched_right = n2 - CountPositive(right_units);
  stage.residual_left = CountPositive(left_units);
  stage.residual_right = CountPositive(right_units);
  stage.dummy_nodes = outcome.has_dummy ? 1 : 0;
  stage.pruned_fallbacks = outcome.pruned_fallback ? 1 : 0;
  stage.arcs = outcome.arcs;
  stage.cost = result.total_cost;
  stage.elapsed_seconds = SecondsSince(start);
  if (stage.residual_left != 0 || stage.residual_right != 0) {
    throw IntegrityError("single-graph fusion left residual units");
  }
  result.trace.stages.push_back(stage);
  if (options.on_stage) options.on_stage(stage);
  result.elapsed_seconds = SecondsSince(start);
  return result;
}

FusionResult FuseIterative(const Panel& left, const Panel& right,
                           const RelaxationSchedule& schedule,
                           const CostModel& base,
                           const FusionOptions& options) {
  const Clock::time_point start = Clock::now();
  const Prepared prepared = Prepare(left, right);
  schedule.Validate(prepared.left.schema);
  const int num_cat = prepared.encoded.left.num_categorical;
  base.Validate(num_cat);

  std::vector<FlowQuantity> left_units = WholeSide(prepared.left).units;
  std::vector<FlowQuantity> right_units = WholeSide(prepared.right).units;
  std::vector<IndexedPair> all_pairs;
  FusionResult result;

  const int num_stages = static_cast<int>(schedule.stages.size());
  for (int s = 0; s < num_stages; ++s) {
    const Clock::time_point stage_start = Clock::now();
    const bool final_stage = s == num_stages - 1;
    StageTrace stage;
    stage.stage = s + 1;
    const size_t before_left = CountPositive(left_units);
    const size_t before_right = CountPositive(right_units);

    if (before_left > 0 || before_right > 0) {
      std::vector<int> features;
      for (const std::string& name : schedule.stages[s]) {
        features.push_back(prepared.schema.CategoricalIndex(name));
      }
      CostModel model = base;
      model.hard_features.clear();
      if (final_stage) {
        model.mode = CostMode::kSoft;
      } else {
        model.mode =
            schedule.modes.empty() ? CostMode::kHard : schedule.modes[s];
      }
      if (model.mode == CostMode::kHard) {
        model.hard_features.assign(num_cat, false);
        for (int f : features) model.hard_features[f] = true;
      }

      const PartitionResult partition =
          Partition(prepared.encoded, left_units, right_units, features);
      stage.clusters = partition.clusters.size();
      stage.deferred_left = partition.deferred_left.size();
      stage.deferred_right = partition.deferred_right.size();

      std::vector<ClusterOutcome> outcomes(partition.clusters.size());
      // Largest clusters first for load balance; results stay in key order.
      std::vector<size_t> order(partition.clusters.size());
      std::iota(order.begin(), order.end(), size_t{0});
      auto work = [&](size_t c) {
        return partition.clusters[c].left.rows.size() *
               partition.clusters[c].right.rows.size();
      };
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return work(a) > work(b);
      });
      ParallelFor(order, options.workers, [&](size_t c) {
        outcomes[c] = SolveCluster(prepared.encoded, partition.clusters[c],
                                   model, options.pruning, options.solver);
      });

      std::vector<IndexedPair> stage_pairs;
      for (size_t c = 0; c < outcomes.size(); ++c) {
        const ClusterOutcome& outcome = outcomes[c];
        if (outcome.infeasible) {
          throw IntegrityError(
              "stage " + std::to_string(s + 1) + " cluster " +
              DescribeKey(prepared.encoded, features, partition.clusters[c].key,
                          prepared.schema) +
              " is infeasible after balancing");
        }
        stage.dummy_nodes += outcome.has_dummy ? 1 : 0;
        stage.pruned_fallbacks += outcome.pruned_fallback ? 1 : 0;
        stage.arcs += outcome.arcs;
        stage_pairs.insert(stage_pairs.end(), outcome.pairs.begin(),
                           outcome.pairs.end());
      }
      std::vector<IndexedPair> kept =
          UpdateResiduals(stage_pairs, left_units, right_units,
                          options.no_split && !final_stage);
      stage.cost = PairCost(kept);
      result.total_cost += stage.cost;
      all_pairs.insert(all_pairs.end(), kept.begin(), kept.end());
    }
    stage.residual_left = CountPositive(left_units);
    stage.residual_right = CountPositive(right_units);
    stage.matched_left = before_left - stage.residual_left;
    stage.matched_right = before_right - stage.residual_right;
    stage.elapsed_seconds = SecondsSince(stage_start);
    result.trace.stages.push_back(stage);
    if (options.on_stage) options.on_stage(stage);
  }

  if (CountPositive(left_units) != 0 || CountPositive(right_units) != 0) {
    throw IntegrityError("residual units remain after the final stage");
  }
  result.assignments = ToAssignmentSet(all_pairs, prepared.left,
                                       prepared.right, left.unit_scale);
  result.elapsed_seconds = SecondsSince(start);
  return result;
}

}  // namespace panelfusion

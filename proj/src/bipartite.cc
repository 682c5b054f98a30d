#include "panelfusion/bipartite.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "panelfusion/errors.h"

namespace panelfusion {
namespace {

bool Cheaper(const CandidateArc& a, const CandidateArc& b) {
  return a.cost != b.cost ? a.cost < b.cost : a.right < b.right;
}

bool ByRight(const CandidateArc& a, const CandidateArc& b) {
  return a.right < b.right;
}

// Row-at-a-time pruning so that the full candidate set never has to be held
// in memory.
class RowPruner {
 public:
  RowPruner(int32_t num_right, int k)
      : k_(k),
        best_left_(num_right, -1),
        best_cost_(num_right, std::numeric_limits<CostValue>::max()),
        kept_count_(num_right, 0) {}

  // Consumes the candidates of the next left node; `row` is overwritten.
  void AddRow(std::vector<CandidateArc>& row) {
    const int32_t left = static_cast<int32_t>(kept_.size());
    for (const CandidateArc& arc : row) {
      if (arc.cost < best_cost_[arc.right]) {
        best_cost_[arc.right] = arc.cost;
        best_left_[arc.right] = left;
      }
    }
    if (static_cast<int>(row.size()) > k_) {
      std::nth_element(row.begin(), row.begin() + (k_ - 1), row.end(),
                       Cheaper);
      row.resize(k_);
    }
    std::sort(row.begin(), row.end(), ByRight);
    for (const CandidateArc& arc : row) ++kept_count_[arc.right];
    kept_.push_back(row);
  }

  std::vector<std::vector<CandidateArc>> Finish() {
    for (int32_t j = 0; j < static_cast<int32_t>(best_left_.size()); ++j) {
      if (kept_count_[j] > 0 || best_left_[j] < 0) continue;
      std::vector<CandidateArc>& list = kept_[best_left_[j]];
      const CandidateArc arc{j, best_cost_[j]};
      list.insert(std::lower_bound(list.begin(), list.end(), arc, ByRight),
                  arc);
    }
    return std::move(kept_);
  }

 private:
  int k_;
  std::vector<int32_t> best_left_;
  std::vector<CostValue> best_cost_;
  std::vector<int32_t> kept_count_;
  std::vector<std::vector<CandidateArc>> kept_;
};

void MarkIsolated(BipartiteGraph& graph) {
  std::vector<char> touched(graph.num_left + graph.num_right, 0);
  for (const NetworkArc& arc : graph.network.arcs()) {
    touched[arc.from] = 1;
    touched[arc.to] = 1;
  }
  for (NodeIndex v = 0; v < graph.num_left + graph.num_right; ++v) {
    if (!touched[v]) graph.isolated.push_back(v);
  }
}

}  // namespace

int DefaultPruneK(size_t num_left, size_t num_right) {
  const double n = static_cast<double>(num_left + num_right);
  const int log_term = n > 1 ? static_cast<int>(std::ceil(2 * std::log2(n))) : 0;
  return std::max(16, log_term);
}

std::vector<std::vector<CandidateArc>> PruneEdges(
    const std::vector<std::vector<CandidateArc>>& arcs_by_left,
    int32_t num_right, int k) {
  if (k < 1) throw std::invalid_argument("PruneEdges: k must be >= 1");
  RowPruner pruner(num_right, k);
  for (const std::vector<CandidateArc>& row : arcs_by_left) {
    std::vector<CandidateArc> copy = row;
    pruner.AddRow(copy);
  }
  return pruner.Finish();
}

BipartiteGraph BuildBipartite(const EncodedPanel& left,
                              const SideSelection& left_side,
                              const EncodedPanel& right,
                              const SideSelection& right_side,
                              const CostModel& model,
                              const PruneConfig& pruning) {
  model.Validate(left.num_categorical);
  BipartiteGraph graph;
  graph.left_rows = left_side.rows;
  graph.right_rows = right_side.rows;
  graph.num_left = static_cast<NodeIndex>(left_side.rows.size());
  graph.num_right = static_cast<NodeIndex>(right_side.rows.size());
  for (FlowQuantity units : left_side.units) graph.network.AddNode(units);
  for (FlowQuantity units : right_side.units) graph.network.AddNode(-units);

  const int num_cat = left.num_categorical;
  const int num_real = left.num_real;
  auto candidates = [&](int32_t i, std::vector<CandidateArc>& row) {
    row.clear();
    const int32_t* cat_i = left.cat_row(left_side.rows[i]);
    const double* real_i = left.real_row(left_side.rows[i]);
    for (int32_t j = 0; j < graph.num_right; ++j) {
      const int32_t rj = right_side.rows[j];
      std::optional<CostValue> cost =
          Distance(cat_i, real_i, right.cat_row(rj), right.real_row(rj),
                   num_cat, num_real, model);
      if (cost) row.push_back({j, *cost});
    }
  };

  std::vector<CandidateArc> row;
  const int k = pruning.k > 0 ? pruning.k
                              : DefaultPruneK(graph.num_left, graph.num_right);
  if (pruning.enabled && k < graph.num_right) {
    graph.pruned = true;
    RowPruner pruner(graph.num_right, k);
    for (int32_t i = 0; i < graph.num_left; ++i) {
      candidates(i, row);
      pruner.AddRow(row);
    }
    std::vector<std::vector<CandidateArc>> kept = pruner.Finish();
    size_t total = 0;
    for (const auto& list : kept) total += list.size();
    graph.network.ReserveArcs(total);
    for (int32_t i = 0; i < graph.num_left; ++i) {
      for (const CandidateArc& arc : kept[i]) {
        graph.network.AddArc(graph.LeftNode(i), graph.RightNode(arc.right),
                             arc.cost);
      }
    }
  } else {
    graph.network.ReserveArcs(static_cast<size_t>(graph.num_left) *
                              graph.num_right);
    for (int32_t i = 0; i < graph.num_left; ++i) {
      candidates(i, row);
      for (const CandidateArc& arc : row) {
        graph.network.AddArc(graph.LeftNode(i), graph.RightNode(arc.right),
                             arc.cost);
      }
    }
  }
  MarkIsolated(graph);
  return graph;
}

BipartiteGraph BuildBipartite(const Panel& left, const Panel& right,
                              const CostModel& model,
                              const PruneConfig& pruning) {
  auto [norm_left, norm_right, schema] = NormalizeFeatures(left, right);
  EncodedPair encoded = EncodeFeatures(norm_left, norm_right);
  auto select = [](const Panel& panel) {
    SideSelection side;
    for (size_t i = 0; i < panel.size(); ++i) {
      if (panel.panelists[i].units < 1) {
        throw ValidationError("panelist \"" + panel.panelists[i].id +
                              "\" has no units; quantize the panels first");
      }
      side.rows.push_back(static_cast<int32_t>(i));
      side.units.push_back(panel.panelists[i].units);
    }
    return side;
  };
  return BuildBipartite(encoded.left, select(norm_left), encoded.right,
                        select(norm_right), model, pruning);
}

}  // namespace panelfusion

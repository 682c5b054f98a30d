#include "panelfusion/verify_solution.h"

#include <sstream>

namespace panelfusion {

VerificationReport VerifySolution(const FlowNetwork& network,
                                  const FlowSolution& solution) {
  VerificationReport report;
  report.status_optimal = solution.status == SolveStatus::kOptimal;
  if (solution.flows.size() != network.arcs().size()) {
    report.arity_matches = false;
    report.cost_matches = false;
    return report;
  }
  std::vector<WideCost> net_outflow(network.num_nodes(), 0);
  for (size_t a = 0; a < solution.flows.size(); ++a) {
    const NetworkArc& arc = network.arc(static_cast<ArcIndex>(a));
    const FlowQuantity flow = solution.flows[a];
    if (flow < arc.lower || flow > arc.upper) {
      report.arc_violations.push_back(
          {static_cast<ArcIndex>(a), flow, arc.lower, arc.upper});
    }
    net_outflow[arc.from] += flow;
    net_outflow[arc.to] -= flow;
    report.recomputed_cost += static_cast<WideCost>(arc.cost) * flow;
  }
  for (NodeIndex v = 0; v < network.num_nodes(); ++v) {
    if (net_outflow[v] != network.balance(v)) {
      report.node_violations.push_back({v, network.balance(v), net_outflow[v]});
    }
  }
  report.cost_matches = report.recomputed_cost == solution.total_cost;
  return report;
}

std::string VerificationReport::Describe() const {
  if (Passed()) return "ok";
  std::ostringstream out;
  if (!status_optimal) out << "status is not optimal; ";
  if (!arity_matches) out << "flow count differs from arc count; ";
  for (const auto& v : node_violations) {
    out << "node " << v.node << " net outflow " << WideToString(v.actual)
        << " != balance " << v.expected << "; ";
  }
  for (const auto& v : arc_violations) {
    out << "arc " << v.arc << " flow " << v.flow << " outside [" << v.lower
        << ", " << v.upper << "]; ";
  }
  if (arity_matches && !cost_matches) {
    out << "recomputed cost " << WideToString(recomputed_cost)
        << " differs from reported cost; ";
  }
  std::string text = out.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  return text;
}

}  // namespace panelfusion

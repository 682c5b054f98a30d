#include "panelfusion/dimacs.h"

namespace panelfusion {

void WriteDimacs(const FlowNetwork& network, std::ostream& out) {
  out << "c panel fusion transportation instance\n";
  out << "p min " << network.num_nodes() << ' ' << network.num_arcs() << '\n';
  for (NodeIndex v = 0; v < network.num_nodes(); ++v) {
    if (network.balance(v) != 0) {
      out << "n " << (v + 1) << ' ' << network.balance(v) << '\n';
    }
  }
  const FlowQuantity supply = network.TotalSupply();
  for (const NetworkArc& arc : network.arcs()) {
    const FlowQuantity upper =
        arc.upper == kUnboundedCapacity ? supply : arc.upper;
    out << "a " << (arc.from + 1) << ' ' << (arc.to + 1) << ' ' << arc.lower
        << ' ' << upper << ' ' << arc.cost << '\n';
  }
}

}  // namespace panelfusion

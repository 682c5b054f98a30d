#ifndef PANELFUSION_DIMACS_H_
#define PANELFUSION_DIMACS_H_

#include <ostream>

#include "panelfusion/flow_network.h"

namespace panelfusion {

// Writes the network in DIMACS min-cost-flow format ("p min", "n", "a"
// lines, 1-based node ids) for cross-checking with external solvers.
// Unbounded arcs are written with capacity equal to the total supply.
void WriteDimacs(const FlowNetwork& network, std::ostream& out);

}  // namespace panelfusion

#endif  // PANELFUSION_DIMACS_H_

#ifndef PANELFUSION_BRUTE_FORCE_MCF_H_
#define PANELFUSION_BRUTE_FORCE_MCF_H_

#include <stdexcept>

#include "panelfusion/flow_network.h"

namespace panelfusion {

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  FlowQuantity max_total_supply = 64;
  int max_nodes_per_side = 8;
};

// Exhaustive reference solver for small transportation instances: every arc
// must run from a supply node to a demand node with lower bound 0. Searches
// all integer allocations (memoized over the remaining-demand vector) and
// returns a globally optimal flow, or kInfeasible when none exists.
//
// Independent of SolveMinCostFlow; intended for tests only.
// Throws OracleCapExceeded when the instance is larger than `limits`, and
// std::invalid_argument when the network is not in transportation form.
FlowSolution BruteForceMinCostFlow(const FlowNetwork& network,
                                   const OracleLimits& limits = {});

}  // namespace panelfusion

#endif  // PANELFUSION_BRUTE_FORCE_MCF_H_

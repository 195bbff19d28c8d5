#pragma once

#include <vector>

#include "geogossip/topology.hpp"

namespace geogossip {

// Result of a greedy geographic route. The path starts at the source node,
// each hop crosses an edge, and the distance to the target strictly
// decreases along the path.
struct Route {
    std::vector<int> path;
    int hops = 0;
    int terminated_at = 0;
};

// Forward to the neighbor nearest to `target` (ties -> lowest node id);
// stop at the first node with no strictly closer neighbor. Always
// terminates; the terminating node need not be the global nearest node.
Route greedy_route(const Topology& t, int source, const Position& target);

// Diagnostic hop ceiling ceil(2/r) + 1 for rgg routes in the standard
// connectivity regime.
int hop_bound(double r);

}  // namespace geogossip

#include "geogossip/routing.hpp"

#include <cmath>
#include <stdexcept>

namespace geogossip {

Route greedy_route(const Topology& t, int source, const Position& target) {
    if (source < 0 || source >= t.n) throw std::out_of_range("route source out of range");
    Route route;
    route.path.push_back(source);
    int current = source;
    double current_d = t.distance(current, target);
    for (;;) {
        int best = -1;
        double best_d = current_d;
        for (int w : t.adjacency[current]) {  // sorted ids: first strict win is the lowest id
            const double d = t.distance(w, target);
            if (d < best_d) {
                best_d = d;
                best = w;
            }
        }
        if (best < 0) break;
        route.path.push_back(best);
        current = best;
        current_d = best_d;
    }
    route.hops = static_cast<int>(route.path.size()) - 1;
    route.terminated_at = current;
    return route;
}

int hop_bound(double r) {
    if (r <= 0.0) throw std::invalid_argument("hop_bound requires r > 0");
    return static_cast<int>(std::ceil(2.0 / r)) + 1;
}

}  // namespace geogossip

#pragma once

#include <vector>

#include "geogossip/topology.hpp"

namespace geogossip {

// Per-node Voronoi cell areas in units of the region measure, normalized to
// sum to 1 (unit square as-is; circle arcs divided by 2*pi).
struct VoronoiTessellation {
    std::vector<double> areas;

    int size() const { return static_cast<int>(areas.size()); }
};

// Exact cell areas. Cycle: half-arc to each angular neighbor. Planar:
// intersection of bisector half-planes clipped to the unit square, area by
// the shoelace formula. Duplicate positions raise an error.
VoronoiTessellation voronoi_areas(const Topology& t);

}  // namespace geogossip

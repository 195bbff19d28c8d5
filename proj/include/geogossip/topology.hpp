#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geogossip/rng.hpp"

namespace geogossip {

enum class GeometryKind { Cycle, Grid, Rgg };

std::string to_string(GeometryKind kind);
GeometryKind geometry_kind_from_string(const std::string& s);

// Planar graphs use (u, v) in the unit square; the cycle stores the angle
// theta in [0, 2*pi) in `u` with v = 0.
struct Position {
    double u = 0.0;
    double v = 0.0;
};

// A sensor-network graph with geometric positions. Immutable after
// construction; safe to share across concurrent readers.
struct Topology {
    GeometryKind kind = GeometryKind::Rgg;
    int n = 0;
    double radius = 0.0;       // connection radius, rgg only
    std::uint64_t seed = 0;    // rgg placement seed, 0 otherwise
    std::vector<Position> positions;
    std::vector<std::vector<int>> adjacency;  // sorted neighbor lists

    int degree(int node) const { return static_cast<int>(adjacency[node].size()); }
    std::size_t edge_count() const;

    // Distance between a node and a point: Euclidean in the plane, arc
    // length on the cycle.
    double distance(int node, const Position& p) const;
    double distance(const Position& a, const Position& b) const;
};

// Cycle of n >= 3 nodes equispaced on the unit circle, node i at 2*pi*i/n.
Topology build_cycle(int n);

// m x m grid (n = m^2, m >= 2), node (i, j) -> id i*m + j at cell center
// ((i+1/2)/m, (j+1/2)/m), 4-neighbor non-wrapping adjacency.
Topology build_grid(int n);

// n i.i.d. uniform positions in the unit square, edge iff distance < r.
Topology build_rgg(int n, double r, std::uint64_t seed);

// Same distance rule on caller-supplied positions (test fixtures).
Topology rgg_from_positions(std::vector<Position> positions, double r);

// Connectivity radius sqrt(10 * ln(n) / n), capped at sqrt(2); n >= 2.
double default_radius(int n);

// Index of the node nearest to p; ties broken toward the lowest id.
int nearest_node(const Topology& t, const Position& p);

// Reachability of every node from node 0.
bool is_connected(const Topology& t);

// Text serialization: header "n kind r seed", then one line per node
// "id u v deg neighbor...". Positions round-trip exactly.
void write_topology(std::ostream& os, const Topology& t);
Topology read_topology(std::istream& is);

}  // namespace geogossip

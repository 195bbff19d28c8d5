#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geogossip/topology.hpp"

namespace geogossip {

enum class FieldKind { Linear, Diffusion, Spike };

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& s);

struct FieldSpec {
    FieldKind kind = FieldKind::Linear;
    int sources = 5;       // diffusion only
    int iterations = 50;   // diffusion only
    std::uint64_t seed = 0;
};

// x_s = u-coordinate of node s (theta / 2*pi on the cycle).
std::vector<double> linear_field(const Topology& t);

// 1 at the node nearest the region center, 0 elsewhere.
std::vector<double> spike_field(const Topology& t);

// Unit impulses at `sources` uniformly chosen nodes, then `iterations`
// synchronous smoothing steps x_s <- x_s/2 + mean over N(s) / 2.
std::vector<double> diffusion_field(const Topology& t, int sources, int iterations,
                                    std::uint64_t seed);

std::vector<double> make_field(const Topology& t, const FieldSpec& spec);

}  // namespace geogossip

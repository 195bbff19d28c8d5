#include "geogossip/fields.hpp"

#include <numbers>
#include <stdexcept>

#include "geogossip/rng.hpp"

namespace geogossip {

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::Linear: return "linear";
        case FieldKind::Diffusion: return "diffusion";
        case FieldKind::Spike: return "spike";
    }
    throw std::logic_error("unknown field kind");
}

FieldKind field_kind_from_string(const std::string& s) {
    if (s == "linear") return FieldKind::Linear;
    if (s == "diffusion") return FieldKind::Diffusion;
    if (s == "spike") return FieldKind::Spike;
    throw std::invalid_argument("unknown field kind: " + s);
}

std::vector<double> linear_field(const Topology& t) {
    std::vector<double> x(t.n);
    const bool cycle = t.kind == GeometryKind::Cycle;
    for (int i = 0; i < t.n; ++i)
        x[i] = cycle ? t.positions[i].u / (2.0 * std::numbers::pi) : t.positions[i].u;
    return x;
}

std::vector<double> spike_field(const Topology& t) {
    if (t.n < 1) throw std::invalid_argument("empty topology");
    const Position center =
        t.kind == GeometryKind::Cycle ? Position{0.0, 0.0} : Position{0.5, 0.5};
    std::vector<double> x(t.n, 0.0);
    x[nearest_node(t, center)] = 1.0;
    return x;
}

std::vector<double> diffusion_field(const Topology& t, int sources, int iterations,
                                    std::uint64_t seed) {
    if (sources < 1) throw std::invalid_argument("diffusion requires sources >= 1");
    if (iterations < 0) throw std::invalid_argument("diffusion requires iterations >= 0");
    Rng rng(seed);
    std::vector<double> x(t.n, 0.0);
    for (int s = 0; s < sources; ++s) x[rng.uniform_index(t.n)] += 1.0;
    std::vector<double> next(t.n);
    for (int it = 0; it < iterations; ++it) {
        for (int i = 0; i < t.n; ++i) {
            const auto& nb = t.adjacency[i];
            if (nb.empty()) {
                next[i] = x[i];
                continue;
            }
            double mean = 0.0;
            for (int w : nb) mean += x[w];
            mean /= static_cast<double>(nb.size());
            next[i] = 0.5 * x[i] + 0.5 * mean;
        }
        x.swap(next);
    }
    return x;
}

std::vector<double> make_field(const Topology& t, const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldKind::Linear: return linear_field(t);
        case FieldKind::Spike: return spike_field(t);
        case FieldKind::Diffusion: return diffusion_field(t, spec.sources, spec.iterations, spec.seed);
    }
    throw std::logic_error("unknown field kind");
}

}  // namespace geogossip

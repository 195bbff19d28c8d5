#include "geogossip/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace geogossip {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arc_distance(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, kTwoPi);
    return std::min(d, kTwoPi - d);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Cycle: return "cycle";
        case GeometryKind::Grid: return "grid";
        case GeometryKind::Rgg: return "rgg";
    }
    throw std::logic_error("unknown geometry kind");
}

GeometryKind geometry_kind_from_string(const std::string& s) {
    if (s == "cycle") return GeometryKind::Cycle;
    if (s == "grid") return GeometryKind::Grid;
    if (s == "rgg") return GeometryKind::Rgg;
    throw std::invalid_argument("unknown geometry kind: " + s);
}

std::size_t Topology::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : adjacency) twice += nb.size();
    return twice / 2;
}

double Topology::distance(const Position& a, const Position& b) const {
    if (kind == GeometryKind::Cycle) return arc_distance(a.u, b.u);
    const double du = a.u - b.u;
    const double dv = a.v - b.v;
    return std::sqrt(du * du + dv * dv);
}

double Topology::distance(int node, const Position& p) const {
    return distance(positions[node], p);
}

Topology build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
    Topology t;
    t.kind = GeometryKind::Cycle;
    t.n = n;
    t.positions.resize(n);
    t.adjacency.resize(n);
    for (int i = 0; i < n; ++i) {
        t.positions[i] = {kTwoPi * i / n, 0.0};
        const int prev = (i + n - 1) % n;
        const int next = (i + 1) % n;
        t.adjacency[i] = {std::min(prev, next), std::max(prev, next)};
    }
    return t;
}

Topology build_grid(int n) {
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (m < 2 || m * m != n) throw std::invalid_argument("grid requires n = m^2 with m >= 2");
    Topology t;
    t.kind = GeometryKind::Grid;
    t.n = n;
    t.positions.resize(n);
    t.adjacency.resize(n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int id = i * m + j;
            t.positions[id] = {(i + 0.5) / m, (j + 0.5) / m};
            auto& nb = t.adjacency[id];
            if (i > 0) nb.push_back(id - m);
            if (j > 0) nb.push_back(id - 1);
            if (j + 1 < m) nb.push_back(id + 1);
            if (i + 1 < m) nb.push_back(id + m);
            std::sort(nb.begin(), nb.end());
        }
    }
    return t;
}

Topology rgg_from_positions(std::vector<Position> positions, double r) {
    if (r <= 0.0 || r > std::numbers::sqrt2) throw std::invalid_argument("rgg radius must be in (0, sqrt(2)]");
    Topology t;
    t.kind = GeometryKind::Rgg;
    t.n = static_cast<int>(positions.size());
    t.radius = r;
    t.positions = std::move(positions);
    t.adjacency.assign(t.n, {});
    const double r2 = r * r;
    for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
            const double du = t.positions[i].u - t.positions[j].u;
            const double dv = t.positions[i].v - t.positions[j].v;
            if (du * du + dv * dv < r2) {  // strict: "smaller than the radius"
                t.adjacency[i].push_back(j);
                t.adjacency[j].push_back(i);
            }
        }
    }
    for (auto& nb : t.adjacency) std::sort(nb.begin(), nb.end());
    return t;
}

Topology build_rgg(int n, double r, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("rgg requires n >= 1");
    Rng rng(seed);
    std::vector<Position> pos(n);
    for (auto& p : pos) {
        p.u = rng.uniform();
        p.v = rng.uniform();
    }
    Topology t = rgg_from_positions(std::move(pos), r);
    t.seed = seed;
    return t;
}

double default_radius(int n) {
    if (n < 2) throw std::invalid_argument("default_radius requires n >= 2");
    return std::min(std::sqrt(10.0 * std::log(static_cast<double>(n)) / n), std::numbers::sqrt2);
}

int nearest_node(const Topology& t, const Position& p) {
    if (t.n < 1) throw std::invalid_argument("empty topology");
    int best = 0;
    double best_d = t.distance(0, p);
    for (int i = 1; i < t.n; ++i) {
        const double d = t.distance(i, p);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

bool is_connected(const Topology& t) {
    if (t.n <= 1) return t.n == 1;
    std::vector<char> seen(t.n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int w : t.adjacency[u]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == t.n;
}

void write_topology(std::ostream& os, const Topology& t) {
    os << t.n << ' ' << to_string(t.kind) << ' ' << format_double(t.radius) << ' ' << t.seed << '\n';
    for (int i = 0; i < t.n; ++i) {
        os << i << ' ' << format_double(t.positions[i].u) << ' ' << format_double(t.positions[i].v)
           << ' ' << t.adjacency[i].size();
        for (int w : t.adjacency[i]) os << ' ' << w;
        os << '\n';
    }
}

Topology read_topology(std::istream& is) {
    Topology t;
    std::string kind;
    if (!(is >> t.n >> kind >> t.radius >> t.seed)) throw std::runtime_error("bad topology header");
    t.kind = geometry_kind_from_string(kind);
    if (t.n < 0) throw std::runtime_error("bad topology node count");
    t.positions.resize(t.n);
    t.adjacency.assign(t.n, {});
    for (int i = 0; i < t.n; ++i) {
        int id = 0;
        std::size_t deg = 0;
        if (!(is >> id >> t.positions[i].u >> t.positions[i].v >> deg) || id != i)
            throw std::runtime_error("bad topology node line");
        t.adjacency[i].resize(deg);
        for (auto& w : t.adjacency[i]) {
            if (!(is >> w) || w < 0 || w >= t.n || w == i) throw std::runtime_error("bad neighbor id");
        }
    }
    // Validate symmetry so corrupt files fail loudly.
    for (int i = 0; i < t.n; ++i) {
        for (int w : t.adjacency[i]) {
            const auto& back = t.adjacency[w];
            if (!std::binary_search(back.begin(), back.end(), i))
                throw std::runtime_error("asymmetric adjacency in topology file");
        }
    }
    return t;
}

}  // namespace geogossip

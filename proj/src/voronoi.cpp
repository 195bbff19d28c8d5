#include "geogossip/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace geogossip {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Pt {
    double x, y;
};

// Clip a convex polygon by the half-plane of points at least as close to
// `site` as to `other` (Sutherland-Hodgman against the bisector).
void clip_by_bisector(std::vector<Pt>& poly, std::vector<Pt>& scratch, Pt site, Pt other) {
    scratch.clear();
    const double dx = other.x - site.x;
    const double dy = other.y - site.y;
    const double mx = 0.5 * (site.x + other.x);
    const double my = 0.5 * (site.y + other.y);
    // side(p) > 0 means p is strictly closer to `other`.
    auto side = [&](const Pt& p) { return (p.x - mx) * dx + (p.y - my) * dy; };
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Pt& a = poly[i == 0 ? m - 1 : i - 1];
        const Pt& b = poly[i];
        const double sa = side(a);
        const double sb = side(b);
        if (sb <= 0.0) {
            if (sa > 0.0) {
                const double tt = sa / (sa - sb);
                scratch.push_back({a.x + tt * (b.x - a.x), a.y + tt * (b.y - a.y)});
            }
            scratch.push_back(b);
        } else if (sa <= 0.0) {
            const double tt = sa / (sa - sb);
            scratch.push_back({a.x + tt * (b.x - a.x), a.y + tt * (b.y - a.y)});
        }
    }
    poly.swap(scratch);
}

double shoelace_area(const std::vector<Pt>& poly) {
    double twice = 0.0;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Pt& a = poly[i];
        const Pt& b = poly[(i + 1) % m];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::fabs(twice);
}

VoronoiTessellation planar_areas(const Topology& t) {
    const int n = t.n;
    VoronoiTessellation v;
    v.areas.resize(n);
    std::vector<Pt> poly, scratch;
    poly.reserve(16);
    scratch.reserve(16);
    for (int i = 0; i < n; ++i) {
        const Pt site{t.positions[i].u, t.positions[i].v};
        poly = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
        for (int j = 0; j < n && !poly.empty(); ++j) {
            if (j == i) continue;
            const Pt other{t.positions[j].u, t.positions[j].v};
            if (other.x == site.x && other.y == site.y)
                throw std::invalid_argument("duplicate positions: degenerate geometry");
            clip_by_bisector(poly, scratch, site, other);
        }
        if (poly.size() < 3) throw std::invalid_argument("degenerate Voronoi cell");
        v.areas[i] = shoelace_area(poly);
    }
    return v;
}

VoronoiTessellation cycle_areas(const Topology& t) {
    const int n = t.n;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.positions[a].u < t.positions[b].u; });
    VoronoiTessellation v;
    v.areas.resize(n);
    for (int k = 0; k < n; ++k) {
        const int cur = order[k];
        const int prev = order[(k + n - 1) % n];
        const int next = order[(k + 1) % n];
        double back = t.positions[cur].u - t.positions[prev].u;
        double fwd = t.positions[next].u - t.positions[cur].u;
        if (k == 0) back += kTwoPi;
        if (k == n - 1) fwd += kTwoPi;
        if (back <= 0.0 || fwd <= 0.0)
            throw std::invalid_argument("duplicate angles: degenerate geometry");
        v.areas[cur] = 0.5 * (back + fwd) / kTwoPi;
    }
    return v;
}

}  // namespace

VoronoiTessellation voronoi_areas(const Topology& t) {
    if (t.n < 1) throw std::invalid_argument("empty topology");
    if (t.n == 1) return VoronoiTessellation{{1.0}};
    return t.kind == GeometryKind::Cycle ? cycle_areas(t) : planar_areas(t);
}

}  // namespace geogossip

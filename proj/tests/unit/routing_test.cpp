#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "geogossip/routing.hpp"
#include "test_util.hpp"

using namespace geogossip;
using test_util::close;

TEST_CASE("route stops immediately when the target is in the source cell") {
    const Topology g = build_grid(9);
    const Route r = greedy_route(g, 4, {0.5, 0.52});
    CHECK(r.hops == 0);
    CHECK(r.terminated_at == 4);
    CHECK(r.path == std::vector<int>{4});
}

TEST_CASE("cycle route follows the short arc, ties to the lowest id") {
    // Both neighbors of node 0 are equidistant from angle pi; the tie goes
    // to node 1 and the route proceeds 0-1-2-3-4.
    const Topology c = build_cycle(8);
    const Route r = greedy_route(c, 0, {std::numbers::pi, 0.0});
    CHECK(r.terminated_at == 4);
    CHECK(r.hops == 4);
    CHECK(r.path == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("routes make strictly monotone progress over existing edges") {
    const Topology t = build_rgg(200, default_radius(200), 11);
    Rng rng(55);
    for (int trial = 0; trial < 2000; ++trial) {
        const int source = rng.uniform_index(t.n);
        const Position target{rng.uniform(), rng.uniform()};
        const Route r = greedy_route(t, source, target);
        CHECK(r.hops == static_cast<int>(r.path.size()) - 1);
        CHECK(r.path.front() == source);
        CHECK(r.path.back() == r.terminated_at);
        for (std::size_t k = 0; k + 1 < r.path.size(); ++k) {
            const auto& nb = t.adjacency[r.path[k]];
            CHECK(std::binary_search(nb.begin(), nb.end(), r.path[k + 1]));
            CHECK(t.distance(r.path[k + 1], target) < t.distance(r.path[k], target));
        }
    }
}

TEST_CASE("regular geometries always route to the nearest node") {
    Rng rng(77);
    const Topology c = build_cycle(12);
    const Topology g = build_grid(25);
    for (int trial = 0; trial < 500; ++trial) {
        const Position pc{2.0 * std::numbers::pi * rng.uniform(), 0.0};
        const int sc = rng.uniform_index(c.n);
        CHECK(greedy_route(c, sc, pc).terminated_at == nearest_node(c, pc));

        const Position pg{rng.uniform(), rng.uniform()};
        const int sg = rng.uniform_index(g.n);
        CHECK(greedy_route(g, sg, pg).terminated_at == nearest_node(g, pg));
    }
}

TEST_CASE("dense rgg routes reach the nearest node almost always") {
    const Topology t = build_rgg(300, default_radius(300), 4);
    REQUIRE(is_connected(t));
    Rng rng(91);
    int match = 0;
    const int kRoutes = 2000;
    for (int trial = 0; trial < kRoutes; ++trial) {
        const int source = rng.uniform_index(t.n);
        const Position target{rng.uniform(), rng.uniform()};
        if (greedy_route(t, source, target).terminated_at == nearest_node(t, target)) ++match;
    }
    CHECK(match >= kRoutes * 99 / 100);
}

TEST_CASE("hop_bound is ceil(2/r) + 1") {
    CHECK(hop_bound(0.5) == 5);
    CHECK(hop_bound(std::numbers::sqrt2) == 3);
    CHECK(hop_bound(default_radius(1000)) == 9);
    CHECK_THROWS_AS(hop_bound(0.0), std::invalid_argument);
    CHECK_THROWS_AS(hop_bound(-1.0), std::invalid_argument);
}

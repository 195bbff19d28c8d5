#include "geogossip/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geogossip {

RejectionPolicy make_policy(const VoronoiTessellation& areas, double tau, double mu, double nu) {
    if (tau <= 0.0) throw std::invalid_argument("policy threshold must be positive");
    RejectionPolicy p;
    p.tau = tau;
    p.mu = mu;
    p.nu = nu;
    p.accept.resize(areas.areas.size());
    p.total_acceptance = 0.0;
    for (std::size_t v = 0; v < areas.areas.size(); ++v) {
        const double a = areas.areas[v];
        if (a <= 0.0) throw std::invalid_argument("nonpositive Voronoi area");
        p.accept[v] = std::min(tau / a, 1.0);
        p.total_acceptance += a * p.accept[v];
    }
    return p;
}

RejectionPolicy policy_fixed_tau(const VoronoiTessellation& areas, double c) {
    if (!(c > 0.0 && c < 0.25)) throw std::invalid_argument("fixed-tau constant must be in (0, 1/4)");
    const int n = areas.size();
    if (n < 1) throw std::invalid_argument("empty tessellation");
    return make_policy(areas, c / n);
}

RejectionPolicy policy_quantile(const VoronoiTessellation& areas, double mu, double nu) {
    if (!(mu > 0.0) || !(nu > 0.0)) throw std::invalid_argument("quantile parameters must be positive");
    const int n = areas.size();
    if (n < 2) throw std::invalid_argument("quantile policy requires n >= 2");
    const double p = std::min(nu, mu / (1.0 + mu));
    int k = static_cast<int>(std::ceil(p * n));
    k = std::clamp(k, 1, n);
    std::vector<double> sorted = areas.areas;
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
    return make_policy(areas, sorted[k - 1], mu, nu);
}

RejectionPolicy policy_always_accept(const VoronoiTessellation& areas) {
    if (areas.size() < 1) throw std::invalid_argument("empty tessellation");
    const double tau = *std::max_element(areas.areas.begin(), areas.areas.end());
    return make_policy(areas, tau);
}

InducedDistribution induced_distribution(const RejectionPolicy& p, const VoronoiTessellation& areas) {
    if (p.size() != areas.size()) throw std::invalid_argument("policy/tessellation size mismatch");
    InducedDistribution dist;
    dist.q.resize(areas.areas.size());
    double total = 0.0;
    for (std::size_t v = 0; v < dist.q.size(); ++v) {
        dist.q[v] = std::min(p.tau, areas.areas[v]);
        total += dist.q[v];
    }
    for (auto& qv : dist.q) qv /= total;
    return dist;
}

std::pair<double, double> distance_to_uniform(const InducedDistribution& dist) {
    const double inv_n = 1.0 / dist.size();
    double l1 = 0.0;
    double l2sq = 0.0;
    for (double qv : dist.q) {
        const double d = qv - inv_n;
        l1 += std::fabs(d);
        l2sq += d * d;
    }
    return {l1, std::sqrt(l2sq)};
}

double expected_queries(const RejectionPolicy& p) {
    if (p.total_acceptance <= 0.0) throw std::domain_error("degenerate policy: zero acceptance");
    return 1.0 / p.total_acceptance;
}

bool decide_accept(const RejectionPolicy& p, int v, Rng& rng) {
    if (v < 0 || v >= p.size()) throw std::out_of_range("node id out of range");
    return rng.uniform() < p.accept[v];
}

}  // namespace geogossip

#pragma once

#include <utility>
#include <vector>

#include "geogossip/rng.hpp"
#include "geogossip/voronoi.hpp"

namespace geogossip {

// Rejection-sampling policy over Voronoi areas: a queried node v accepts
// with probability min(tau / a_v, 1).
struct RejectionPolicy {
    double tau = 0.0;
    double mu = 0.0;   // oversampling parameter, 0 for fixed-tau/always policies
    double nu = 0.0;   // undersampling parameter
    std::vector<double> accept;       // r_v = min(tau / a_v, 1)
    double total_acceptance = 0.0;    // P_a = sum_v a_v * r_v

    int size() const { return static_cast<int>(accept.size()); }
};

// Probability q_v that node v is the accepted partner, q_v ∝ min(tau, a_v).
struct InducedDistribution {
    std::vector<double> q;

    int size() const { return static_cast<int>(q.size()); }
};

// Policy with an explicit threshold tau > 0.
RejectionPolicy make_policy(const VoronoiTessellation& areas, double tau, double mu = 0.0,
                            double nu = 0.0);

// tau = c / n with 0 < c < 1/4.
RejectionPolicy policy_fixed_tau(const VoronoiTessellation& areas, double c);

// tau = empirical area quantile at level p = min(nu, mu / (1 + mu)):
// the k-th smallest area with k = max(1, ceil(p * n)).
RejectionPolicy policy_quantile(const VoronoiTessellation& areas, double mu, double nu);

// Degenerate always-accept policy (tau = max area); the regular-geometry
// case where every cell has equal area.
RejectionPolicy policy_always_accept(const VoronoiTessellation& areas);

InducedDistribution induced_distribution(const RejectionPolicy& p, const VoronoiTessellation& areas);

// (l1, l2) norms of q - (1/n)1.
std::pair<double, double> distance_to_uniform(const InducedDistribution& q);

// Expected queries per accepted exchange, 1 / P_a.
double expected_queries(const RejectionPolicy& p);

// One randomized accept/reject decision for node v.
bool decide_accept(const RejectionPolicy& p, int v, Rng& rng);

}  // namespace geogossip

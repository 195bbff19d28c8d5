#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geogossip/fields.hpp"
#include "geogossip/rng.hpp"
#include "geogossip/sampling.hpp"
#include "geogossip/topology.hpp"

namespace geogossip {

enum class Protocol { Standard, Geographic };
enum class PolicyKind { Always, FixedTau, Quantile };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);
std::string to_string(PolicyKind p);
PolicyKind policy_kind_from_string(const std::string& s);

// Estimates held by the nodes plus the cached quantities the normalized
// error is measured against. The sum of x is conserved by every round.
struct GossipState {
    std::vector<double> x;
    long long tick = 0;
    double x_ave = 0.0;    // true average of x(0)
    double x0_norm = 0.0;  // ||x(0)||_2
};

struct RoundRecord {
    long long hops = 0;  // one-way routed hops summed over the round's queries
    int queries = 0;
};

// One-hop transmission and query accounting. transmissions always equals
// 2 * total_hops.
struct CostLedger {
    long long transmissions = 0;
    long long rounds = 0;
    long long total_hops = 0;     // one-way routed hops over all queries
    long long total_queries = 0;  // queries issued (1 per standard round)
    int max_queries = 0;
    bool keep_records = false;
    std::vector<RoundRecord> per_round;
};

struct SimConfig {
    GeometryKind kind = GeometryKind::Rgg;
    int n = 0;
    double radius = 0.0;  // rgg; 0 selects default_radius(n)
    Protocol protocol = Protocol::Standard;
    PolicyKind policy = PolicyKind::Always;
    double c = 0.1;                 // fixed-tau constant
    double mu = 0.1;                // quantile oversampling
    double nu = 0.1;                // quantile undersampling
    FieldSpec field;
    double epsilon = 0.01;
    long long max_ticks = 1'000'000;
    std::uint64_t seed = 0;
    long long checkpoint_stride = 0;  // ticks between error samples; 0 selects n
    double stop_fraction = 1.0;       // stop once error < epsilon * stop_fraction
};

void validate(const SimConfig& cfg);

// Fixed substream tags: every run derives all randomness from SimConfig::seed.
inline constexpr std::uint64_t kTopologyStream = 1;
inline constexpr std::uint64_t kFieldStream = 2;
inline constexpr std::uint64_t kTrialStreamBase = 3;  // + trial index

// Per-round query safety cap; exceeding it signals a degenerate policy.
inline constexpr int kQueryCap = 1'000'000;

GossipState init_state(const Topology& t, std::vector<double> x0);

// Normalized l2 error ||x - x_ave 1|| / ||x(0)||; undefined for x(0) = 0.
double error(const GossipState& s);

// One standard gossip round: uniform node, uniform neighbor, pairwise
// average; costs 2 transmissions.
void standard_round(GossipState& s, const Topology& t, CostLedger& ledger, Rng& rng);

// One geographic gossip round: uniform source, uniform targets routed
// greedily with rejection sampling until a partner accepts. Each query
// costs 2 * hops (forward plus reply or rejection); a route that never
// leaves the source is redrawn at zero cost. Returns the accepted partner.
int geographic_round(GossipState& s, const Topology& t, const RejectionPolicy& policy,
                     CostLedger& ledger, Rng& rng);

struct TrajectoryRow {
    long long tick = 0;
    double error = 0.0;
    long long transmissions = 0;
    long long rounds = 0;
    int max_queries = 0;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    bool converged = false;
    long long total_hops = 0;     // ledger summaries at the final checkpoint
    long long total_queries = 0;
};

// Materialized simulation inputs shared by run / estimate_averaging_time.
struct SimInstance {
    Topology topology;
    std::vector<double> x0;
    RejectionPolicy policy;  // geographic only
};

SimInstance make_instance(const SimConfig& cfg);

// Execute rounds, sampling (tick, error, cost) at every checkpoint_stride
// ticks, until error < epsilon * stop_fraction or max_ticks.
Trajectory run(const SimConfig& cfg);

// CSV per the trajectory contract: "tick,error,transmissions,rounds,max_queries".
std::string trajectory_to_csv(const Trajectory& t);

struct AveragingTimeEstimate {
    bool converged = false;
    long long tick = 0;
    double last_fraction = 0.0;  // fraction of trials above epsilon at the last checkpoint
};

// Empirical epsilon-averaging time over `trials` independent simulations
// with fixed x(0): the earliest sampled tick at which the fraction of
// trials with error >= epsilon is <= epsilon and stays there.
AveragingTimeEstimate estimate_averaging_time(const SimConfig& cfg, int trials);

}  // namespace geogossip

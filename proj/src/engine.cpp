#include "geogossip/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "geogossip/routing.hpp"
#include "geogossip/voronoi.hpp"

namespace geogossip {

std::string to_string(Protocol p) {
    return p == Protocol::Standard ? "standard" : "geographic";
}

Protocol protocol_from_string(const std::string& s) {
    if (s == "standard") return Protocol::Standard;
    if (s == "geographic") return Protocol::Geographic;
    throw std::invalid_argument("unknown protocol: " + s);
}

std::string to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::Always: return "always";
        case PolicyKind::FixedTau: return "fixed";
        case PolicyKind::Quantile: return "quantile";
    }
    throw std::logic_error("unknown policy kind");
}

PolicyKind policy_kind_from_string(const std::string& s) {
    if (s == "always") return PolicyKind::Always;
    if (s == "fixed") return PolicyKind::FixedTau;
    if (s == "quantile") return PolicyKind::Quantile;
    throw std::invalid_argument("unknown policy kind: " + s);
}

void validate(const SimConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("config requires n >= 1");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0, 1)");
    if (cfg.max_ticks < 0) throw std::invalid_argument("max_ticks must be >= 0");
    if (cfg.checkpoint_stride < 0) throw std::invalid_argument("checkpoint_stride must be >= 0");
    if (!(cfg.stop_fraction >= 0.0 && cfg.stop_fraction <= 1.0))
        throw std::invalid_argument("stop_fraction must be in [0, 1]");
}

GossipState init_state(const Topology& t, std::vector<double> x0) {
    if (static_cast<int>(x0.size()) != t.n)
        throw std::invalid_argument("initial field length does not match node count");
    GossipState s;
    s.x = std::move(x0);
    s.tick = 0;
    double sum = 0.0;
    double norm_sq = 0.0;
    for (double v : s.x) {
        sum += v;
        norm_sq += v * v;
    }
    s.x_ave = t.n > 0 ? sum / t.n : 0.0;
    s.x0_norm = std::sqrt(norm_sq);
    return s;
}

double error(const GossipState& s) {
    if (s.x0_norm <= 0.0) throw std::domain_error("error undefined for zero initial field");
    double dev_sq = 0.0;
    for (double v : s.x) {
        const double d = v - s.x_ave;
        dev_sq += d * d;
    }
    return std::sqrt(dev_sq) / s.x0_norm;
}

namespace {

void record_round(CostLedger& ledger, long long hops, int queries) {
    ledger.rounds += 1;
    ledger.total_hops += hops;
    ledger.total_queries += queries;
    ledger.max_queries = std::max(ledger.max_queries, queries);
    if (ledger.keep_records) ledger.per_round.push_back({hops, queries});
}

void average_pair(GossipState& s, int u, int v) {
    const double mean = 0.5 * (s.x[u] + s.x[v]);
    s.x[u] = mean;
    s.x[v] = mean;
}

Position draw_target(const Topology& t, Rng& rng) {
    if (t.kind == GeometryKind::Cycle) return {2.0 * std::numbers::pi * rng.uniform(), 0.0};
    return {rng.uniform(), rng.uniform()};
}

}  // namespace

void standard_round(GossipState& s, const Topology& t, CostLedger& ledger, Rng& rng) {
    const int u = rng.uniform_index(t.n);
    const auto& nb = t.adjacency[u];
    if (nb.empty()) throw std::runtime_error("standard gossip activated an isolated node");
    const int w = nb[rng.uniform_index(static_cast<int>(nb.size()))];
    average_pair(s, u, w);
    s.tick += 1;
    ledger.transmissions += 2;
    record_round(ledger, 1, 1);
}

int geographic_round(GossipState& s, const Topology& t, const RejectionPolicy& policy,
                     CostLedger& ledger, Rng& rng) {
    if (t.n < 2) throw std::runtime_error("geographic gossip requires n >= 2");
    const int u = rng.uniform_index(t.n);
    int queries = 0;
    long long hops_total = 0;
    for (;;) {
        const Position target = draw_target(t, rng);
        const Route route = greedy_route(t, u, target);
        if (route.hops == 0) continue;  // own cell: redraw at zero cost
        if (++queries > kQueryCap)
            throw std::domain_error("degenerate policy: query cap exceeded");
        hops_total += route.hops;
        ledger.transmissions += 2LL * route.hops;  // query out, reply or rejection back
        if (decide_accept(policy, route.terminated_at, rng)) {
            average_pair(s, u, route.terminated_at);
            s.tick += 1;
            record_round(ledger, hops_total, queries);
            return route.terminated_at;
        }
    }
}

SimInstance make_instance(const SimConfig& cfg) {
    validate(cfg);
    SimInstance inst;
    switch (cfg.kind) {
        case GeometryKind::Cycle: inst.topology = build_cycle(cfg.n); break;
        case GeometryKind::Grid: inst.topology = build_grid(cfg.n); break;
        case GeometryKind::Rgg: {
            const double r = cfg.radius > 0.0 ? cfg.radius : default_radius(cfg.n);
            inst.topology = build_rgg(cfg.n, r, derive_seed(cfg.seed, kTopologyStream));
            break;
        }
    }
    FieldSpec fs = cfg.field;
    fs.seed = derive_seed(cfg.seed, kFieldStream);
    inst.x0 = make_field(inst.topology, fs);
    if (cfg.protocol == Protocol::Geographic) {
        const VoronoiTessellation areas = voronoi_areas(inst.topology);
        switch (cfg.policy) {
            case PolicyKind::Always: inst.policy = policy_always_accept(areas); break;
            case PolicyKind::FixedTau: inst.policy = policy_fixed_tau(areas, cfg.c); break;
            case PolicyKind::Quantile: inst.policy = policy_quantile(areas, cfg.mu, cfg.nu); break;
        }
    }
    return inst;
}

namespace {

// Runs one simulation, invoking `checkpoint(tick, error)` on the sampling
// grid; returns true as soon as the error drops below `stop_error`.
template <typename Checkpoint>
bool simulate(const SimConfig& cfg, const SimInstance& inst, GossipState& state,
              CostLedger& ledger, Rng& rng, double stop_error, Checkpoint&& checkpoint) {
    const long long stride = cfg.checkpoint_stride > 0 ? cfg.checkpoint_stride : cfg.n;
    for (;;) {
        const double err = error(state);
        checkpoint(state.tick, err);
        if (err < stop_error) return true;
        if (state.tick >= cfg.max_ticks) return false;
        const long long next = std::min(state.tick + stride, cfg.max_ticks);
        while (state.tick < next) {
            if (cfg.protocol == Protocol::Standard)
                standard_round(state, inst.topology, ledger, rng);
            else
                geographic_round(state, inst.topology, inst.policy, ledger, rng);
        }
    }
}

}  // namespace

Trajectory run(const SimConfig& cfg) {
    const SimInstance inst = make_instance(cfg);
    GossipState state = init_state(inst.topology, inst.x0);
    CostLedger ledger;
    Rng rng(derive_seed(cfg.seed, kTrialStreamBase));
    Trajectory traj;
    traj.converged = simulate(cfg, inst, state, ledger, rng, cfg.epsilon * cfg.stop_fraction,
                              [&](long long tick, double err) {
                                  traj.rows.push_back({tick, err, ledger.transmissions,
                                                       ledger.rounds, ledger.max_queries});
                              });
    traj.total_hops = ledger.total_hops;
    traj.total_queries = ledger.total_queries;
    return traj;
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::string out = "tick,error,transmissions,rounds,max_queries\n";
    char buf[160];
    for (const auto& row : t.rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%.12g,%lld,%lld,%d\n", row.tick, row.error,
                      row.transmissions, row.rounds, row.max_queries);
        out += buf;
    }
    return out;
}

AveragingTimeEstimate estimate_averaging_time(const SimConfig& cfg, int trials) {
    if (trials < 20) throw std::invalid_argument("averaging-time estimate requires trials >= 20");
    const SimInstance inst = make_instance(cfg);
    const long long kNever = -1;
    std::vector<long long> first_below(trials, kNever);
    long long last_checkpoint = 0;
    for (int trial = 0; trial < trials; ++trial) {
        GossipState state = init_state(inst.topology, inst.x0);
        CostLedger ledger;
        Rng rng(derive_seed(cfg.seed, kTrialStreamBase + static_cast<std::uint64_t>(trial)));
        long long hit = kNever;
        simulate(cfg, inst, state, ledger, rng, cfg.epsilon, [&](long long tick, double err) {
            if (hit == kNever && err < cfg.epsilon) hit = tick;
            last_checkpoint = std::max(last_checkpoint, tick);
        });
        first_below[trial] = hit;
        // The l2 error never increases under pairwise averaging, so the first
        // crossing is the last: the trial can stop there.
    }
    const int allowed = static_cast<int>(std::floor(cfg.epsilon * trials));
    std::vector<long long> finite;
    finite.reserve(trials);
    for (long long v : first_below)
        if (v != kNever) finite.push_back(v);
    AveragingTimeEstimate est;
    if (static_cast<int>(finite.size()) < trials - allowed) {
        est.converged = false;
        est.tick = last_checkpoint;
        est.last_fraction =
            static_cast<double>(trials - static_cast<int>(finite.size())) / trials;
        return est;
    }
    std::sort(finite.begin(), finite.end());
    est.converged = true;
    est.tick = finite[static_cast<std::size_t>(trials - allowed) - 1];
    est.last_fraction = static_cast<double>(trials - static_cast<int>(finite.size())) / trials;
    return est;
}

}  // namespace geogossip

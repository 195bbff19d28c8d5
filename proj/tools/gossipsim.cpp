// gossipsim: build sensor-network topologies, run gossip experiments, sweep
// network sizes, and report spectral predictions, all as deterministic CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geogossip/engine.hpp"
#include "geogossip/spectral.hpp"
#include "geogossip/topology.hpp"
#include "geogossip/voronoi.hpp"

namespace gg = geogossip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitInternal = 4;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

struct TopologyFlags {
    std::string kind = "rgg";
    int n = 0;
    double r = 0.0;
    std::uint64_t seed = 0;
};

void add_topology_flags(CLI::App* cmd, TopologyFlags& f) {
    cmd->add_option("--kind", f.kind, "topology kind: cycle | grid | rgg")
        ->check(CLI::IsMember({"cycle", "grid", "rgg"}));
    cmd->add_option("--n", f.n, "node count")->required();
    cmd->add_option("--r", f.r, "rgg connection radius (default: sqrt(10 ln n / n))");
    cmd->add_option("--seed", f.seed, "master seed");
}

gg::Topology build_from_flags(const TopologyFlags& f) {
    const gg::GeometryKind kind = gg::geometry_kind_from_string(f.kind);
    switch (kind) {
        case gg::GeometryKind::Cycle: return gg::build_cycle(f.n);
        case gg::GeometryKind::Grid: return gg::build_grid(f.n);
        case gg::GeometryKind::Rgg: {
            const double r = f.r > 0.0 ? f.r : gg::default_radius(f.n);
            return gg::build_rgg(f.n, r, gg::derive_seed(f.seed, gg::kTopologyStream));
        }
    }
    throw std::logic_error("unreachable");
}

struct RunFlags {
    TopologyFlags topo;
    std::string protocol = "standard";
    std::string policy = "always";
    double c = 0.1;
    double mu = 0.1;
    double nu = 0.1;
    std::string field = "linear";
    int sources = 5;
    int iterations = 50;
    double epsilon = 0.01;
    long long max_ticks = 1'000'000;
    long long stride = 0;
    double stop_fraction = 1.0;
    std::string out;
    std::string field_out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    add_topology_flags(cmd, f.topo);
    cmd->add_option("--protocol", f.protocol, "standard | geographic")
        ->check(CLI::IsMember({"standard", "geographic"}));
    cmd->add_option("--policy", f.policy, "rejection policy: always | fixed | quantile")
        ->check(CLI::IsMember({"always", "fixed", "quantile"}));
    cmd->add_option("--c", f.c, "fixed-tau constant in (0, 1/4)");
    cmd->add_option("--mu", f.mu, "quantile oversampling parameter");
    cmd->add_option("--nu", f.nu, "quantile undersampling parameter");
    cmd->add_option("--field", f.field, "initial field: linear | diffusion | spike")
        ->check(CLI::IsMember({"linear", "diffusion", "spike"}));
    cmd->add_option("--sources", f.sources, "diffusion source count");
    cmd->add_option("--iterations", f.iterations, "diffusion smoothing iterations");
    cmd->add_option("--epsilon", f.epsilon, "target accuracy in (0, 1)");
    cmd->add_option("--max-ticks", f.max_ticks, "tick budget");
    cmd->add_option("--stride", f.stride, "ticks between checkpoints (default n)");
    cmd->add_option("--stop-fraction", f.stop_fraction, "stop when error < epsilon * fraction");
}

gg::SimConfig to_config(const RunFlags& f) {
    gg::SimConfig cfg;
    cfg.kind = gg::geometry_kind_from_string(f.topo.kind);
    cfg.n = f.topo.n;
    cfg.radius = f.topo.r;
    cfg.seed = f.topo.seed;
    cfg.protocol = gg::protocol_from_string(f.protocol);
    cfg.policy = gg::policy_kind_from_string(f.policy);
    cfg.c = f.c;
    cfg.mu = f.mu;
    cfg.nu = f.nu;
    cfg.field.kind = gg::field_kind_from_string(f.field);
    cfg.field.sources = f.sources;
    cfg.field.iterations = f.iterations;
    cfg.epsilon = f.epsilon;
    cfg.max_ticks = f.max_ticks;
    cfg.checkpoint_stride = f.stride;
    cfg.stop_fraction = f.stop_fraction;
    return cfg;
}

int cmd_generate(const TopologyFlags& f, const std::string& out) {
    const gg::Topology t = build_from_flags(f);
    std::ostringstream body;
    gg::write_topology(body, t);
    write_file(out, body.str());
    std::cout << t.n << ' ' << t.edge_count() << ' ' << (gg::is_connected(t) ? 1 : 0) << '\n';
    return kExitOk;
}

int cmd_run_one(const gg::SimConfig& cfg, const std::string& out, const std::string& field_out) {
    if (!field_out.empty()) {
        const gg::SimInstance inst = gg::make_instance(cfg);
        std::string csv = "node,value\n";
        for (std::size_t i = 0; i < inst.x0.size(); ++i)
            csv += std::to_string(i) + "," + fmt(inst.x0[i]) + "\n";
        write_file(field_out, csv);
    }
    const gg::Trajectory traj = gg::run(cfg);
    emit(out, gg::trajectory_to_csv(traj));
    return traj.converged ? kExitOk : kExitNotConverged;
}

// Manifest: blank-line-separated blocks of "key=value" lines, keys matching
// the run flags (kind, n, r, seed, protocol, policy, c, mu, nu, field,
// sources, iterations, epsilon, max-ticks, stride, stop-fraction, out).
std::vector<std::map<std::string, std::string>> parse_manifest(std::istream& is) {
    std::vector<std::map<std::string, std::string>> blocks;
    std::map<std::string, std::string> block;
    std::string line;
    auto flush = [&] {
        if (!block.empty()) blocks.push_back(block);
        block.clear();
    };
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        if (line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("manifest line missing '=': " + line);
        std::string key = line.substr(first, eq - first);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) value.erase(0, 1);
        block[key] = value;
    }
    flush();
    return blocks;
}

gg::SimConfig config_from_manifest_block(const std::map<std::string, std::string>& kv,
                                         std::string& out) {
    RunFlags f;
    for (const auto& [key, value] : kv) {
        if (key == "kind") f.topo.kind = value;
        else if (key == "n") f.topo.n = std::stoi(value);
        else if (key == "r") f.topo.r = std::stod(value);
        else if (key == "seed") f.topo.seed = std::stoull(value);
        else if (key == "protocol") f.protocol = value;
        else if (key == "policy") f.policy = value;
        else if (key == "c") f.c = std::stod(value);
        else if (key == "mu") f.mu = std::stod(value);
        else if (key == "nu") f.nu = std::stod(value);
        else if (key == "field") f.field = value;
        else if (key == "sources") f.sources = std::stoi(value);
        else if (key == "iterations") f.iterations = std::stoi(value);
        else if (key == "epsilon") f.epsilon = std::stod(value);
        else if (key == "max-ticks") f.max_ticks = std::stoll(value);
        else if (key == "stride") f.stride = std::stoll(value);
        else if (key == "stop-fraction") f.stop_fraction = std::stod(value);
        else if (key == "out") out = value;
        else throw std::invalid_argument("unknown manifest key: " + key);
    }
    if (out.empty()) throw std::invalid_argument("manifest block is missing out=");
    return to_config(f);
}

int cmd_run_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open manifest: " + path);
    const auto blocks = parse_manifest(is);
    if (blocks.empty()) throw std::invalid_argument("manifest has no configs");
    std::vector<gg::SimConfig> configs;
    std::vector<std::string> outs;
    std::set<std::string> seen;
    for (const auto& block : blocks) {
        std::string out;
        gg::SimConfig cfg = config_from_manifest_block(block, out);
        gg::validate(cfg);
        if (!seen.insert(out).second)
            throw std::invalid_argument("manifest output paths must be distinct: " + out);
        configs.push_back(cfg);
        outs.push_back(out);
    }
    int exit_code = kExitOk;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (cmd_run_one(configs[i], outs[i], "") != kExitOk) exit_code = kExitNotConverged;
    }
    return exit_code;
}

struct SweepFlags {
    RunFlags run;
    std::vector<int> n_list;
    int trials = 10;
};

double loglog_slope(const std::vector<double>& ns, const std::vector<double>& ys) {
    double mx = 0.0, my = 0.0;
    const std::size_t k = ns.size();
    std::vector<double> xs(k), ls(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = std::log(ns[i]);
        ls[i] = std::log(ys[i]);
        mx += xs[i];
        my += ls[i];
    }
    mx /= k;
    my /= k;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += (xs[i] - mx) * (ls[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

int cmd_sweep(const SweepFlags& f) {
    if (f.trials < 1) throw std::invalid_argument("sweep requires trials >= 1");
    if (f.n_list.empty()) throw std::invalid_argument("sweep requires at least one n");
    std::string csv = "n,protocol,trials,mean_transmissions,mean_rounds,mean_hops,mean_queries\n";
    std::vector<double> ns, trans, rounds;
    bool all_converged = true;
    for (std::size_t idx = 0; idx < f.n_list.size(); ++idx) {
        gg::SimConfig base = to_config(f.run);
        base.n = f.n_list[idx];
        double sum_trans = 0.0, sum_rounds = 0.0;
        long long hops = 0, queries = 0;
        for (int trial = 0; trial < f.trials; ++trial) {
            gg::SimConfig cfg = base;
            // Fully independent trials: topology, field, and gossip streams
            // all re-derived per (size, trial).
            cfg.seed = gg::derive_seed(f.run.topo.seed,
                                       idx * 1'000'003ULL + static_cast<std::uint64_t>(trial));
            const gg::Trajectory traj = gg::run(cfg);
            if (!traj.converged) all_converged = false;
            const auto& last = traj.rows.back();
            sum_trans += static_cast<double>(last.transmissions);
            sum_rounds += static_cast<double>(last.rounds);
            hops += traj.total_hops;
            queries += traj.total_queries;
        }
        const double mean_trans = sum_trans / f.trials;
        const double mean_rounds = sum_rounds / f.trials;
        const double mean_hops = queries > 0 ? static_cast<double>(hops) / queries : 0.0;
        const double mean_queries = sum_rounds > 0.0 ? static_cast<double>(queries) / sum_rounds : 0.0;
        ns.push_back(static_cast<double>(base.n));
        trans.push_back(mean_trans);
        rounds.push_back(mean_rounds);
        csv += std::to_string(base.n) + "," + f.run.protocol + "," + std::to_string(f.trials) +
               "," + fmt(mean_trans) + "," + fmt(mean_rounds) + "," + fmt(mean_hops) + "," +
               fmt(mean_queries) + "\n";
    }
    if (ns.size() >= 3) {
        csv += "slope," + f.run.protocol + ",," + fmt(loglog_slope(ns, trans)) + "," +
               fmt(loglog_slope(ns, rounds)) + ",,\n";
    } else {
        std::cerr << "warning: fewer than 3 n values, slope omitted\n";
    }
    emit(f.run.out, csv);
    return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_spectral(const TopologyFlags& f, double epsilon, const std::string& out) {
    const gg::Topology t = build_from_flags(f);
    const double std_l2 = gg::lambda2(gg::build_W(gg::selection_standard(t)));
    const double geo_l2 = gg::closed_form_complete_lambda2(t.n);
    std::string csv = "n,topology,protocol,lambda2,gap,predicted_rounds\n";
    auto row = [&](const std::string& protocol, double l2) {
        csv += std::to_string(t.n) + "," + gg::to_string(t.kind) + "," + protocol + "," + fmt(l2) +
               "," + fmt(1.0 - l2) + "," + fmt(gg::predicted_rounds(l2, epsilon)) + "\n";
    };
    row("standard", std_l2);
    row("geographic", geo_l2);
    emit(out, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gossip averaging simulator"};
    app.require_subcommand(1);

    TopologyFlags gen_flags;
    std::string gen_out = "topology.txt";
    CLI::App* gen = app.add_subcommand("generate", "build a topology and write its serialization");
    add_topology_flags(gen, gen_flags);
    gen->add_option("--out", gen_out, "output path");

    RunFlags run_flags;
    std::string manifest_path;
    CLI::App* run = app.add_subcommand("run", "simulate one configuration, emit trajectory CSV");
    add_run_flags(run, run_flags);
    run->add_option("--out", run_flags.out, "output CSV path (default stdout)");
    run->add_option("--manifest", manifest_path, "run every block of a key=value manifest");
    run->add_option("--field-out", run_flags.field_out, "also write the initial field as node,value CSV");
    run->get_option("--n")->required(false);

    SweepFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "scaling sweep over network sizes");
    add_run_flags(sweep, sweep_flags.run);
    sweep->add_option("--n-list", sweep_flags.n_list, "network sizes")->required()->delimiter(',');
    sweep->add_option("--trials", sweep_flags.trials, "trials per size");
    sweep->add_option("--out", sweep_flags.run.out, "output CSV path (default stdout)");
    sweep->get_option("--n")->required(false);

    TopologyFlags spec_flags;
    double spec_epsilon = 0.01;
    std::string spec_out;
    CLI::App* spectral = app.add_subcommand("spectral", "second-eigenvalue report per protocol");
    add_topology_flags(spectral, spec_flags);
    spectral->add_option("--epsilon", spec_epsilon, "accuracy for predicted rounds");
    spectral->add_option("--out", spec_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_flags, gen_out);
        if (run->parsed()) {
            if (!manifest_path.empty()) return cmd_run_manifest(manifest_path);
            if (run_flags.topo.n <= 0) throw std::invalid_argument("run requires --n or --manifest");
            return cmd_run_one(to_config(run_flags), run_flags.out, run_flags.field_out);
        }
        if (sweep->parsed()) return cmd_sweep(sweep_flags);
        if (spectral->parsed()) return cmd_spectral(spec_flags, spec_epsilon, spec_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

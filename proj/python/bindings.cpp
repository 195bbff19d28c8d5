// Python bindings for the gossip averaging core: topology construction,
// Voronoi areas, greedy routing, rejection sampling, the simulation engine,
// and the spectral predictions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "geogossip/engine.hpp"
#include "geogossip/routing.hpp"
#include "geogossip/spectral.hpp"
#include "geogossip/topology.hpp"
#include "geogossip/voronoi.hpp"

namespace py = pybind11;
using namespace geogossip;

namespace {

Position to_position(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(geogossip, m) {
    m.doc() = "Gossip averaging on sensor-network graphs: standard and "
              "geographic protocols, spectral predictions, experiment engine.";

    py::enum_<GeometryKind>(m, "GeometryKind")
        .value("cycle", GeometryKind::Cycle)
        .value("grid", GeometryKind::Grid)
        .value("rgg", GeometryKind::Rgg);

    py::enum_<Protocol>(m, "Protocol")
        .value("standard", Protocol::Standard)
        .value("geographic", Protocol::Geographic);

    py::enum_<PolicyKind>(m, "PolicyKind")
        .value("always", PolicyKind::Always)
        .value("fixed", PolicyKind::FixedTau)
        .value("quantile", PolicyKind::Quantile);

    py::enum_<FieldKind>(m, "FieldKind")
        .value("linear", FieldKind::Linear)
        .value("diffusion", FieldKind::Diffusion)
        .value("spike", FieldKind::Spike);

    py::class_<Position>(m, "Position")
        .def(py::init<>())
        .def(py::init([](double u, double v) { return Position{u, v}; }), py::arg("u"),
             py::arg("v") = 0.0)
        .def_readwrite("u", &Position::u)
        .def_readwrite("v", &Position::v);

    py::class_<Topology>(m, "Topology")
        .def_readonly("kind", &Topology::kind)
        .def_readonly("n", &Topology::n)
        .def_readonly("radius", &Topology::radius)
        .def_readonly("seed", &Topology::seed)
        .def_readonly("adjacency", &Topology::adjacency)
        .def_property_readonly("positions",
                               [](const Topology& t) {
                                   std::vector<std::pair<double, double>> out;
                                   out.reserve(t.positions.size());
                                   for (const auto& p : t.positions) out.emplace_back(p.u, p.v);
                                   return out;
                               })
        .def("degree", &Topology::degree)
        .def("edge_count", &Topology::edge_count)
        .def("serialize", [](const Topology& t) {
            std::ostringstream os;
            write_topology(os, t);
            return os.str();
        });

    m.def("build_cycle", &build_cycle, py::arg("n"));
    m.def("build_grid", &build_grid, py::arg("n"));
    m.def("build_rgg", &build_rgg, py::arg("n"), py::arg("r"), py::arg("seed"));
    m.def("default_radius", &default_radius, py::arg("n"));
    m.def("is_connected", &is_connected);
    m.def(
        "nearest_node",
        [](const Topology& t, std::pair<double, double> p) { return nearest_node(t, to_position(p)); },
        py::arg("topology"), py::arg("point"));
    m.def("parse_topology", [](const std::string& text) {
        std::istringstream is(text);
        return read_topology(is);
    });

    py::class_<VoronoiTessellation>(m, "VoronoiTessellation")
        .def_readonly("areas", &VoronoiTessellation::areas);
    m.def("voronoi_areas", &voronoi_areas);

    py::class_<Route>(m, "Route")
        .def_readonly("path", &Route::path)
        .def_readonly("hops", &Route::hops)
        .def_readonly("terminated_at", &Route::terminated_at);
    m.def(
        "greedy_route",
        [](const Topology& t, int source, std::pair<double, double> target) {
            return greedy_route(t, source, to_position(target));
        },
        py::arg("topology"), py::arg("source"), py::arg("target"));
    m.def("hop_bound", &hop_bound, py::arg("r"));

    py::class_<RejectionPolicy>(m, "RejectionPolicy")
        .def_readonly("tau", &RejectionPolicy::tau)
        .def_readonly("mu", &RejectionPolicy::mu)
        .def_readonly("nu", &RejectionPolicy::nu)
        .def_readonly("accept", &RejectionPolicy::accept)
        .def_readonly("total_acceptance", &RejectionPolicy::total_acceptance);
    py::class_<InducedDistribution>(m, "InducedDistribution")
        .def_readonly("q", &InducedDistribution::q);
    m.def("make_policy", &make_policy, py::arg("areas"), py::arg("tau"), py::arg("mu") = 0.0,
          py::arg("nu") = 0.0);
    m.def("policy_fixed_tau", &policy_fixed_tau, py::arg("areas"), py::arg("c"));
    m.def("policy_quantile", &policy_quantile, py::arg("areas"), py::arg("mu"), py::arg("nu"));
    m.def("policy_always_accept", &policy_always_accept, py::arg("areas"));
    m.def("induced_distribution", &induced_distribution, py::arg("policy"), py::arg("areas"));
    m.def("distance_to_uniform", &distance_to_uniform, py::arg("q"));
    m.def("expected_queries", &expected_queries, py::arg("policy"));

    m.def("linear_field", &linear_field);
    m.def("spike_field", &spike_field);
    m.def("diffusion_field", &diffusion_field, py::arg("topology"), py::arg("sources"),
          py::arg("iterations"), py::arg("seed"));

    py::class_<FieldSpec>(m, "FieldSpec")
        .def(py::init<>())
        .def_readwrite("kind", &FieldSpec::kind)
        .def_readwrite("sources", &FieldSpec::sources)
        .def_readwrite("iterations", &FieldSpec::iterations)
        .def_readwrite("seed", &FieldSpec::seed);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("kind", &SimConfig::kind)
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("radius", &SimConfig::radius)
        .def_readwrite("protocol", &SimConfig::protocol)
        .def_readwrite("policy", &SimConfig::policy)
        .def_readwrite("c", &SimConfig::c)
        .def_readwrite("mu", &SimConfig::mu)
        .def_readwrite("nu", &SimConfig::nu)
        .def_readwrite("field", &SimConfig::field)
        .def_readwrite("epsilon", &SimConfig::epsilon)
        .def_readwrite("max_ticks", &SimConfig::max_ticks)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("checkpoint_stride", &SimConfig::checkpoint_stride)
        .def_readwrite("stop_fraction", &SimConfig::stop_fraction);

    py::class_<TrajectoryRow>(m, "TrajectoryRow")
        .def_readonly("tick", &TrajectoryRow::tick)
        .def_readonly("error", &TrajectoryRow::error)
        .def_readonly("transmissions", &TrajectoryRow::transmissions)
        .def_readonly("rounds", &TrajectoryRow::rounds)
        .def_readonly("max_queries", &TrajectoryRow::max_queries);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("rows", &Trajectory::rows)
        .def_readonly("converged", &Trajectory::converged)
        .def_readonly("total_hops", &Trajectory::total_hops)
        .def_readonly("total_queries", &Trajectory::total_queries)
        .def("to_csv", [](const Trajectory& t) { return trajectory_to_csv(t); });
    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<AveragingTimeEstimate>(m, "AveragingTimeEstimate")
        .def_readonly("converged", &AveragingTimeEstimate::converged)
        .def_readonly("tick", &AveragingTimeEstimate::tick)
        .def_readonly("last_fraction", &AveragingTimeEstimate::last_fraction);
    m.def("estimate_averaging_time", &estimate_averaging_time, py::arg("config"), py::arg("trials"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<SelectionMatrix>(m, "SelectionMatrix");
    py::class_<AveragingMatrix>(m, "AveragingMatrix").def_readonly("D", &AveragingMatrix::D);
    m.def("selection_standard", &selection_standard);
    m.def("selection_geographic", &selection_geographic);
    m.def("build_W", &build_W);
    m.def("lambda2", &lambda2);
    m.def("averaging_eigenvalues",
          [](const AveragingMatrix& w) { return symmetric_eigenvalues(w.W); },
          "All eigenvalues of W, ascending");
    m.def("slowest_mode",
          [](const AveragingMatrix& w) { return second_eigenvector(w.W); },
          "Unit eigenvector of W's second-largest eigenvalue");
    m.def("closed_form_cycle_lambda2", &closed_form_cycle_lambda2, py::arg("n"));
    m.def("closed_form_complete_lambda2", &closed_form_complete_lambda2, py::arg("n"));
    m.def("predicted_rounds", &predicted_rounds, py::arg("lambda2"), py::arg("epsilon"));
    m.def("theorem1_gap_certificate", &theorem1_gap_certificate, py::arg("q"));
}

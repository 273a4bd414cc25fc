#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "girglab/expansion.hpp"
#include "girglab/experiment.hpp"
#include "girglab/io.hpp"
#include "girglab/processes.hpp"
#include "girglab/sampler.hpp"
#include "girglab/strips.hpp"

namespace py = pybind11;
using namespace girglab;

namespace {

TorusPoint point(const std::vector<double>& x) { return TorusPoint(x); }

py::array_t<std::uint32_t> edge_array(const Graph& g) {
    const auto e = g.edges();
    py::array_t<std::uint32_t> out({py::ssize_t(e.size()), py::ssize_t(2)});
    auto r = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < e.size(); ++i) {
        r(i, 0) = e[i].first;
        r(i, 1) = e[i].second;
    }
    return out;
}

py::array_t<double> weight_array(const Graph& g) {
    if (!g.has_vertex_data()) throw std::invalid_argument("graph has no vertex data");
    py::array_t<double> out(py::ssize_t(g.num_vertices()));
    auto r = out.mutable_unchecked<1>();
    for (VertexId v = 0; v < g.num_vertices(); ++v) r(v) = g.vertex(v).weight;
    return out;
}

py::array_t<double> position_array(const Graph& g) {
    if (!g.has_vertex_data()) throw std::invalid_argument("graph has no vertex data");
    const auto d = py::ssize_t(g.vertex(0).position.dim());
    py::array_t<double> out({py::ssize_t(g.num_vertices()), d});
    auto r = out.mutable_unchecked<2>();
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        for (py::ssize_t i = 0; i < d; ++i) r(v, i) = g.vertex(v).position[i];
    return out;
}

Graph from_edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) { return Graph(n, edges); }

Graph induced(const Graph& g, const std::string& mode, double gamma, double c_prime, double c1, double c2) {
    return induce(g, induce_mode_from_string(mode), gamma, {c_prime, c1, c2}).materialize();
}

Graph giant(const Graph& g) { return SubgraphView(g, largest_component(g)).materialize(); }

py::dict run(const std::string& config_json) {
    const ExperimentOutcome r = run_experiment(parse_config(config_json));
    py::list crit;
    for (const auto& c : r.criteria)
        crit.append(py::dict(py::arg("id") = c.id, py::arg("name") = c.name, py::arg("passed") = c.pass,
                             py::arg("detail") = c.detail));
    return py::dict(py::arg("exit_status") = r.exit_status, py::arg("results") = r.results_path,
                    py::arg("summary") = r.summary_path, py::arg("files") = r.files, py::arg("criteria") = crit);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sampling and expansion analysis of geometric inhomogeneous random graphs.";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    py::enum_<Geometry>(m, "Geometry").value("MCD", Geometry::MCD).value("LINF", Geometry::LINF);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](std::int64_t n, int d, double tau, double alpha, double kernel_c, Geometry geometry,
                         std::uint64_t seed) {
                 ModelParams p{n, d, tau, alpha, kernel_c, geometry, seed};
                 p.validate();
                 return p;
             }),
             py::arg("n") = 1000, py::arg("d") = 2, py::arg("tau") = 2.5, py::arg("alpha") = 1.5,
             py::arg("kernel_c") = 1.0, py::arg("geometry") = Geometry::MCD, py::arg("seed") = 0)
        .def_readwrite("n", &ModelParams::n)
        .def_readwrite("d", &ModelParams::d)
        .def_readwrite("tau", &ModelParams::tau)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("kernel_c", &ModelParams::kernel_c)
        .def_readwrite("geometry", &ModelParams::geometry)
        .def_readwrite("seed", &ModelParams::seed)
        .def("validate", &ModelParams::validate);

    m.def("torus_abs", &torus_abs, py::arg("a"), py::arg("b"));
    m.def("mcd_distance", [](const std::vector<double>& x, const std::vector<double>& y) {
        return mcd_distance(point(x), point(y));
    });
    m.def("linf_distance", [](const std::vector<double>& x, const std::vector<double>& y) {
        return linf_distance(point(x), point(y));
    });
    m.def("volume_min", &volume_min, py::arg("r"), py::arg("d"));
    m.def("volume_linf", &volume_linf, py::arg("r"), py::arg("d"));
    m.def("sample_weight", &sample_weight, py::arg("u"), py::arg("tau"));
    m.def("connection_probability", &connection_probability, py::arg("w_u"), py::arg("w_v"), py::arg("dist"),
          py::arg("params"));

    py::class_<Graph>(m, "Graph")
        .def(py::init(&from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("degree", &Graph::degree)
        .def("neighbors", [](const Graph& g, VertexId v) {
            if (v >= g.num_vertices()) throw py::index_error("vertex out of range");
            auto s = g.neighbors(v);
            return std::vector<VertexId>(s.begin(), s.end());
        })
        .def("has_edge", &Graph::has_edge)
        .def("edges", &edge_array)
        .def("weights", &weight_array)
        .def("positions", &position_array)
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
        });

    m.def("sample_graph", [](const ModelParams& p, double gamma, int threads) {
              SamplerOptions opt;
              opt.threads = threads;
              py::gil_scoped_release release;
              return sample_graph_bucketed(p, gamma, opt);
          },
          py::arg("params"), py::arg("gamma") = 1.0, py::arg("threads") = 1);
    m.def("sample_graph_naive", [](const ModelParams& p) { return sample_graph_naive(p); }, py::arg("params"));

    m.def("strip_width", [](std::int64_t n, double gamma) {
        const StripWidth s = strip_width(n, gamma);
        return py::make_tuple(s.count, s.width);
    });
    m.def("cover_bound", [](std::int64_t nv, std::int64_t s, std::int64_t k, std::int64_t strips, int d) {
              return cover_bound({nv, s, k, strips, d});
          },
          py::arg("nv"), py::arg("s"), py::arg("k"), py::arg("strips"), py::arg("d"));

    m.def("induce", &induced, py::arg("graph"), py::arg("mode"), py::arg("gamma"), py::arg("c_prime") = 1.0,
          py::arg("c1") = 1.0, py::arg("c2") = 2.0);
    m.def("largest_component", &giant);
    m.def("component_count", [](const Graph& g) { return connected_components(g).count(); });
    m.def("expansion_ratio", [](const Graph& g, const std::vector<VertexId>& s) { return expansion_ratio(g, s); });
    m.def("brute_force_min_expansion", [](const Graph& g, int max_size) {
        const WorstSet w = brute_force_min_expansion(g, max_size);
        return py::make_tuple(w.set, w.ratio);
    });
    m.def("greedy_worst_set", [](const Graph& g, int restarts, double max_frac, std::uint64_t seed) {
              const WorstSet w = greedy_worst_set(g, restarts, max_frac, seed);
              return py::make_tuple(w.set, w.ratio);
          },
          py::arg("graph"), py::arg("restarts"), py::arg("max_frac"), py::arg("seed") = 0);
    m.def("spectral_gap", [](const Graph& g) { return spectral_gap(g).lambda2; });
    m.def("cheeger_bounds", [](double l) {
        const CheegerBounds b = cheeger_bounds(l);
        return py::make_tuple(b.lo, b.hi);
    });
    m.def("hyperplane_cut_edges", &hyperplane_cut_edges, py::arg("graph"), py::arg("coordinate") = 0);

    m.def("stationary_distribution", [](const Graph& g) { return stationary_distribution(g).p; });
    m.def("mixing_time", [](const Graph& g, double eps, VertexId start, std::int64_t budget) {
              return estimate_mixing_time(g, eps, start, budget).steps;
          },
          py::arg("graph"), py::arg("eps"), py::arg("start") = 0, py::arg("budget") = 100000);
    m.def("push_rumor_rounds", &push_rumor_rounds, py::arg("graph"), py::arg("source"), py::arg("coverage"),
          py::arg("seed"));
    m.def("si_spread_rounds", &si_spread_rounds, py::arg("graph"), py::arg("source"), py::arg("beta"),
          py::arg("coverage"), py::arg("seed"));

    m.def("save_graph", &save_graph, py::arg("graph"), py::arg("edges_path"), py::arg("verts_path"));
    m.def("load_graph", &load_graph, py::arg("edges_path"), py::arg("verts_path") = std::nullopt);
    m.def("run_experiment", &run, py::arg("config_json"),
          "Run a JSON experiment config; returns paths and acceptance verdicts.");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "cfk/exporters.hpp"
#include "cfk/foliation.hpp"
#include "cfk/green.hpp"
#include "cfk/topology.hpp"

namespace py = pybind11;
using namespace cfk;

namespace {

IntMat mat_from_py(const std::vector<std::vector<long>>& rows) {
    IntMat b(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (long v : rows[i]) b[i].push_back(Int(v));
    if (!is_skew_symmetric(b)) throw std::invalid_argument("B matrix is not skew-symmetric");
    return b;
}

std::vector<long> vec_to_py(const std::vector<Int>& v) {
    std::vector<long> out;
    for (const Int& z : v) out.push_back(to_long(z));
    return out;
}

Sense sense_from(const std::string& s) {
    if (s == "down") return Sense::Down;
    if (s == "up") return Sense::Up;
    throw std::invalid_argument("sense must be 'down' or 'up'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cluster complexes, evolution flows, and foliations";

    m.def("preset", [](const std::string& name) {
        IntMat b = preset_b_matrix(name);
        std::vector<std::vector<long>> out;
        for (const auto& row : b) out.push_back(vec_to_py(row));
        return out;
    });

    py::class_<ComplexStore>(m, "Store")
        .def(py::init([](const std::vector<std::vector<long>>& b, size_t max_clusters) {
                 return ComplexStore::enumerate(mat_from_py(b), max_clusters);
             }),
             py::arg("b_matrix"), py::arg("max_clusters") = 100000)
        .def_property_readonly("rank", &ComplexStore::rank)
        .def_property_readonly("exhausted", &ComplexStore::exhausted)
        .def_property_readonly("variable_count", &ComplexStore::variable_count)
        .def_property_readonly("cluster_count", &ComplexStore::cluster_count)
        .def("set_max_clusters", &ComplexStore::set_max_clusters)
        .def("g_vector", [](const ComplexStore& s, VarId v) { return vec_to_py(s.g_vec(v)); })
        .def("cluster_vars",
             [](const ComplexStore& s, int ci) { return s.cluster(ci).sorted_vars; })
        .def("expand", [](const ComplexStore& s, int ci, int k) { return s.expand(ci, k); })
        .def("shift", &ComplexStore::shift_var)
        .def("relative_index",
             [](const ComplexStore& s, int ci, VarId x) { return vec_to_py(s.relative_index(ci, x)); })
        .def("star", &ComplexStore::star)
        .def("link", [](const ComplexStore& s, const std::vector<VarId>& cell) {
            return s.link(cell).facets;
        })
        .def("exchange_edges", [](const ComplexStore& s) {
            std::vector<std::tuple<int, int, VarId, VarId>> out;
            for (const auto& e : s.exchange_graph().edges)
                out.emplace_back(e.a, e.b, e.out_of_a, e.into_a);
            return out;
        })
        .def("to_json", [](const ComplexStore& s) { return complex_to_json(s).dump(); });

    m.def(
        "trace_json",
        [](const ComplexStore& store, const std::string& sink_spec,
           const std::string& start_spec, const std::string& sense, long budget) {
            SinkSpec sink = make_sink(store, parse_weight_spec(store, sink_spec), sink_spec);
            Point start{parse_weight_spec(store, start_spec)};
            LeafTrace t = trace(store, sink, start, sense_from(sense), budget);
            return trace_to_json(store, sink, sense_from(sense), t).dump();
        },
        py::arg("store"), py::arg("sink"), py::arg("start"), py::arg("sense") = "down",
        py::arg("budget") = 10000);

    m.def(
        "classify_foliation_json",
        [](const ComplexStore& store, const std::string& sink_spec, long samples, long budget,
           uint64_t seed) {
            SinkSpec sink = make_sink(store, parse_weight_spec(store, sink_spec), sink_spec);
            return foliation_to_json(classify_foliation(store, sink, samples, budget, seed))
                .dump();
        },
        py::arg("store"), py::arg("sink"), py::arg("samples") = 3, py::arg("budget") = 10000,
        py::arg("seed") = 12345);

    m.def("verify_green_json", [](const ComplexStore& store, int base) {
        return green_to_json(verify_green(store, base)).dump();
    });

    m.def("green_sequences", [](const ComplexStore& store, int base, size_t limit) {
        SinkSpec sink = make_sink(store, barycenter(store.cluster(base).vars).w);
        auto og = orient_from_flow(store, sink);
        std::vector<std::vector<VarId>> out;
        for (const auto& s : maximal_green_sequences(store, og, limit))
            out.push_back(s.mutated_vars);
        return out;
    }, py::arg("store"), py::arg("base") = 0, py::arg("limit") = 100);

    m.def("betti", [](const ComplexStore& store) { return betti(store).betti; });

    m.def("polygon_h1_json",
          [](const ComplexStore& store) { return polygons_to_json(polygon_h1(store)).dump(); });

    m.def(
        "duality_walk_ok",
        [](const std::vector<std::vector<long>>& b, int steps, uint64_t seed) {
            Seed s = root_seed(mat_from_py(b));
            std::mt19937_64 rng(seed);
            for (int t = 0; t < steps; ++t) {
                s = mutate_seed(s, (int)(rng() % s.n()));
                if (!check_duality(s)) return false;
            }
            return true;
        },
        py::arg("b_matrix"), py::arg("steps") = 200, py::arg("seed") = 1);
}

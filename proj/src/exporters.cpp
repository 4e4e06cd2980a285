#include "cfk/exporters.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <cstdio>
#include <sstream>

namespace cfk {

namespace {
long small_int(const Int& z) { return to_long(z); }

json point_to_json(const Point& p) {
    json j = json::object();
    for (const auto& [v, c] : p.w) j[std::to_string(v)] = to_string(c);
    return j;
}
} // namespace

std::string point_spec(const Point& p) {
    std::ostringstream os;
    os << "point:";
    bool first = true;
    for (const auto& [v, c] : p.w) {
        if (c == 0) continue;
        os << (first ? "" : ",") << v << "=" << to_string(c);
        first = false;
    }
    return os.str();
}

json complex_to_json(const ComplexStore& store) {
    json vars = json::array();
    for (size_t v = 0; v < store.variable_count(); ++v) {
        json g = json::array();
        for (const Int& z : store.g_vec((VarId)v)) g.push_back(small_int(z));
        vars.push_back({{"id", (long)v}, {"g", g}});
    }
    json clusters = json::array();
    for (size_t ci = 0; ci < store.cluster_count(); ++ci)
        clusters.push_back(store.cluster((int)ci).sorted_vars);
    return json{{"variables", vars}, {"clusters", clusters}, {"exhausted", store.exhausted()}};
}

json trace_to_json(const ComplexStore& store, const SinkSpec& sink, Sense sense,
                   const LeafTrace& t) {
    json segs = json::array();
    for (const auto& s : t.segments) {
        segs.push_back({{"cluster", store.cluster(s.cluster).sorted_vars},
                        {"entry", point_to_json(s.entry)},
                        {"exit", point_to_json(s.exit)}});
    }
    json j{{"sink", sink.label.empty() ? point_spec(Point{sink.support}) : sink.label},
           {"sense", sense == Sense::Down ? "down" : "up"},
           {"status", to_string(t.status)},
           {"segments", segs}};
    if (t.status == TraceStatus::CycleDetected) j["cycle_start"] = t.cycle_start;
    if (t.status == TraceStatus::BudgetExhausted) j["store_limited"] = t.store_limited;
    if (t.status == TraceStatus::NonGeneric) j["detail"] = t.detail;
    return j;
}

json foliation_to_json(const FoliationReport& rep) {
    json outcomes = json::object();
    for (const auto& [sense, hist] : rep.outcomes) {
        json h = json::object();
        for (const auto& [k, v] : hist) h[k] = v;
        outcomes[sense] = h;
    }
    return json{{"sink", rep.sink_label},
                {"samples_per_cell", rep.samples_per_cell},
                {"budget", rep.budget},
                {"outcomes", outcomes},
                {"classification", to_string(rep.classification)},
                {"traced_pairs", rep.traced_pairs},
                {"nongeneric_retries", rep.nongeneric_retries}};
}

json green_to_json(const GreenReport& rep) {
    json mm = json::array();
    for (auto [a, b] : rep.mismatched_arcs) mm.push_back({a, b});
    return json{{"equal", rep.equal},
                {"mismatched_arcs", mm},
                {"source", rep.source},
                {"sink", rep.sink},
                {"dag", rep.dag},
                {"unique_source", rep.unique_source},
                {"unique_sink", rep.unique_sink},
                {"base", rep.base},
                {"shifted_base", rep.shifted_base},
                {"pass", rep.pass()}};
}

json homology_to_json(const HomologyReport& rep) {
    json j{{"betti", rep.betti}, {"euler", rep.euler}};
    if (!rep.torsion.empty()) j["torsion"] = rep.torsion;
    return j;
}

json polygons_to_json(const PolygonReport& rep) {
    return json{{"h1_rank", rep.h1_rank},
                {"squares", rep.squares},
                {"pentagons", rep.pentagons},
                {"graph_cycle_rank", rep.graph_cycle_rank}};
}

json fan_to_json(const ComplexStore& store) {
    json cones = json::array();
    for (size_t ci = 0; ci < store.cluster_count(); ++ci) {
        json rays = json::array();
        for (VarId v : store.cluster((int)ci).sorted_vars) rays.push_back((long)v);
        cones.push_back(rays);
    }
    json rays = json::array();
    for (size_t v = 0; v < store.variable_count(); ++v) {
        json g = json::array();
        for (const Int& z : store.g_vec((VarId)v)) g.push_back(small_int(z));
        rays.push_back(g);
    }
    return json{{"rays", rays}, {"cones", cones}, {"complete", store.exhausted()}};
}

std::string exchange_graph_dot(const ComplexStore& store) {
    ExchangeGraph g = store.exchange_graph();
    std::ostringstream os;
    os << "graph exchange {\n";
    for (int i = 0; i < g.nodes; ++i) {
        os << "  c" << i << " [label=\"";
        const auto& sv = store.cluster(i).sorted_vars;
        for (size_t j = 0; j < sv.size(); ++j) os << (j ? "," : "") << sv[j];
        os << "\"];\n";
    }
    for (const auto& e : g.edges)
        os << "  c" << e.a << " -- c" << e.b << " [label=\"" << e.out_of_a << "\xE2\x86\x92"
           << e.into_a << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string oriented_graph_dot(const ComplexStore& store, const OrientedExchangeGraph& og) {
    std::ostringstream os;
    os << "digraph green {\n";
    for (int i = 0; i < og.nodes; ++i) {
        os << "  c" << i << " [label=\"";
        const auto& sv = store.cluster(i).sorted_vars;
        for (size_t j = 0; j < sv.size(); ++j) os << (j ? "," : "") << sv[j];
        os << "\"];\n";
    }
    for (const auto& a : og.arcs)
        os << "  c" << a.from << " -> c" << a.to << " [color=green, label=\"" << a.out_of_from
           << "\"];\n";
    os << "}\n";
    return os.str();
}

namespace {

struct XY {
    double x, y;
};

// fixed linear projection of g-space into the plane (ranks 1..3)
XY project_g(const std::vector<double>& g) {
    double x = 0, y = 0;
    if (g.size() >= 1) x += g[0];
    if (g.size() >= 2) y += g[1];
    if (g.size() >= 3) {
        x += -0.42 * g[2];
        y += -0.33 * g[2];
    }
    return {x, y};
}

XY project_point(const ComplexStore& store, const Point& p) {
    std::vector<double> acc;
    acc.assign(store.rank(), 0.0);
    for (const auto& [v, c] : p.w) {
        const auto& g = store.g_vec(v);
        double w = mpq_class(c).get_d();
        for (size_t t = 0; t < g.size(); ++t) acc[t] += w * g[t].get_d();
    }
    return project_g(acc);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string complex_svg(const ComplexStore& store, const std::vector<LeafTrace>& traces,
                        const SinkSpec* sink) {
    if (store.rank() > 3)
        throw std::invalid_argument("SVG export is supported for rank <= 3 only");
    // collect vertex positions
    std::vector<XY> pos(store.variable_count());
    double minx = 1e9, miny = 1e9, maxx = -1e9, maxy = -1e9;
    for (size_t v = 0; v < store.variable_count(); ++v) {
        std::vector<double> g;
        for (const Int& z : store.g_vec((VarId)v)) g.push_back(z.get_d());
        pos[v] = project_g(g);
        minx = std::min(minx, pos[v].x); maxx = std::max(maxx, pos[v].x);
        miny = std::min(miny, pos[v].y); maxy = std::max(maxy, pos[v].y);
    }
    double span = std::max({maxx - minx, maxy - miny, 1e-9});
    auto map = [&](XY p) {
        return XY{40 + (p.x - minx) / span * 520, 560 - (p.y - miny) / span * 520};
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
          "viewBox=\"0 0 600 600\">\n";
    // 1-skeleton: edges of the complex
    std::set<std::pair<VarId, VarId>> edges;
    for (size_t ci = 0; ci < store.cluster_count(); ++ci) {
        const auto& sv = store.cluster((int)ci).sorted_vars;
        for (size_t a = 0; a < sv.size(); ++a)
            for (size_t b = a + 1; b < sv.size(); ++b) edges.insert({sv[a], sv[b]});
    }
    for (auto [a, b] : edges) {
        XY pa = map(pos[a]), pb = map(pos[b]);
        os << "<line x1=\"" << fmt(pa.x) << "\" y1=\"" << fmt(pa.y) << "\" x2=\"" << fmt(pb.x)
           << "\" y2=\"" << fmt(pb.y) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    }
    for (size_t v = 0; v < pos.size(); ++v) {
        XY p = map(pos[v]);
        os << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
           << "\" r=\"3\" fill=\"#444444\"/>\n<text x=\"" << fmt(p.x + 5) << "\" y=\""
           << fmt(p.y - 5) << "\" font-size=\"10\">" << v << "</text>\n";
    }
    for (const auto& t : traces) {
        os << "<polyline fill=\"none\" stroke=\"#0077cc\" stroke-width=\"1.5\" points=\"";
        for (size_t s = 0; s < t.segments.size(); ++s) {
            XY p = map(project_point(store, t.segments[s].entry));
            os << fmt(p.x) << "," << fmt(p.y) << " ";
            if (s + 1 == t.segments.size()) {
                XY q = map(project_point(store, t.segments[s].exit));
                os << fmt(q.x) << "," << fmt(q.y);
            }
        }
        os << "\"/>\n";
    }
    if (sink) {
        XY s = map(project_point(store, Point{sink->support}));
        XY s1 = map(project_point(store, Point{sink->shifted}));
        os << "<circle cx=\"" << fmt(s.x) << "\" cy=\"" << fmt(s.y)
           << "\" r=\"5\" fill=\"green\"/>\n";
        os << "<circle cx=\"" << fmt(s1.x) << "\" cy=\"" << fmt(s1.y)
           << "\" r=\"5\" fill=\"red\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string fan_svg(const ComplexStore& store) {
    return complex_svg(store, {}, nullptr);
}

} // namespace cfk

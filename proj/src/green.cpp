#include "cfk/green.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace cfk {

OrientedExchangeGraph orient_from_flow(const ComplexStore& store, const SinkSpec& sink) {
    for (const auto& [v, c] : sink.support)
        if (c <= 0) throw NonGenericSinkError("sink weight must be positive");
    {
        std::vector<VarId> supp;
        for (const auto& [v, c] : sink.support) supp.push_back(v);
        std::sort(supp.begin(), supp.end());
        if ((int)supp.size() != store.rank() || !store.find_cluster(supp))
            throw NonGenericSinkError("sink must have full support in a cluster");
    }
    FlowField field(store, sink);
    OrientedExchangeGraph og;
    og.provenance = Provenance::Flow;
    og.nodes = (int)store.cluster_count();
    og.complete = store.exhausted();
    std::map<std::pair<int, int>, Arc> dedup;
    for (int ci = 0; ci < og.nodes; ++ci) {
        const BCoeffs& bc = field.b_coeffs(ci);
        const auto& vars = store.cluster(ci).vars;
        for (int j = 0; j < store.rank(); ++j) {
            auto nb = store.expand(ci, j);
            if (!nb) continue; // frontier arc on a partial store
            if (*nb >= og.nodes) continue;
            if (bc.b[j] == 0)
                throw NonGenericSinkError("vanishing b-coefficient: sink is not generic");
            Arc a = (bc.b[j] < 0) ? Arc{ci, *nb, vars[j]}
                                  : Arc{*nb, ci, VarId(-1)};
            auto key = std::minmax(ci, *nb);
            auto it = dedup.find({key.first, key.second});
            if (it == dedup.end()) {
                dedup.emplace(std::make_pair(key.first, key.second), a);
            } else if (it->second.from != a.from || it->second.to != a.to) {
                throw std::logic_error("inconsistent b-signs across a wall");
            } else if (it->second.out_of_from < 0 && a.out_of_from >= 0) {
                it->second.out_of_from = a.out_of_from;
            }
        }
    }
    for (auto& [k, a] : dedup) {
        if (a.out_of_from < 0) {
            // direction was recorded from the head side only; find the label
            const auto& nb = store.cluster(a.from).neighbors;
            for (const auto& [lv, to] : nb)
                if (to == a.to) a.out_of_from = lv;
        }
        og.arcs.push_back(a);
    }
    return og;
}

OrientedExchangeGraph orient_from_cvectors(const ComplexStore& store, int base_ci) {
    OrientedExchangeGraph og;
    og.provenance = Provenance::CVector;
    og.nodes = (int)store.cluster_count();
    og.complete = store.exhausted();
    const auto& base_vars = store.cluster(base_ci).vars;
    int n = store.rank();
    std::set<std::pair<int, int>> done;
    for (int ci = 0; ci < og.nodes; ++ci) {
        const auto& vars = store.cluster(ci).vars;
        // rows of M: relative index of each base variable in this cluster
        std::vector<std::vector<Int>> M;
        M.reserve(n);
        for (VarId x : base_vars) M.push_back(store.relative_index(ci, x));
        for (int alpha = 0; alpha < n; ++alpha) {
            auto nb = store.expand(ci, alpha);
            if (!nb || *nb >= og.nodes) continue;
            auto key = std::minmax(ci, *nb);
            if (done.count({key.first, key.second})) continue;
            // c-vector of vars[alpha] w.r.t. base[1] is (−M[i][alpha])_i
            bool has_pos = false, has_neg = false;
            for (int i = 0; i < n; ++i) {
                if (M[i][alpha] > 0) has_pos = true;
                if (M[i][alpha] < 0) has_neg = true;
            }
            if (has_pos && has_neg)
                throw std::runtime_error("mixed-sign c-vector: sign-coherence breach");
            if (!has_pos && !has_neg)
                throw std::runtime_error("zero c-vector");
            // green (c-vector ≥ 0, i.e. all M[.][alpha] ≤ 0): mutate out of ci
            Arc a = has_neg ? Arc{ci, *nb, vars[alpha]} : Arc{*nb, ci, VarId(-1)};
            if (a.out_of_from < 0) {
                for (const auto& [lv, to] : store.cluster(a.from).neighbors)
                    if (to == a.to) a.out_of_from = lv;
            }
            og.arcs.push_back(a);
            done.insert({key.first, key.second});
        }
    }
    return og;
}

namespace {
struct Degrees {
    std::vector<int> in, out;
};
Degrees degrees(const OrientedExchangeGraph& og) {
    Degrees d;
    d.in.assign(og.nodes, 0);
    d.out.assign(og.nodes, 0);
    for (const auto& a : og.arcs) { d.out[a.from]++; d.in[a.to]++; }
    return d;
}
bool is_dag(const OrientedExchangeGraph& og) {
    auto d = degrees(og);
    std::vector<std::vector<int>> adj(og.nodes);
    for (const auto& a : og.arcs) adj[a.from].push_back(a.to);
    std::vector<int> q;
    for (int i = 0; i < og.nodes; ++i)
        if (d.in[i] == 0) q.push_back(i);
    int seen = 0;
    auto indeg = d.in;
    while (!q.empty()) {
        int v = q.back();
        q.pop_back();
        ++seen;
        for (int w : adj[v])
            if (--indeg[w] == 0) q.push_back(w);
    }
    return seen == og.nodes;
}
} // namespace

GreenReport verify_green(const ComplexStore& store, int base_ci) {
    GreenReport r;
    r.base = base_ci;
    const auto& base_vars = store.cluster(base_ci).vars;
    Point bary = barycenter(base_vars);
    SinkSpec sink = make_sink(store, bary.w);
    auto flow = orient_from_flow(store, sink);
    auto cvec = orient_from_cvectors(store, base_ci);

    std::set<std::pair<int, int>> fa, ca;
    for (const auto& a : flow.arcs) fa.insert({a.from, a.to});
    for (const auto& a : cvec.arcs) ca.insert({a.from, a.to});
    r.equal = fa == ca;
    for (const auto& e : fa)
        if (!ca.count(e)) r.mismatched_arcs.push_back(e);
    for (const auto& e : ca)
        if (!fa.count(e)) r.mismatched_arcs.push_back(e);

    r.dag = is_dag(flow);
    auto d = degrees(flow);
    int sources = 0, sinks = 0;
    for (int i = 0; i < flow.nodes; ++i) {
        if (d.in[i] == 0) { sources++; r.source = i; }
        if (d.out[i] == 0) { sinks++; r.sink = i; }
    }
    r.unique_source = sources == 1;
    r.unique_sink = sinks == 1;
    std::vector<VarId> shifted;
    for (VarId v : base_vars) shifted.push_back(store.shift_var(v));
    auto sb = store.find_cluster(shifted);
    r.shifted_base = sb ? *sb : -1;
    r.sink_is_base = r.unique_sink && r.sink == base_ci;
    r.source_is_shifted_base = r.unique_source && sb && r.source == *sb;
    return r;
}

std::vector<GreenSequence> maximal_green_sequences(const ComplexStore& store,
                                                   const OrientedExchangeGraph& og, size_t limit) {
    if (!is_dag(og)) throw std::runtime_error("orientation is not a DAG");
    auto d = degrees(og);
    int source = -1, sink = -1;
    for (int i = 0; i < og.nodes; ++i) {
        if (d.in[i] == 0) {
            if (source >= 0) throw std::runtime_error("orientation has multiple sources");
            source = i;
        }
        if (d.out[i] == 0) {
            if (sink >= 0) throw std::runtime_error("orientation has multiple sinks");
            sink = i;
        }
    }
    std::vector<std::vector<Arc>> adj(og.nodes);
    for (const auto& a : og.arcs) adj[a.from].push_back(a);
    std::vector<GreenSequence> out;
    GreenSequence cur;
    cur.clusters.push_back(source);
    // depth-first path enumeration
    std::function<void(int)> dfs = [&](int v) {
        if (out.size() >= limit) return;
        if (v == sink) {
            out.push_back(cur);
            return;
        }
        for (const auto& a : adj[v]) {
            const auto& vars = store.cluster(v).vars;
            int pos = -1;
            for (size_t j = 0; j < vars.size(); ++j)
                if (vars[j] == a.out_of_from) pos = (int)j;
            cur.mutated_vars.push_back(a.out_of_from);
            cur.mutated_positions.push_back(pos);
            cur.clusters.push_back(a.to);
            dfs(a.to);
            cur.mutated_vars.pop_back();
            cur.mutated_positions.pop_back();
            cur.clusters.pop_back();
            if (out.size() >= limit) return;
        }
    };
    dfs(source);
    return out;
}

} // namespace cfk

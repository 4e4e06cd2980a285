#include "cfk/foliation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cfk {

std::string to_string(TraceStatus s) {
    switch (s) {
    case TraceStatus::ReachedSink: return "ReachedSink";
    case TraceStatus::ReachedSource: return "ReachedSource";
    case TraceStatus::CycleDetected: return "CycleDetected";
    case TraceStatus::BudgetExhausted: return "BudgetExhausted";
    case TraceStatus::NonGeneric: return "NonGeneric";
    }
    return "?";
}

std::string to_string(FoliationClass c) {
    switch (c) {
    case FoliationClass::Compact: return "Compact";
    case FoliationClass::SemiCompactEvidence: return "SemiCompactEvidence";
    case FoliationClass::Unresolved: return "Unresolved";
    case FoliationClass::CycleFound: return "CycleFound";
    }
    return "?";
}

namespace {

bool point_equals(const Point& p, const std::map<VarId, Rat>& target) {
    for (const auto& [v, c] : p.w) {
        auto it = target.find(v);
        if (c != 0 && (it == target.end() || it->second != c)) return false;
    }
    for (const auto& [v, c] : target) {
        auto it = p.w.find(v);
        if ((it == p.w.end() ? Rat(0) : it->second) != c) return false;
    }
    return true;
}

struct CrossKey {
    int cluster;
    VarId wall; // variable removed from the departed cluster
    std::vector<int> signs;
    bool operator<(const CrossKey& o) const {
        return std::tie(cluster, wall, signs) < std::tie(o.cluster, o.wall, o.signs);
    }
};

std::string face_description(const ComplexStore& store, int ci, const std::vector<Rat>& q) {
    const auto& vars = store.cluster(ci).vars;
    std::ostringstream os;
    os << "hit face {";
    bool first = true;
    for (size_t j = 0; j < q.size(); ++j)
        if (q[j] != 0) {
            os << (first ? "" : ",") << vars[j];
            first = false;
        }
    os << "} of cluster " << ci;
    return os.str();
}

// initial cluster choice per the supported evaluation cases
std::optional<int> initial_cluster(FlowField& field, const Point& p) {
    const auto& store = field.store();
    auto supp = p.support();
    if (auto top = store.find_cluster(supp)) return top;
    // prefer a cluster containing supp ∪ supp(X̂), then supp ∪ supp(X̂[1])
    for (const auto* side : {&field.sink().support, &field.sink().shifted}) {
        std::vector<VarId> u = supp;
        for (const auto& [v, c] : *side) u.push_back(v);
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        if (auto ci = store.containing_cluster(u)) return ci;
    }
    // codim-1 wall start: any containing cluster (side-hop resolves)
    if ((int)supp.size() == store.rank() - 1)
        return store.containing_cluster(supp);
    return std::nullopt;
}

} // namespace

LeafTrace trace(FlowField& field, const Point& start, Sense sense, long budget) {
    const auto& store = field.store();
    const int n = store.rank();
    LeafTrace out;
    validate_point(start);

    if (point_equals(start, field.sink().support)) {
        out.status = TraceStatus::ReachedSink;
        return out;
    }
    if (point_equals(start, field.sink().shifted)) {
        out.status = TraceStatus::ReachedSource;
        return out;
    }

    auto ci_opt = initial_cluster(field, start);
    if (!ci_opt)
        throw std::invalid_argument(
            "trace start must lie in a top cell, a codimension-1 wall, or the sink/source stars");
    int ci = *ci_opt;
    auto coords_opt = field.coords_in(ci, start);
    std::vector<Rat> p = *coords_opt;

    const auto& target = (sense == Sense::Down) ? field.sink().support : field.sink().shifted;
    std::map<CrossKey, int> first_seen_at;
    long crossings = 0;

    auto direction_at = [&](int c, const std::vector<Rat>& pt) {
        const BCoeffs& bc = field.b_coeffs(c);
        std::vector<Rat> d(n);
        for (int j = 0; j < n; ++j) {
            d[j] = bc.b[j] - bc.c_scalar * pt[j];
            if (sense == Sense::Up) d[j] = -d[j];
        }
        return d;
    };

    while (true) {
        std::vector<Rat> d = direction_at(ci, p);
        bool zero = std::all_of(d.begin(), d.end(), [](const Rat& x) { return x == 0; });
        if (zero) {
            Point here = field.point_from_coords(ci, p);
            if (point_equals(here, field.sink().support)) {
                out.status = TraceStatus::ReachedSink;
            } else if (point_equals(here, field.sink().shifted)) {
                out.status = TraceStatus::ReachedSource;
            } else {
                throw std::logic_error("zero flow away from the singularities");
            }
            return out;
        }

        // wrong-side detection: a zero coordinate strictly decreasing
        std::vector<int> wrong;
        for (int j = 0; j < n; ++j)
            if (p[j] == 0 && d[j] < 0) wrong.push_back(j);
        if (wrong.size() > 1) {
            out.status = TraceStatus::NonGeneric;
            out.detail = "ambiguous side at a codimension-2 start";
            return out;
        }
        if (wrong.size() == 1) {
            auto ni = store.expand(ci, wrong[0]);
            if (!ni) {
                out.status = TraceStatus::BudgetExhausted;
                out.store_limited = true;
                return out;
            }
            Point here = field.point_from_coords(ci, p);
            ci = *ni;
            p = *field.coords_in(ci, here);
            if (++crossings > budget) {
                out.status = TraceStatus::BudgetExhausted;
                return out;
            }
            continue;
        }

        // exit parameter: first coordinate to reach 0
        bool have_ts = false;
        Rat ts;
        for (int j = 0; j < n; ++j)
            if (d[j] < 0) {
                Rat t = -p[j] / d[j];
                if (!have_ts || t < ts) { ts = t; have_ts = true; }
            }
        if (!have_ts) throw std::logic_error("zero-sum direction without a decreasing coordinate");

        // arrival at the target singularity inside [0, ts]?
        if (auto tgt = field.coords_in(ci, Point{target})) {
            bool consistent = true;
            bool have_th = false;
            Rat th;
            for (int j = 0; j < n && consistent; ++j) {
                if (d[j] != 0) {
                    Rat t = ((*tgt)[j] - p[j]) / d[j];
                    if (!have_th) { th = t; have_th = true; }
                    else if (t != th) consistent = false;
                } else if (p[j] != (*tgt)[j]) {
                    consistent = false;
                }
            }
            if (consistent && have_th && th >= 0 && th <= ts) {
                std::vector<Rat> q(n);
                for (int j = 0; j < n; ++j) q[j] = p[j] + th * d[j];
                out.segments.push_back(
                    {ci, field.point_from_coords(ci, p), field.point_from_coords(ci, q)});
                out.status =
                    (sense == Sense::Down) ? TraceStatus::ReachedSink : TraceStatus::ReachedSource;
                return out;
            }
        }

        std::vector<Rat> q(n);
        for (int j = 0; j < n; ++j) q[j] = p[j] + ts * d[j];
        out.segments.push_back({ci, field.point_from_coords(ci, p), field.point_from_coords(ci, q)});

        std::vector<int> vanished;
        for (int j = 0; j < n; ++j)
            if (q[j] == 0 && d[j] < 0) vanished.push_back(j);
        if (vanished.size() != 1) {
            out.status = TraceStatus::NonGeneric;
            out.detail = face_description(store, ci, q);
            return out;
        }
        int j = vanished[0];
        VarId wall_var = store.cluster(ci).vars[j];

        // crossing consistency (departed cell): down needs b<0, up needs b>0
        const Rat& bj = field.b_coeffs(ci).b[j];
        if ((sense == Sense::Down && !(bj < 0)) || (sense == Sense::Up && !(bj > 0)))
            throw std::logic_error("crossing against the b-coefficient sign");

        auto ni = store.expand(ci, j);
        if (!ni) {
            out.status = TraceStatus::BudgetExhausted;
            out.store_limited = true;
            return out;
        }
        Point wall_point = field.point_from_coords(ci, q);
        ci = *ni;
        p = *field.coords_in(ci, wall_point);
        if (++crossings > budget) {
            out.status = TraceStatus::BudgetExhausted;
            return out;
        }

        CrossKey key{ci, wall_var, {}};
        std::vector<Rat> dn = direction_at(ci, p);
        key.signs.reserve(n);
        for (int t = 0; t < n; ++t) key.signs.push_back(sgn(dn[t].get_num()));
        auto [it, inserted] = first_seen_at.emplace(key, (int)out.segments.size());
        if (!inserted) {
            out.status = TraceStatus::CycleDetected;
            out.cycle_start = it->second;
            return out;
        }
    }
}

LeafTrace trace(const ComplexStore& store, const SinkSpec& sink, const Point& start, Sense sense,
                long budget) {
    FlowField field(store, sink);
    return trace(field, start, sense, budget);
}

Point random_interior_point(const ComplexStore& store, int ci, std::mt19937_64& rng) {
    const auto& vars = store.cluster(ci).vars;
    auto w = random_interior_weights((int)vars.size(), rng);
    Point p;
    for (size_t j = 0; j < vars.size(); ++j) p.w[vars[j]] = w[j];
    return p;
}

FoliationReport classify_foliation(const ComplexStore& store, const SinkSpec& sink, long samples,
                                   long budget, uint64_t rng_seed) {
    FlowField field(store, sink);
    FoliationReport rep;
    rep.sink_label = sink.label;
    rep.samples_per_cell = samples;
    rep.budget = budget;
    std::mt19937_64 rng(rng_seed);

    size_t snapshot = store.cluster_count();
    bool all_pairs_terminate = true;
    bool every_pair_half_terminates = true;
    bool some_pair_one_sided = false;
    bool cycle = false;

    for (size_t ci = 0; ci < snapshot; ++ci) {
        std::vector<Point> starts;
        starts.push_back(barycenter(store.cluster((int)ci).vars));
        for (long s = 0; s < samples; ++s) starts.push_back(random_interior_point(store, (int)ci, rng));
        for (Point st : starts) {
            TraceStatus res[2];
            for (Sense sense : {Sense::Down, Sense::Up}) {
                Point attempt = st;
                LeafTrace t = trace(field, attempt, sense, budget);
                int retries = 0;
                while (t.status == TraceStatus::NonGeneric && retries < 3) {
                    attempt = random_interior_point(store, (int)ci, rng);
                    t = trace(field, attempt, sense, budget);
                    ++retries;
                    ++rep.nongeneric_retries;
                }
                res[sense == Sense::Down ? 0 : 1] = t.status;
                rep.outcomes[sense == Sense::Down ? "down" : "up"][to_string(t.status)]++;
                if (t.status == TraceStatus::CycleDetected) cycle = true;
            }
            ++rep.traced_pairs;
            auto terminal = [](TraceStatus s) {
                return s == TraceStatus::ReachedSink || s == TraceStatus::ReachedSource;
            };
            bool okd = terminal(res[0]), oku = terminal(res[1]);
            if (!(okd && oku)) {
                all_pairs_terminate = false;
                if (okd || oku) some_pair_one_sided = true;
                else every_pair_half_terminates = false;
            }
        }
    }
    if (cycle) rep.classification = FoliationClass::CycleFound;
    else if (all_pairs_terminate) rep.classification = FoliationClass::Compact;
    else if (every_pair_half_terminates && some_pair_one_sided)
        rep.classification = FoliationClass::SemiCompactEvidence;
    else rep.classification = FoliationClass::Unresolved;
    return rep;
}

Point project_from_star(const Point& p, const std::vector<VarId>& cell) {
    Point out;
    Rat total = 0;
    for (const auto& [v, c] : p.w) {
        if (std::find(cell.begin(), cell.end(), v) != cell.end()) continue;
        out.w[v] = c;
        total += c;
    }
    if (total == 0) throw std::invalid_argument("projection of a point of the cell itself");
    for (auto& [v, c] : out.w) c /= total;
    return out;
}

TraceMapResult trace_map(const ComplexStore& store, VarId x, const Point& p, Sense sense,
                         long budget) {
    TraceMapResult res;
    VarId x1 = store.shift_var(x);
    VarId probe = (sense == Sense::Down) ? x : x1;
    auto in_target_star = [&](const Point& q) {
        auto supp = q.support();
        if (std::find(supp.begin(), supp.end(), probe) == supp.end()) supp.push_back(probe);
        std::sort(supp.begin(), supp.end());
        return store.is_cell(supp);
    };
    if (p.w.count(x) && p.w.at(x) == 1) throw std::invalid_argument("trace_map at x itself");
    if (p.w.count(x1) && p.w.at(x1) == 1) throw std::invalid_argument("trace_map at x[1] itself");

    if (in_target_star(p)) {
        res.ok = true;
        res.image = project_from_star(p, {probe});
        return res;
    }
    SinkSpec sink = make_sink(store, {{x, rat(1)}}, "vertex:" + std::to_string(x));
    FlowField field(store, sink);
    LeafTrace t = trace(field, p, sense, budget);
    Point singular{(sense == Sense::Down) ? sink.support : sink.shifted};
    for (const auto& seg : t.segments) {
        if (!(seg.exit == singular) && in_target_star(seg.exit)) {
            res.ok = true;
            res.image = project_from_star(seg.exit, {probe});
            return res;
        }
        if (seg.exit == singular && in_target_star(seg.entry)) {
            // the leaf ran straight into the singularity; its entry is in the star
            res.ok = true;
            res.image = project_from_star(seg.entry, {probe});
            return res;
        }
    }
    res.reason = "leaf did not reach the star within budget: status " + to_string(t.status);
    return res;
}

} // namespace cfk

#include "cfk/flow.hpp"

#include <algorithm>

namespace cfk {

std::vector<VarId> Point::support() const {
    std::vector<VarId> s;
    for (const auto& [v, wt] : w)
        if (wt != 0) s.push_back(v);
    return s;
}

bool Direction::is_zero() const {
    for (const auto& [v, x] : d)
        if (x != 0) return false;
    return true;
}

Rat Direction::sum() const {
    Rat s = 0;
    for (const auto& [v, x] : d) s += x;
    return s;
}

Point realize(const std::map<VarId, long>& multiset) {
    if (multiset.empty()) throw std::invalid_argument("realize: empty multiset");
    long total = 0;
    for (const auto& [v, d] : multiset) {
        if (d <= 0) throw std::invalid_argument("realize: nonpositive multiplicity");
        total += d;
    }
    Point p;
    for (const auto& [v, d] : multiset) p.w[v] = rat(d, total);
    return p;
}

Point barycenter(const std::vector<VarId>& cell) {
    if (cell.empty()) throw std::invalid_argument("barycenter of empty cell");
    Point p;
    for (VarId v : cell) p.w[v] = rat(1, (long)cell.size());
    return p;
}

void validate_point(const Point& p) {
    Rat s = 0;
    for (const auto& [v, wt] : p.w) {
        if (wt <= 0) throw std::invalid_argument("point weight must be positive");
        s += wt;
    }
    if (s != 1) throw std::invalid_argument("point weights must sum to 1");
}

SinkSpec make_sink(const ComplexStore& store, const std::map<VarId, Rat>& support,
                   std::string label) {
    SinkSpec s;
    s.support = support;
    s.label = std::move(label);
    Rat total = 0;
    for (const auto& [v, c] : support) {
        if (c <= 0) throw std::invalid_argument("sink weights must be positive");
        total += c;
        s.shifted[store.shift_var(v)] = c;
    }
    if (total != 1) throw std::invalid_argument("sink weights must sum to 1");
    std::vector<VarId> supp, shifted;
    for (const auto& [v, c] : s.support) supp.push_back(v);
    for (const auto& [v, c] : s.shifted) shifted.push_back(v);
    if (!store.is_cell(supp)) throw std::invalid_argument("sink support is not a cell");
    if (!store.is_cell(shifted)) throw std::invalid_argument("shifted sink support is not a cell");
    return s;
}

std::map<VarId, Rat> parse_weight_spec(const ComplexStore& store, const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("expected vertex:<id>, cell:<ids> or point:<id=p/q,...>");
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    std::map<VarId, Rat> w;
    auto check_var = [&](long id) {
        if (id < 0 || (size_t)id >= store.variable_count())
            throw std::invalid_argument("unknown variable id " + std::to_string(id));
        return (VarId)id;
    };
    if (kind == "vertex") {
        w[check_var(std::stol(rest))] = rat(1);
        return w;
    }
    std::vector<std::string> parts;
    std::string tok;
    for (char c : rest) {
        if (c == ',') { parts.push_back(tok); tok.clear(); }
        else tok.push_back(c);
    }
    if (!tok.empty()) parts.push_back(tok);
    if (parts.empty()) throw std::invalid_argument("empty spec: " + spec);
    if (kind == "cell") {
        for (const auto& p : parts) w[check_var(std::stol(p))] = rat(1, (long)parts.size());
        return w;
    }
    if (kind == "point") {
        Rat total = 0;
        for (const auto& p : parts) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("expected id=p/q in " + spec);
            VarId v = check_var(std::stol(p.substr(0, eq)));
            Rat c = parse_rat(p.substr(eq + 1));
            if (c <= 0) throw std::invalid_argument("weights must be positive");
            w[v] = c;
            total += c;
        }
        if (total != 1) throw std::invalid_argument("point weights must sum to 1");
        return w;
    }
    throw std::invalid_argument("unknown spec kind: " + kind);
}

EvolvingTriangle evolving_triangle(const ComplexStore& store, VarId x, int ci) {
    const auto coef = store.relative_index(ci, x);
    const auto& vars = store.cluster(ci).vars;
    EvolvingTriangle t;
    long wtot = 0, utot = 0;
    int wpos = -1, upos = -1;
    for (size_t j = 0; j < coef.size(); ++j) {
        if (coef[j] > 0) {
            t.w[vars[j]] = to_long(coef[j]);
            wtot += to_long(coef[j]);
            wpos = (int)j;
        } else if (coef[j] < 0) {
            t.u[vars[j]] = to_long(-coef[j]);
            utot += to_long(-coef[j]);
            upos = (int)j;
        }
    }
    if (t.u.empty()) {
        if (wtot != 1)
            throw std::logic_error("trivial-W triangle with non-unit coefficients");
        if (vars[wpos] != x)
            throw std::logic_error("trivial-W identification failed (index/shift bug)");
        t.kind = TriKind::TrivialW;
    } else if (t.w.empty()) {
        if (utot != 1)
            throw std::logic_error("trivial-U triangle with non-unit coefficients");
        // the cluster variable here must be x[1]; check via the inverse shift
        if (store.unshift_var(vars[upos]) != x)
            throw std::logic_error("trivial-U identification failed (index/shift bug)");
        t.kind = TriKind::TrivialU;
    } else {
        t.kind = TriKind::Nontrivial;
    }
    return t;
}

FlowField::FlowField(const ComplexStore& store, SinkSpec sink)
    : store_(store), sink_(std::move(sink)) {}

const BCoeffs& FlowField::b_coeffs(int ci) {
    auto it = cache_.find(ci);
    if (it != cache_.end()) return it->second;
    int n = store_.rank();
    const auto& vars = store_.cluster(ci).vars;
    BCoeffs out;
    out.b.assign(n, Rat(0));
    out.c_scalar = 0;
    for (const auto& [x, cx] : sink_.support) {
        EvolvingTriangle t = evolving_triangle(store_, x, ci);
        switch (t.kind) {
        case TriKind::TrivialW: {
            for (int j = 0; j < n; ++j)
                if (vars[j] == x) out.b[j] += cx;
            out.c_scalar += cx;
            break;
        }
        case TriKind::TrivialU: {
            VarId x1 = t.u.begin()->first;
            for (int j = 0; j < n; ++j)
                if (vars[j] == x1) out.b[j] -= cx;
            out.c_scalar -= cx;
            break;
        }
        case TriKind::Nontrivial: {
            long wtot = 0, utot = 0;
            for (const auto& [v, m] : t.w) wtot += m;
            for (const auto& [v, m] : t.u) utot += m;
            for (int j = 0; j < n; ++j) {
                auto wit = t.w.find(vars[j]);
                if (wit != t.w.end()) out.b[j] += cx * rat(wit->second, wtot);
                auto uit = t.u.find(vars[j]);
                if (uit != t.u.end()) out.b[j] -= cx * rat(uit->second, utot);
            }
            break;
        }
        }
    }
    return cache_.emplace(ci, std::move(out)).first->second;
}

Crossing FlowField::crossing_direction(int ci, VarId alpha) {
    const auto& vars = store_.cluster(ci).vars;
    int pos = -1;
    for (size_t j = 0; j < vars.size(); ++j)
        if (vars[j] == alpha) pos = (int)j;
    if (pos < 0) throw std::invalid_argument("alpha not in cluster");
    const Rat& b = b_coeffs(ci).b[pos];
    if (b < 0) return Crossing::OutOf;
    if (b > 0) return Crossing::Into;
    return Crossing::None;
}

std::optional<std::vector<Rat>> FlowField::coords_in(int ci, const Point& p) const {
    const auto& cl = store_.cluster(ci);
    std::vector<Rat> out(store_.rank(), Rat(0));
    for (const auto& [v, wt] : p.w) {
        if (wt == 0) continue;
        int pos = -1;
        for (size_t j = 0; j < cl.vars.size(); ++j)
            if (cl.vars[j] == v) pos = (int)j;
        if (pos < 0) return std::nullopt;
        out[pos] = wt;
    }
    return out;
}

Point FlowField::point_from_coords(int ci, const std::vector<Rat>& coords) const {
    const auto& vars = store_.cluster(ci).vars;
    Point p;
    for (size_t j = 0; j < coords.size(); ++j)
        if (coords[j] != 0) p.w[vars[j]] = coords[j];
    return p;
}

namespace {
bool union_is_cell(const ComplexStore& store, const std::vector<VarId>& a,
                   const std::map<VarId, Rat>& b) {
    std::vector<VarId> u = a;
    for (const auto& [v, c] : b) u.push_back(v);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return store.is_cell(u);
}
} // namespace

bool FlowField::in_star_of_sink(const std::vector<VarId>& cell_vars) const {
    return union_is_cell(store_, cell_vars, sink_.support);
}

bool FlowField::in_star_of_source(const std::vector<VarId>& cell_vars) const {
    return union_is_cell(store_, cell_vars, sink_.shifted);
}

Direction FlowField::flow_direction(const Point& p, Sense sense) {
    validate_point(p);
    auto supp = p.support();
    Direction dir;
    auto top = store_.find_cluster(supp);
    if (top) {
        const BCoeffs& bc = b_coeffs(*top);
        const auto& vars = store_.cluster(*top).vars;
        auto coords = coords_in(*top, p);
        for (size_t j = 0; j < vars.size(); ++j) {
            Rat v = bc.b[j] - bc.c_scalar * (*coords)[j];
            if (v != 0) dir.d[vars[j]] = v;
        }
    } else if (in_star_of_sink(supp)) {
        // radial: X̂ − p
        for (const auto& [v, c] : sink_.support) dir.d[v] += c;
        for (const auto& [v, c] : p.w) dir.d[v] -= c;
    } else if (in_star_of_source(supp)) {
        // radial: p − X̂[1]
        for (const auto& [v, c] : p.w) dir.d[v] += c;
        for (const auto& [v, c] : sink_.shifted) dir.d[v] -= c;
    } else {
        throw std::invalid_argument(
            "flow evaluation outside top cells and the sink/source stars is unsupported");
    }
    if (sense == Sense::Up)
        for (auto& [v, x] : dir.d) x = -x;
    for (auto it = dir.d.begin(); it != dir.d.end();)
        it = (it->second == 0) ? dir.d.erase(it) : std::next(it);
    return dir;
}

Direction flow_direction(const ComplexStore& store, const SinkSpec& sink, const Point& p,
                         Sense sense) {
    FlowField f(store, sink);
    return f.flow_direction(p, sense);
}

BCoeffs b_coeffs(const ComplexStore& store, const SinkSpec& sink, int ci) {
    FlowField f(store, sink);
    return f.b_coeffs(ci);
}

Crossing crossing_direction(const ComplexStore& store, const SinkSpec& sink, int ci, VarId alpha) {
    FlowField f(store, sink);
    return f.crossing_direction(ci, alpha);
}

} // namespace cfk

#include "cfk/store.hpp"

#include <algorithm>
#include <set>

namespace cfk {

ComplexStore ComplexStore::enumerate(const IntMat& b0, size_t max_clusters) {
    if (max_clusters < 1) throw std::invalid_argument("max_clusters must be >= 1");
    ComplexStore st;
    st.b0_ = b0;
    st.n_ = (int)b0.size();
    st.max_clusters_ = max_clusters;
    st.add_cluster(root_seed(b0));
    size_t qi = 0;
    bool truncated = false;
    while (qi < st.clusters_.size()) {
        for (int k = 0; k < st.n_; ++k)
            if (!st.expand((int)qi, k)) truncated = true;
        if (truncated) break;
        ++qi;
    }
    st.exhausted_ = !truncated && qi == st.clusters_.size();
    return st;
}

size_t ComplexStore::cluster_count() const {
    std::shared_lock lk(*mu_);
    return clusters_.size();
}

size_t ComplexStore::variable_count() const {
    std::shared_lock lk(*mu_);
    return g_vectors_.size();
}

void ComplexStore::set_max_clusters(size_t m) {
    std::unique_lock lk(*mu_);
    max_clusters_ = m;
}

const ClusterRec& ComplexStore::cluster(int ci) const {
    std::shared_lock lk(*mu_);
    return clusters_.at(ci);
}

const std::vector<Int>& ComplexStore::g_vec(VarId v) const {
    std::shared_lock lk(*mu_);
    return g_vectors_.at(v);
}

std::optional<VarId> ComplexStore::find_var(const std::vector<Int>& g) const {
    std::shared_lock lk(*mu_);
    auto it = var_index_.find(g);
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> ComplexStore::find_cluster(std::vector<VarId> sorted_vars) const {
    std::sort(sorted_vars.begin(), sorted_vars.end());
    std::shared_lock lk(*mu_);
    auto it = cluster_index_.find(sorted_vars);
    if (it == cluster_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> ComplexStore::clusters_containing(VarId v) const {
    std::shared_lock lk(*mu_);
    return var_clusters_.at(v);
}

std::optional<int> ComplexStore::containing_cluster(const std::vector<VarId>& cell) const {
    if (cell.empty()) return root();
    std::shared_lock lk(*mu_);
    for (int ci : var_clusters_.at(cell.front())) {
        const auto& sv = clusters_[ci].sorted_vars;
        bool ok = true;
        for (VarId v : cell)
            if (!std::binary_search(sv.begin(), sv.end(), v)) { ok = false; break; }
        if (ok) return ci;
    }
    return std::nullopt;
}

bool ComplexStore::is_cell(const std::vector<VarId>& vars) const {
    return containing_cluster(vars).has_value();
}

int ComplexStore::intern(const std::vector<Int>& g) const {
    auto it = var_index_.find(g);
    if (it != var_index_.end()) return it->second;
    VarId id = (VarId)g_vectors_.size();
    var_index_.emplace(g, id);
    g_vectors_.push_back(g);
    var_clusters_.emplace_back();
    return id;
}

int ComplexStore::add_cluster(Seed&& s) const {
    std::vector<VarId> vars(n_);
    for (int j = 0; j < n_; ++j) vars[j] = intern(g_vector(s, j));
    std::vector<VarId> key = vars;
    std::sort(key.begin(), key.end());
    auto it = cluster_index_.find(key);
    if (it != cluster_index_.end()) return it->second;
    int idx = (int)clusters_.size();
    ClusterRec rec;
    rec.vars = vars;
    rec.sorted_vars = key;
    rec.witness = std::move(s);
    clusters_.push_back(std::move(rec));
    cluster_index_.emplace(std::move(key), idx);
    for (VarId v : vars) var_clusters_[v].push_back(idx);
    return idx;
}

std::optional<int> ComplexStore::expand(int ci, int k) const {
    if (k < 0 || k >= n_) throw std::out_of_range("mutation index out of range");
    {
        std::shared_lock lk(*mu_);
        const auto& cl = clusters_.at(ci);
        auto it = cl.neighbors.find(cl.vars[k]);
        if (it != cl.neighbors.end()) return it->second;
    }
    std::unique_lock lk(*mu_);
    auto& cl = clusters_[ci];
    VarId leaving = cl.vars[k];
    auto it = cl.neighbors.find(leaving);
    if (it != cl.neighbors.end()) return it->second;
    Seed s2 = mutate_seed(cl.witness, k);
    // would this add anything new under a full store?
    std::vector<VarId> key;
    bool known_vars = true;
    for (int j = 0; j < n_; ++j) {
        auto vit = var_index_.find(g_vector(s2, j));
        if (vit == var_index_.end()) { known_vars = false; break; }
        key.push_back(vit->second);
    }
    bool known_cluster = false;
    if (known_vars) {
        std::sort(key.begin(), key.end());
        known_cluster = cluster_index_.count(key) > 0;
    }
    if (!known_cluster && clusters_.size() >= max_clusters_) return std::nullopt;
    std::vector<Int> entering_g = g_vector(s2, k);
    int ni = add_cluster(std::move(s2));
    if (ni == ci) throw std::logic_error("mutation returned the same cluster");
    VarId entering = var_index_.at(entering_g);
    clusters_[ci].neighbors[leaving] = ni;
    clusters_[ni].neighbors[entering] = ci;
    return ni;
}

std::optional<int> ComplexStore::expand_at(int ci, VarId leaving) const {
    int pos = -1;
    {
        std::shared_lock lk(*mu_);
        const auto& vars = clusters_.at(ci).vars;
        for (int j = 0; j < n_; ++j)
            if (vars[j] == leaving) { pos = j; break; }
    }
    if (pos < 0) throw std::invalid_argument("variable not in cluster");
    return expand(ci, pos);
}

std::vector<Int> ComplexStore::relative_index(int ci, VarId x) const {
    {
        std::shared_lock lk(*mu_);
        const auto& cl = clusters_.at(ci);
        auto it = cl.relindex_cache.find(x);
        if (it != cl.relindex_cache.end()) return it->second;
    }
    std::unique_lock lk(*mu_);
    auto& cl = clusters_.at(ci);
    auto it = cl.relindex_cache.find(x);
    if (it != cl.relindex_cache.end()) return it->second;
    std::vector<Int> coef = g_vectors_.at(x);
    IntMat b = b0_;
    for (int k : cl.witness.path) {
        coef = index_mutation_step(coef, b, k);
        b = mutate_b(b, k);
    }
    cl.relindex_cache.emplace(x, coef);
    return coef;
}

void ComplexStore::replay_shifts_upto(size_t count) const {
    // caller holds unique lock
    for (; shifts_replayed_ < count; ++shifts_replayed_) {
        auto& cl = clusters_[shifts_replayed_];
        if (cl.shift_replayed) continue;
        Seed s = shift_seed(b0_);
        for (int k : cl.witness.path) s = mutate_seed(s, k);
        for (int j = 0; j < n_; ++j) {
            auto it = var_index_.find(g_vector(s, j));
            if (it == var_index_.end()) continue; // replayed var outside the ball
            // column j of the replay is (j-th var of cl)[-1]
            unshift_.emplace(cl.vars[j], it->second);
            shift_.emplace(it->second, cl.vars[j]);
        }
        cl.shift_replayed = true;
    }
}

VarId ComplexStore::shift_var(VarId x) const {
    {
        std::shared_lock lk(*mu_);
        auto it = shift_.find(x);
        if (it != shift_.end()) return it->second;
    }
    std::unique_lock lk(*mu_);
    replay_shifts_upto(clusters_.size());
    auto it = shift_.find(x);
    if (it != shift_.end()) return it->second;
    throw PartialStoreError("shift of variable " + std::to_string(x) +
                            (exhausted_ ? " not found" : " not found in partial store"));
}

VarId ComplexStore::unshift_var(VarId x) const {
    {
        std::shared_lock lk(*mu_);
        auto it = unshift_.find(x);
        if (it != unshift_.end()) return it->second;
    }
    std::unique_lock lk(*mu_);
    replay_shifts_upto(clusters_.size());
    auto it = unshift_.find(x);
    if (it != unshift_.end()) return it->second;
    throw PartialStoreError("inverse shift of variable " + std::to_string(x) + " not found");
}

std::vector<std::vector<VarId>> ComplexStore::star(const std::vector<VarId>& cell) const {
    std::vector<VarId> c = cell;
    std::sort(c.begin(), c.end());
    std::set<std::vector<VarId>> faces;
    std::shared_lock lk(*mu_);
    std::vector<int> cls;
    if (c.empty()) {
        for (size_t i = 0; i < clusters_.size(); ++i) cls.push_back((int)i);
    } else {
        for (int ci : var_clusters_.at(c.front())) {
            const auto& sv = clusters_[ci].sorted_vars;
            bool ok = true;
            for (VarId v : c)
                if (!std::binary_search(sv.begin(), sv.end(), v)) { ok = false; break; }
            if (ok) cls.push_back(ci);
        }
    }
    for (int ci : cls) {
        const auto& sv = clusters_[ci].sorted_vars;
        std::vector<VarId> rest;
        for (VarId v : sv)
            if (!std::binary_search(c.begin(), c.end(), v)) rest.push_back(v);
        // all subsets of rest, each unioned with the cell
        size_t m = rest.size();
        for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
            std::vector<VarId> face = c;
            for (size_t t = 0; t < m; ++t)
                if (mask & (size_t(1) << t)) face.push_back(rest[t]);
            std::sort(face.begin(), face.end());
            faces.insert(std::move(face));
        }
    }
    return {faces.begin(), faces.end()};
}

SubComplex ComplexStore::link(const std::vector<VarId>& cell) const {
    std::vector<VarId> c = cell;
    std::sort(c.begin(), c.end());
    SubComplex out;
    out.complete = exhausted_;
    std::shared_lock lk(*mu_);
    std::set<std::vector<VarId>> facets;
    const std::vector<int>* idx = nullptr;
    std::vector<int> all;
    if (c.empty()) {
        for (size_t i = 0; i < clusters_.size(); ++i) all.push_back((int)i);
        idx = &all;
    } else {
        idx = &var_clusters_.at(c.front());
    }
    for (int ci : *idx) {
        const auto& sv = clusters_[ci].sorted_vars;
        bool ok = true;
        for (VarId v : c)
            if (!std::binary_search(sv.begin(), sv.end(), v)) { ok = false; break; }
        if (!ok) continue;
        std::vector<VarId> rest;
        for (VarId v : sv)
            if (!std::binary_search(c.begin(), c.end(), v)) rest.push_back(v);
        if (!rest.empty()) facets.insert(std::move(rest));
    }
    out.facets.assign(facets.begin(), facets.end());
    return out;
}

SubComplex ComplexStore::complex() const {
    SubComplex out;
    out.complete = exhausted_;
    std::shared_lock lk(*mu_);
    for (const auto& cl : clusters_) out.facets.push_back(cl.sorted_vars);
    return out;
}

ExchangeGraph ComplexStore::exchange_graph() const {
    ExchangeGraph g;
    std::shared_lock lk(*mu_);
    g.nodes = (int)clusters_.size();
    g.complete = exhausted_;
    for (int a = 0; a < g.nodes; ++a)
        for (const auto& [leaving, b] : clusters_[a].neighbors)
            if (a < b) {
                VarId into = -1;
                for (const auto& [lv, back] : clusters_[b].neighbors)
                    if (back == a) { into = lv; break; }
                g.edges.push_back({a, b, leaving, into});
            }
    return g;
}

} // namespace cfk

#include "cfk/topology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cfk {

ChainComplex build_chain_complex(const SubComplex& sc) {
    ChainComplex cc;
    if (sc.facets.empty()) return cc;
    size_t maxdim = 0;
    for (const auto& f : sc.facets) maxdim = std::max(maxdim, f.size());
    std::vector<std::set<std::vector<VarId>>> cells(maxdim); // index = dimension
    for (const auto& f : sc.facets) {
        // all nonempty subsets
        size_t m = f.size();
        for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
            std::vector<VarId> face;
            for (size_t t = 0; t < m; ++t)
                if (mask & (size_t(1) << t)) face.push_back(f[t]);
            cells[face.size() - 1].insert(std::move(face));
        }
    }
    cc.cells_by_dim.resize(maxdim);
    std::vector<std::map<std::vector<VarId>, int>> index(maxdim);
    for (size_t d = 0; d < maxdim; ++d) {
        for (const auto& c : cells[d]) {
            index[d].emplace(c, (int)cc.cells_by_dim[d].size());
            cc.cells_by_dim[d].push_back(c);
        }
    }
    cc.boundary.resize(maxdim);
    for (size_t d = 1; d < maxdim; ++d) {
        auto& B = cc.boundary[d];
        B.assign(cc.cells_by_dim[d - 1].size(),
                 std::vector<Int>(cc.cells_by_dim[d].size(), 0));
        for (size_t col = 0; col < cc.cells_by_dim[d].size(); ++col) {
            const auto& cell = cc.cells_by_dim[d][col];
            int sign = 1;
            for (size_t drop = 0; drop < cell.size(); ++drop) {
                std::vector<VarId> face;
                for (size_t t = 0; t < cell.size(); ++t)
                    if (t != drop) face.push_back(cell[t]);
                B[index[d - 1].at(face)][col] = sign;
                sign = -sign;
            }
        }
    }
    // boundary[0] is the augmentation (1 x #vertices of ones), used for reduced homology
    cc.boundary[0].assign(1, std::vector<Int>(cc.cells_by_dim[0].size(), 1));
    return cc;
}

long matrix_rank(const std::vector<std::vector<Int>>& m) {
    if (m.empty() || m[0].empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = Rat(m[i][j]);
    long rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[row][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m) {
    std::vector<Int> inv;
    if (m.empty() || m[0].empty()) return inv;
    size_t rows = m.size(), cols = m[0].size();
    size_t t = 0;
    while (t < rows && t < cols) {
        // locate a minimal nonzero entry in the remaining block
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (!found || cmp(abs(m[i][j]), abs(m[pi][pj])) < 0)) {
                    pi = i; pj = j; found = true;
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    Int q = m[i][t] / m[t][t];
                    for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                    if (m[i][t] != 0) { std::swap(m[t], m[i]); clean = false; }
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    Int q = m[t][j] / m[t][t];
                    for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                    if (m[t][j] != 0) {
                        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                        clean = false;
                    }
                }
        }
        ++t;
    }
    // divisibility chain
    for (size_t i = 0; i + 1 < t; ++i)
        for (size_t j = i + 1; j < t; ++j)
            if (m[j][j] % m[i][i] != 0) {
                Int a = m[i][i], b = m[j][j], g;
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                m[j][j] = a / g * b;
                m[i][i] = g;
            }
    for (size_t i = 0; i < t; ++i) inv.push_back(abs(m[i][i]));
    return inv;
}

HomologyReport betti(const SubComplex& sc, bool with_torsion) {
    HomologyReport rep;
    ChainComplex cc = build_chain_complex(sc);
    size_t dims = cc.cells_by_dim.size();
    if (dims == 0) return rep;
    std::vector<long> rank(dims + 1, 0);
    rank[0] = 1; // augmentation of a nonempty complex
    for (size_t d = 1; d < dims; ++d) rank[d] = matrix_rank(cc.boundary[d]);
    rank[dims] = 0;
    rep.betti.resize(dims);
    rep.euler = 0;
    for (size_t d = 0; d < dims; ++d) {
        long cells = (long)cc.cells_by_dim[d].size();
        rep.betti[d] = cells - rank[d] - rank[d + 1];
        rep.euler += (d % 2 == 0) ? cells : -cells;
    }
    if (with_torsion) {
        rep.torsion.resize(dims);
        for (size_t d = 1; d < dims; ++d) {
            // torsion of H_{d-1} = invariant factors > 1 of ∂_d
            for (const Int& f : smith_invariants(cc.boundary[d]))
                if (f > 1) rep.torsion[d - 1].push_back(f.get_str());
        }
    }
    return rep;
}

HomologyReport betti(const ComplexStore& store, bool with_torsion) {
    if (!store.exhausted())
        throw PartialStoreError("homology of a non-exhausted store is undefined");
    return betti(store.complex(), with_torsion);
}

SuspensionReport suspension_check(const ComplexStore& store, VarId x) {
    if (!store.exhausted())
        throw PartialStoreError("suspension check needs an exhausted store");
    SuspensionReport rep;
    rep.complex_betti = betti(store.complex()).betti;
    SubComplex lk = store.link({x});
    rep.link_betti = lk.facets.empty() ? std::vector<long>{} : betti(lk).betti;
    rep.holds = true;
    for (size_t k = 0; k < rep.complex_betti.size(); ++k) {
        long lhs = rep.complex_betti[k];
        long rhs;
        if (k == 0) {
            rhs = lk.facets.empty() ? 1 : 0; // reduced homology of the empty link in degree −1
        } else {
            rhs = (k - 1 < rep.link_betti.size()) ? rep.link_betti[k - 1] : 0;
        }
        if (lhs != rhs) rep.holds = false;
    }
    return rep;
}

PolygonReport polygon_h1(const ComplexStore& store) {
    if (!store.exhausted())
        throw PartialStoreError("polygon analysis needs an exhausted store");
    PolygonReport rep;
    ExchangeGraph g = store.exchange_graph();
    int V = g.nodes, E = (int)g.edges.size();
    // connectivity (BFS over the exchange graph)
    std::vector<std::vector<int>> adj(V);
    std::map<std::pair<int, int>, int> edge_id;
    for (int e = 0; e < E; ++e) {
        adj[g.edges[e].a].push_back(g.edges[e].b);
        adj[g.edges[e].b].push_back(g.edges[e].a);
        edge_id[{g.edges[e].a, g.edges[e].b}] = e;
        edge_id[{g.edges[e].b, g.edges[e].a}] = e;
    }
    std::vector<char> vis(V, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int seen = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!vis[w]) { vis[w] = 1; ++seen; stack.push_back(w); }
    }
    if (seen != V) throw std::runtime_error("exchange graph is disconnected");
    rep.graph_cycle_rank = E - V + 1;

    // codimension-2 cells: (n−2)-subsets of cluster variable sets
    int n = store.rank();
    std::map<std::vector<VarId>, std::vector<int>> codim2;
    for (int ci = 0; ci < V; ++ci) {
        const auto& sv = store.cluster(ci).sorted_vars;
        if (n < 2) break;
        // all (n−2)-subsets = drop two positions
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::vector<VarId> cell;
                for (int t = 0; t < n; ++t)
                    if (t != a && t != b) cell.push_back(sv[t]);
                codim2[cell].push_back(ci);
            }
    }
    std::vector<std::vector<Int>> d2; // rows = edges, one column per face
    for (auto& [cell, cls] : codim2) {
        size_t m = cls.size();
        if (m != 4 && m != 5) continue;
        // walk the cycle: each cluster adjacent to exactly two others here
        std::set<int> in_set(cls.begin(), cls.end());
        std::map<int, std::vector<int>> local;
        bool good = true;
        for (int ci : cls) {
            for (int w : adj[ci])
                if (in_set.count(w)) local[ci].push_back(w);
            if (local[ci].size() != 2) { good = false; break; }
        }
        if (!good) continue;
        std::vector<int> cycle{cls[0]};
        int prev = -1, cur = cls[0];
        while (cycle.size() < m) {
            int nxt = (local[cur][0] == prev) ? local[cur][1] : local[cur][0];
            cycle.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        // must close up
        if (std::find(local[cur].begin(), local[cur].end(), cycle[0]) == local[cur].end()) continue;
        if (m == 4) rep.squares++;
        else rep.pentagons++;
        std::vector<Int> col(E, 0);
        for (size_t t = 0; t < m; ++t) {
            int a = cycle[t], b = cycle[(t + 1) % m];
            int e = edge_id.at({a, b});
            col[e] += (a < b) ? 1 : -1; // edge oriented low→high
        }
        d2.push_back(std::move(col));
        rep.faces.push_back(cycle);
    }
    // transpose: rank of the face-boundary matrix
    long rank2 = 0;
    if (!d2.empty()) {
        std::vector<std::vector<Int>> mt(E, std::vector<Int>(d2.size(), 0));
        for (size_t c = 0; c < d2.size(); ++c)
            for (int e = 0; e < E; ++e) mt[e][c] = d2[c][e];
        rank2 = matrix_rank(mt);
    }
    rep.h1_rank = rep.graph_cycle_rank - rank2;
    return rep;
}

} // namespace cfk

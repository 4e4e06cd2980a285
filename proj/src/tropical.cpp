#include "cfk/tropical.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cfk {

IntMat identity_mat(int n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat neg_identity_mat(int n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = -1;
    return m;
}

bool is_skew_symmetric(const IntMat& b) {
    int n = (int)b.size();
    for (int i = 0; i < n; ++i) {
        if ((int)b[i].size() != n) return false;
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i]) return false;
    }
    return true;
}

Seed root_seed(const IntMat& b0) {
    if (!is_skew_symmetric(b0)) throw std::invalid_argument("B matrix is not skew-symmetric");
    return Seed{b0, identity_mat((int)b0.size()), identity_mat((int)b0.size()), {}};
}

Seed shift_seed(const IntMat& b0) {
    if (!is_skew_symmetric(b0)) throw std::invalid_argument("B matrix is not skew-symmetric");
    return Seed{b0, neg_identity_mat((int)b0.size()), neg_identity_mat((int)b0.size()), {}};
}

IntMat mutate_b(const IntMat& b, int k) {
    int n = (int)b.size();
    if (k < 0 || k >= n) throw std::out_of_range("mutation index out of range");
    IntMat r(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                r[i][j] = -b[i][j];
            } else {
                Int pos = (b[i][k] > 0 ? b[i][k] : Int(0)) * (b[k][j] > 0 ? b[k][j] : Int(0));
                Int neg = (b[i][k] < 0 ? -b[i][k] : Int(0)) * (b[k][j] < 0 ? -b[k][j] : Int(0));
                r[i][j] = b[i][j] + pos - neg;
            }
        }
    return r;
}

namespace {
// common sign of column k; 0 means mixed or zero column
int column_sign(const IntMat& m, int k) {
    int s = 0;
    for (const auto& row : m) {
        int v = sgn(row[k]);
        if (v == 0) continue;
        if (s == 0) s = v;
        else if (s != v) return 0;
    }
    return s;
}
} // namespace

Seed mutate_seed(const Seed& s, int k) {
    int n = s.n();
    if (k < 0 || k >= n) throw std::out_of_range("mutation index out of range");
    int eps = column_sign(s.c, k);
    if (eps == 0) throw std::runtime_error("c-column " + std::to_string(k) +
                                           " is zero or mixed-sign: invariant breach");
    Seed r;
    r.b = mutate_b(s.b, k);
    r.g = s.g;
    r.c = s.c;
    r.path = s.path;
    r.path.push_back(k);
    // m_j = [eps * b_{kj}]_+ updates both matrices, keeping g·cᵗ = I
    std::vector<Int> mult(n, 0);
    for (int j = 0; j < n; ++j)
        if (j != k) {
            Int v = eps * s.b[k][j];
            if (v > 0) mult[j] = v;
        }
    for (int i = 0; i < n; ++i) {
        r.c[i][k] = -s.c[i][k];
        Int acc = -s.g[i][k];
        for (int j = 0; j < n; ++j)
            if (mult[j] != 0) {
                r.c[i][j] = s.c[i][j] + mult[j] * s.c[i][k];
                acc += mult[j] * s.g[i][j];
            }
        r.g[i][k] = acc;
    }
    for (int j = 0; j < n; ++j)
        if (column_sign(r.c, j) == 0)
            throw std::runtime_error("sign-coherence lost after mutation: incorrect recurrence");
    return r;
}

std::vector<Int> g_vector(const Seed& s, int j) {
    int n = s.n();
    if (j < 0 || j >= n) throw std::out_of_range("column index out of range");
    std::vector<Int> v(n);
    for (int i = 0; i < n; ++i) v[i] = s.g[i][j];
    return v;
}

int c_sign(const Seed& s, int j) {
    if (j < 0 || j >= s.n()) throw std::out_of_range("column index out of range");
    int sg = column_sign(s.c, j);
    if (sg == 0) throw std::runtime_error("c-column " + std::to_string(j) +
                                          " is zero or mixed-sign: invariant breach");
    return sg;
}

bool check_duality(const Seed& s) {
    int n = s.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int acc = 0;
            for (int l = 0; l < n; ++l) acc += s.g[i][l] * s.c[j][l];
            if (acc != (i == j ? 1 : 0)) return false;
        }
    for (int j = 0; j < n; ++j)
        if (column_sign(s.c, j) == 0) return false;
    return true;
}

std::vector<Int> index_mutation_step(const std::vector<Int>& coef, const IntMat& b, int k) {
    int n = (int)coef.size();
    std::vector<Int> out = coef;
    int s = sgn(coef[k]);
    out[k] = -coef[k];
    if (s != 0)
        for (int j = 0; j < n; ++j)
            if (j != k) {
                Int v = s * b[j][k];
                if (v > 0) out[j] = coef[j] + v * coef[k];
            }
    return out;
}

namespace {
IntMat from_arrows(int n, const std::vector<std::pair<int, int>>& arrows) {
    IntMat b(n, std::vector<Int>(n, 0));
    for (auto [i, j] : arrows) { b[i][j] += 1; b[j][i] -= 1; }
    return b;
}
} // namespace

IntMat preset_b_matrix(const std::string& name) {
    if (name == "A1") return IntMat{{Int(0)}};
    if (name == "A2") return from_arrows(2, {{0, 1}});
    if (name == "A3") return from_arrows(3, {{1, 0}, {2, 0}}); // bivalent sink at 0
    if (name == "D4") return from_arrows(4, {{1, 0}, {2, 0}, {3, 0}}); // trivalent sink at 0
    if (name.rfind("Atilde:", 0) == 0) {
        auto rest = name.substr(7);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("expected Atilde:p,q");
        int p = std::stoi(rest.substr(0, comma));
        int q = std::stoi(rest.substr(comma + 1));
        if (p < 1 || q < 1) throw std::invalid_argument("Atilde:p,q needs p,q >= 1");
        int n = p + q;
        std::vector<std::pair<int, int>> arrows;
        // cycle v0..v_{n-1}: first q edges with the traversal, last p against
        for (int i = 0; i < n; ++i) {
            int a = i, bb = (i + 1) % n;
            if (i < q) arrows.push_back({a, bb});
            else arrows.push_back({bb, a});
        }
        return from_arrows(n, arrows);
    }
    throw std::invalid_argument("unknown preset: " + name);
}

IntMat read_b_matrix(std::istream& in) {
    int n;
    if (!(in >> n) || n < 1) throw std::runtime_error("bad B-matrix header");
    IntMat b(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("truncated B-matrix");
            b[i][j] = Int(tok);
        }
    if (!is_skew_symmetric(b)) throw std::runtime_error("B matrix is not skew-symmetric");
    return b;
}

void write_b_matrix(std::ostream& out, const IntMat& b) {
    out << b.size() << "\n";
    for (const auto& row : b) {
        for (size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << row[j].get_str();
        out << "\n";
    }
}

IntMat load_quiver(const std::string& spec) {
    try {
        return preset_b_matrix(spec);
    } catch (const std::invalid_argument&) {
        std::ifstream f(spec);
        if (!f) throw std::runtime_error("not a preset and not a readable file: " + spec);
        return read_b_matrix(f);
    }
}

bool is_acyclic_quiver(const IntMat& b) {
    int n = (int)b.size();
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] > 0) indeg[j]++;
    std::vector<int> q;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) q.push_back(i);
    int done = 0;
    while (!q.empty()) {
        int v = q.back();
        q.pop_back();
        ++done;
        for (int j = 0; j < n; ++j)
            if (b[v][j] > 0 && --indeg[j] == 0) q.push_back(j);
    }
    return done == n;
}

} // namespace cfk

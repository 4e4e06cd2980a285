#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cfk/arith.hpp"

namespace cfk {

/** Square integer matrix, row-major. */
using IntMat = std::vector<std::vector<Int>>;

IntMat identity_mat(int n);
IntMat neg_identity_mat(int n);
bool is_skew_symmetric(const IntMat& b);

/**
 * A seed: exchange matrix plus the G- and C-matrices of the current cluster
 * relative to the fixed initial one (columns = g-/c-vectors), and the
 * mutation path from the root.  Invariants: g·cᵗ = I, every c-column
 * sign-coherent and nonzero, det(g) = ±1.
 */
struct Seed {
    IntMat b, g, c;
    std::vector<int> path;
    int n() const { return (int)b.size(); }
};

Seed root_seed(const IntMat& b0);
/** Seed of the once-negatively-shifted initial cluster: g = c = −I. */
Seed shift_seed(const IntMat& b0);

/** Standard exchange-matrix mutation at k.  Involution; preserves skewness. */
IntMat mutate_b(const IntMat& b, int k);

/**
 * Seed mutation at k maintaining tropical duality and sign-coherence.
 * ε = common sign of c-column k; multiplier m_j = [ε·b[k][j]]₊ drives both
 * the C-column and G-column updates (so G·Cᵗ = I is preserved exactly).
 * Throws if the pre-mutation c-column has mixed signs.
 */
Seed mutate_seed(const Seed& s, int k);

/** Column j of s.g (g-vector of the j-th current variable w.r.t. the root). */
std::vector<Int> g_vector(const Seed& s, int j);

/** +1 if c-column j is ≥ 0 (green), −1 if ≤ 0 (red); throws on mixed signs. */
int c_sign(const Seed& s, int j);

/** True iff g·cᵗ = I exactly and every c-column is sign-coherent nonzero. */
bool check_duality(const Seed& s);

/**
 * One tropical step of a relative-index vector under mutation of the
 * reference cluster at k: coef'_k = −coef_k, coef'_j += [sgn(coef_k)·b[j][k]]₊·coef_k.
 * b is the reference seed's exchange matrix before the mutation.
 */
std::vector<Int> index_mutation_step(const std::vector<Int>& coef, const IntMat& b, int k);

/** Named presets: A1, A2, A3, D4, Atilde:p,q. */
IntMat preset_b_matrix(const std::string& name);

/** Text format: first line n, then n rows of n integers. */
IntMat read_b_matrix(std::istream& in);
void write_b_matrix(std::ostream& out, const IntMat& b);

/** Preset name or path to a B-matrix file. */
IntMat load_quiver(const std::string& spec);

bool is_acyclic_quiver(const IntMat& b);

} // namespace cfk

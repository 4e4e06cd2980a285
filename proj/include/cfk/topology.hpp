#pragma once

#include "cfk/store.hpp"

namespace cfk {

/**
 * Simplicial chains of a finite complex given by facets.  Cells are sorted
 * vertex tuples; boundary signs come from position parity, so results do
 * not depend on input order.  ∂∘∂ = 0 exactly.
 */
struct ChainComplex {
    std::vector<std::vector<std::vector<VarId>>> cells_by_dim;
    // boundary[k]: rows = (k−1)-cells, cols = k-cells (dense, exact)
    std::vector<std::vector<std::vector<Int>>> boundary;
};

ChainComplex build_chain_complex(const SubComplex& sc);

/** Exact rank over the rationals (fraction-free elimination). */
long matrix_rank(const std::vector<std::vector<Int>>& m);

/** Nontrivial invariant factors of an integer matrix (Smith normal form). */
std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m);

struct HomologyReport {
    std::vector<long> betti; // reduced Betti numbers b̃_0 .. b̃_{dim}
    long euler = 0;          // unreduced Euler characteristic
    std::vector<std::vector<std::string>> torsion; // per dimension, if requested
};

/** Reduced rational Betti numbers; torsion via Smith form when asked. */
HomologyReport betti(const SubComplex& sc, bool with_torsion = false);
HomologyReport betti(const ComplexStore& store, bool with_torsion = false);

struct SuspensionReport {
    std::vector<long> complex_betti;
    std::vector<long> link_betti;
    bool holds = false; // b̃_k(complex) == b̃_{k−1}(link) for all k
};

SuspensionReport suspension_check(const ComplexStore& store, VarId x);

struct PolygonReport {
    long h1_rank = 0;
    long squares = 0, pentagons = 0;
    long graph_cycle_rank = 0;
    std::vector<std::vector<int>> faces; // vertex cycles (cluster indices)
};

/**
 * Glue the squares and pentagons of the exchange graph (the closed 4/5-cycles
 * of clusters around a codimension-2 cell) and report rank H1 of the result.
 * Requires an exhausted store.
 */
PolygonReport polygon_h1(const ComplexStore& store);

} // namespace cfk

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfk/exporters.hpp"
#include "cfk/topology.hpp"

using namespace cfk;

namespace {
IntMat block_diag(const IntMat& a, const IntMat& b) {
    int n = (int)a.size(), m = (int)b.size();
    IntMat r(n + m, std::vector<Int>(n + m, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
    return r;
}
} // namespace

TEST_CASE("boundary of boundary vanishes") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("D4"), 100000);
    ChainComplex cc = build_chain_complex(st.complex());
    for (size_t d = 2; d < cc.boundary.size(); ++d) {
        const auto& A = cc.boundary[d - 1];
        const auto& B = cc.boundary[d];
        for (size_t i = 0; i < A.size(); ++i)
            for (size_t c = 0; c < B[0].size(); ++c) {
                Int acc = 0;
                for (size_t k = 0; k < B.size(); ++k) acc += A[i][k] * B[k][c];
                REQUIRE(acc == 0);
            }
    }
}

TEST_CASE("sphere Betti numbers of the finite presets") {
    struct Row { const char* name; std::vector<long> betti; };
    for (Row row : {Row{"A1", {1}},
                    Row{"A2", {0, 1}},
                    Row{"A3", {0, 0, 1}},
                    Row{"D4", {0, 0, 0, 1}}}) {
        ComplexStore st = ComplexStore::enumerate(preset_b_matrix(row.name), 100000);
        auto rep = betti(st);
        CHECK(rep.betti == row.betti);
    }
}

TEST_CASE("join multiplicativity: A1 * A2 is a 2-sphere") {
    IntMat j = block_diag(preset_b_matrix("A1"), preset_b_matrix("A2"));
    ComplexStore st = ComplexStore::enumerate(j, 1000);
    auto rep = betti(st);
    CHECK(rep.betti == std::vector<long>{0, 0, 1}); // S^0 * S^1 = S^2
}

TEST_CASE("Euler characteristic equals the alternating Betti sum") {
    for (const char* name : {"A2", "A3", "D4"}) {
        ComplexStore st = ComplexStore::enumerate(preset_b_matrix(name), 100000);
        auto rep = betti(st);
        long chi_from_betti = 1; // the reduced/unreduced offset
        for (size_t k = 0; k < rep.betti.size(); ++k)
            chi_from_betti += (k % 2 == 0 ? 1 : -1) * rep.betti[k];
        CHECK(rep.euler == chi_from_betti);
    }
}

TEST_CASE("torsion is trivial here, and reported as such") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    auto rep = betti(st, true);
    for (const auto& dim : rep.torsion) CHECK(dim.empty());
}

TEST_CASE("suspension relation between the complex and vertex links") {
    for (const char* name : {"A2", "A3", "D4"}) {
        ComplexStore st = ComplexStore::enumerate(preset_b_matrix(name), 100000);
        for (size_t v = 0; v < st.variable_count(); ++v) {
            auto rep = suspension_check(st, (VarId)v);
            CHECK(rep.holds);
        }
    }
}

TEST_CASE("A3 vertex links are circles") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    for (size_t v = 0; v < st.variable_count(); ++v) {
        auto rep = betti(st.link({(VarId)v}));
        CHECK(rep.betti == std::vector<long>{0, 1});
    }
}

TEST_CASE("homology refuses partial stores") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("Atilde:1,2"), 60);
    CHECK_THROWS_AS(betti(st), PartialStoreError);
    CHECK_THROWS_AS(polygon_h1(st), PartialStoreError);
}

TEST_CASE("squares and pentagons kill H1") {
    IntMat a1a1 = block_diag(preset_b_matrix("A1"), preset_b_matrix("A1"));
    ComplexStore sq = ComplexStore::enumerate(a1a1, 100);
    auto r1 = polygon_h1(sq);
    CHECK(r1.squares == 1);
    CHECK(r1.pentagons == 0);
    CHECK(r1.h1_rank == 0);

    ComplexStore a2 = ComplexStore::enumerate(preset_b_matrix("A2"), 100);
    auto r2 = polygon_h1(a2);
    CHECK(r2.squares == 0);
    CHECK(r2.pentagons == 1);
    CHECK(r2.h1_rank == 0);

    ComplexStore a3 = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    auto r3 = polygon_h1(a3);
    CHECK(r3.squares == 3);   // associahedron facets
    CHECK(r3.pentagons == 6);
    CHECK(r3.h1_rank == 0);

    ComplexStore d4 = ComplexStore::enumerate(preset_b_matrix("D4"), 100000);
    CHECK(polygon_h1(d4).h1_rank == 0);
}

TEST_CASE("homology JSON schema") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A2"), 100);
    json j = homology_to_json(betti(st));
    CHECK(j["betti"] == json::array({0, 1}));
    CHECK(j["euler"] == 0);
    json p = polygons_to_json(polygon_h1(st));
    CHECK(p["h1_rank"] == 0);
    CHECK(p["pentagons"] == 1);
}

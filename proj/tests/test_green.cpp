#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cfk/exporters.hpp"
#include "cfk/green.hpp"

using namespace cfk;

TEST_CASE("A2 pentagon orientation: unique source and sink, green sequences 2 and 3") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A2"), 100);
    auto rep = verify_green(st, st.root());
    CHECK(rep.pass());
    SinkSpec sink = make_sink(st, barycenter(st.cluster(st.root()).vars).w);
    auto og = orient_from_flow(st, sink);
    auto seqs = maximal_green_sequences(st, og, 100);
    REQUIRE(seqs.size() == 2);
    std::multiset<size_t> lens{seqs[0].mutated_vars.size(), seqs[1].mutated_vars.size()};
    CHECK(lens == std::multiset<size_t>{2, 3});
    for (const auto& s : seqs) {
        CHECK(s.clusters.front() == rep.source);
        CHECK(s.clusters.back() == st.root());
    }
}

TEST_CASE("A1: the single green sequence has length 1") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A1"), 10);
    auto og = orient_from_flow(st, make_sink(st, {{0, rat(1)}}));
    auto seqs = maximal_green_sequences(st, og, 10);
    REQUIRE(seqs.size() == 1);
    CHECK(seqs[0].mutated_vars.size() == 1);
}

TEST_CASE("A1xA1: oriented square, flow equals c-vectors") {
    IntMat b(2, std::vector<Int>(2, 0)); // two disjoint A1 factors
    ComplexStore st = ComplexStore::enumerate(b, 100);
    REQUIRE(st.cluster_count() == 4);
    auto rep = verify_green(st, st.root());
    CHECK(rep.pass());
}

TEST_CASE("A3: flow orientation equals c-vector orientation for every base") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    for (size_t base = 0; base < st.cluster_count(); ++base) {
        auto rep = verify_green(st, (int)base);
        CHECK(rep.equal);
        CHECK(rep.dag);
        CHECK(rep.unique_source);
        CHECK(rep.unique_sink);
        CHECK(rep.sink_is_base);
        CHECK(rep.source_is_shifted_base);
    }
}

TEST_CASE("orientation is invariant inside the open cell of the sink") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    std::mt19937_64 rng(41);
    auto arcs_of = [&](const SinkSpec& sink) {
        auto og = orient_from_flow(st, sink);
        std::set<std::pair<int, int>> a;
        for (const auto& arc : og.arcs) a.insert({arc.from, arc.to});
        return a;
    };
    const auto& vars = st.cluster(5).vars;
    auto reference = arcs_of(make_sink(st, barycenter(vars).w));
    for (int rep = 0; rep < 3; ++rep) {
        auto w = random_interior_weights((int)vars.size(), rng);
        std::map<VarId, Rat> wm;
        for (size_t j = 0; j < vars.size(); ++j) wm[vars[j]] = w[j];
        CHECK(arcs_of(make_sink(st, wm)) == reference);
    }
}

TEST_CASE("non-generic sinks are rejected") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    // a vertex sink has vanishing b-coefficients somewhere
    CHECK_THROWS_AS(orient_from_flow(st, make_sink(st, {{0, rat(1)}})), NonGenericSinkError);
}

TEST_CASE("green DOT export") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A2"), 100);
    auto og = orient_from_flow(st, make_sink(st, barycenter(st.cluster(0).vars).w));
    std::string dot = oriented_graph_dot(st, og);
    CHECK(dot.find("digraph green") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
    CHECK(dot.find("color=green") != std::string::npos);
}

TEST_CASE("green JSON report schema") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A2"), 100);
    auto rep = verify_green(st, 0);
    json j = green_to_json(rep);
    CHECK(j["equal"] == true);
    CHECK(j["mismatched_arcs"].empty());
    CHECK(j.contains("source"));
    CHECK(j.contains("sink"));
}

TEST_CASE("A3 green sequences run from base[1] to base") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("A3"), 1000);
    int base = 4;
    SinkSpec sink = make_sink(st, barycenter(st.cluster(base).vars).w);
    auto og = orient_from_flow(st, sink);
    auto seqs = maximal_green_sequences(st, og, 25);
    REQUIRE(!seqs.empty());
    std::vector<VarId> sh;
    for (VarId v : st.cluster(base).vars) sh.push_back(st.shift_var(v));
    auto base1 = st.find_cluster(sh);
    REQUIRE(base1.has_value());
    for (const auto& s : seqs) {
        CHECK(s.clusters.front() == *base1);
        CHECK(s.clusters.back() == base);
        CHECK(s.mutated_vars.size() + 1 == s.clusters.size());
        for (int pos : s.mutated_positions) CHECK(pos >= 0);
    }
}

TEST_CASE("D4: orientation coincidence and interval structure over all 50 bases") {
    ComplexStore st = ComplexStore::enumerate(preset_b_matrix("D4"), 100000);
    for (size_t base = 0; base < st.cluster_count(); ++base)
        CHECK(verify_green(st, (int)base).pass());
}

#pragma once

#include "cfk/flow.hpp"

namespace cfk {

enum class Provenance { Flow, CVector };

struct Arc {
    int from, to;
    VarId out_of_from; // the variable mutated away from `from`
};

struct OrientedExchangeGraph {
    int nodes = 0;
    std::vector<Arc> arcs;
    Provenance provenance;
    bool complete = false;
};

class NonGenericSinkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Orient every exchange edge by the flow: t → μ_α(t) iff b_α(t) < 0.
 * The sink must be an interior point of a top cell (all weights positive);
 * a vanishing b-coefficient raises NonGenericSinkError.
 */
OrientedExchangeGraph orient_from_flow(const ComplexStore& store, const SinkSpec& sink);

/**
 * Orient by c-vector signs w.r.t. base[1]: the c-vector of the cluster
 * variable at position α of t is the negated α-row of the relative indices
 * of base's variables; green (≥ 0, out of t) or red (≤ 0, into t).
 */
OrientedExchangeGraph orient_from_cvectors(const ComplexStore& store, int base_ci);

struct GreenReport {
    bool equal = false;
    bool dag = false;
    bool unique_source = false, unique_sink = false;
    bool source_is_shifted_base = false, sink_is_base = false;
    int source = -1, sink = -1;
    int base = -1, shifted_base = -1;
    std::vector<std::pair<int, int>> mismatched_arcs;
    bool pass() const {
        return equal && dag && unique_source && unique_sink && source_is_shifted_base &&
               sink_is_base;
    }
};

/** Structural comparison of the two orientations for the given base cluster. */
GreenReport verify_green(const ComplexStore& store, int base_ci);

/** Up to `limit` source→sink directed paths; each as mutated variables. */
struct GreenSequence {
    std::vector<VarId> mutated_vars;
    std::vector<int> mutated_positions; // seed position in each tail cluster
    std::vector<int> clusters;          // visited cluster indices, source first
};

std::vector<GreenSequence> maximal_green_sequences(const ComplexStore& store,
                                                   const OrientedExchangeGraph& og, size_t limit);

} // namespace cfk

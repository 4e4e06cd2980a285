#pragma once

#include <random>

#include "cfk/flow.hpp"

namespace cfk {

enum class TraceStatus { ReachedSink, ReachedSource, CycleDetected, BudgetExhausted, NonGeneric };

std::string to_string(TraceStatus s);

struct Segment {
    int cluster;
    Point entry, exit;
};

struct LeafTrace {
    std::vector<Segment> segments;
    TraceStatus status;
    int cycle_start = -1;       // segment index where the repeated state first occurred
    bool store_limited = false; // BudgetExhausted due to the cluster budget, not crossings
    std::string detail;         // NonGeneric face description etc.
};

/**
 * Follow the leaf through p in the given sense until a singularity, a
 * cycle, a non-generic face, or the budget.  Exact rational arithmetic
 * throughout; walls are crossed via the mutation neighbors with the
 * b-coefficient sign asserted (down: b<0 out of the cell).
 */
LeafTrace trace(FlowField& field, const Point& start, Sense sense, long budget);
LeafTrace trace(const ComplexStore& store, const SinkSpec& sink, const Point& start, Sense sense,
                long budget);

enum class FoliationClass { Compact, SemiCompactEvidence, Unresolved, CycleFound };

std::string to_string(FoliationClass c);

struct FoliationReport {
    std::string sink_label;
    long samples_per_cell = 0;
    long budget = 0;
    // histogram: [sense][status] -> count
    std::map<std::string, std::map<std::string, long>> outcomes;
    FoliationClass classification;
    long traced_pairs = 0;
    long nongeneric_retries = 0;
};

/**
 * Trace both senses from every enumerated top cell's barycenter plus the
 * requested number of random rational interior points (denominator 997).
 * Non-generic hits are retried up to 3 times with a fresh random start.
 */
FoliationReport classify_foliation(const ComplexStore& store, const SinkSpec& sink, long samples,
                                   long budget, uint64_t rng_seed);

/**
 * Operational trace map for a vertex sink x: follow the leaf until the
 * current cell lies in Star(x) (down) / Star(x[1]) (up), then project away
 * the x (resp. x[1]) coordinate and renormalize.  The result lies in
 * link(x) resp. link(x[1]) and is invariant along the leaf.
 */
struct TraceMapResult {
    bool ok = false;
    Point image;        // valid iff ok
    std::string reason; // set when !ok (budget, partial store)
};

TraceMapResult trace_map(const ComplexStore& store, VarId x, const Point& p, Sense sense,
                         long budget);

/** Projection from Star(cell) onto link(cell): drop the cell's coordinates. */
Point project_from_star(const Point& p, const std::vector<VarId>& cell);

Point random_interior_point(const ComplexStore& store, int ci, std::mt19937_64& rng);

} // namespace cfk

#pragma once

#include <map>
#include <optional>
#include <string>

#include "cfk/store.hpp"

namespace cfk {

/** Barycentric point on a cell: positive exact weights summing to 1. */
struct Point {
    std::map<VarId, Rat> w;
    std::vector<VarId> support() const;
    bool operator==(const Point&) const = default;
};

/** Tangent to the complex: exact coefficients summing to 0. */
struct Direction {
    std::map<VarId, Rat> d;
    bool is_zero() const;
    Rat sum() const;
};

Point realize(const std::map<VarId, long>& multiset);
Point barycenter(const std::vector<VarId>& cell);
void validate_point(const Point& p);

/** The evolution target: a point X̂ plus its shifted copy X̂[1]. */
struct SinkSpec {
    std::map<VarId, Rat> support;  // positive, sums to 1
    std::map<VarId, Rat> shifted;  // same weights on the shifted variables
    std::string label;             // CLI syntax echo
};

/** Builds the shifted support through the store's shift map. */
SinkSpec make_sink(const ComplexStore& store, const std::map<VarId, Rat>& support,
                   std::string label = {});

/** Parse "vertex:<id>", "cell:<id,...>" (barycenter) or "point:<id=p/q,...>". */
std::map<VarId, Rat> parse_weight_spec(const ComplexStore& store, const std::string& spec);

enum class TriKind { TrivialW, TrivialU, Nontrivial };

/** The sign split of a variable against a cluster: x → W → U → x[1]. */
struct EvolvingTriangle {
    std::map<VarId, long> w, u; // multiplicities, disjoint supports
    TriKind kind;
};

/**
 * Downward evolving triangle of x for cluster ci, read off the relative
 * index: positive part W, negative part U.  Asserts the trivial-case
 * identifications (x itself, resp. x[1], sits in the cluster).
 */
EvolvingTriangle evolving_triangle(const ComplexStore& store, VarId x, int ci);

enum class Sense { Down, Up };
enum class Crossing { Into, OutOf, None };

/** Per-top-cell affine data: flow(p) = b − c_scalar·p inside the cell. */
struct BCoeffs {
    std::vector<Rat> b; // seed column order of the cluster
    Rat c_scalar;
};

/**
 * Flow evaluation for one sink over one store, with per-cluster caching of
 * the affine coefficients.  Cheap to copy the handle; caches per instance.
 */
class FlowField {
public:
    FlowField(const ComplexStore& store, SinkSpec sink);

    const ComplexStore& store() const { return store_; }
    const SinkSpec& sink() const { return sink_; }

    const BCoeffs& b_coeffs(int ci);
    Crossing crossing_direction(int ci, VarId alpha);

    /**
     * Direction at a point, evaluated per the supported cases: state of the
     * art is the containing top cell (affine form); cells inside Star(X̂) or
     * Star(X̂[1]) use the radial closed forms.  Throws outside these cases.
     */
    Direction flow_direction(const Point& p, Sense sense);

    /** Point as coordinates of a cluster; nullopt if unsupported there. */
    std::optional<std::vector<Rat>> coords_in(int ci, const Point& p) const;
    Point point_from_coords(int ci, const std::vector<Rat>& coords) const;

    bool in_star_of_sink(const std::vector<VarId>& cell_vars) const;
    bool in_star_of_source(const std::vector<VarId>& cell_vars) const;
    Point sink_point() const { return Point{sink_.support}; }
    Point source_point() const { return Point{sink_.shifted}; }

private:
    const ComplexStore& store_;
    SinkSpec sink_;
    std::map<int, BCoeffs> cache_;
};

/** One-off wrappers for the per-operation contracts. */
Direction flow_direction(const ComplexStore& store, const SinkSpec& sink, const Point& p,
                         Sense sense);
BCoeffs b_coeffs(const ComplexStore& store, const SinkSpec& sink, int ci);
Crossing crossing_direction(const ComplexStore& store, const SinkSpec& sink, int ci, VarId alpha);

} // namespace cfk

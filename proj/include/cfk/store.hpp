#pragma once

#include <deque>
#include <map>
#include <optional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "cfk/tropical.hpp"

namespace cfk {

/** A cluster variable, interned by its g-vector w.r.t. the root seed. */
using VarId = int;

struct ClusterRec {
    std::vector<VarId> vars;        // seed column order
    std::vector<VarId> sorted_vars; // dedup key
    Seed witness;
    std::map<VarId, int> neighbors; // leaving variable -> cluster index
    // relative index of a variable w.r.t. this cluster, in seed column order
    std::map<VarId, std::vector<Int>> relindex_cache;
    bool shift_replayed = false;
};

struct ExchangeEdge {
    int a, b;        // cluster indices, a < b
    VarId out_of_a;  // variable of a exchanged away
    VarId into_a;    // variable of b replacing it
};

struct ExchangeGraph {
    int nodes = 0;
    std::vector<ExchangeEdge> edges;
    bool complete = false;
};

/** Facet list of a finite simplicial complex over VarIds. */
struct SubComplex {
    std::vector<std::vector<VarId>> facets; // each sorted
    bool complete = true;
};

class PartialStoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Clusters of a quiver enumerated by breadth-first mutation, deduplicated by
 * their variable sets.  Exhaustive for Dynkin inputs; lazily growable with a
 * global cluster budget otherwise.  Append-only: readers take a shared lock,
 * expansion a unique one, so a cluster is never observed half-inserted.
 */
class ComplexStore {
public:
    static ComplexStore enumerate(const IntMat& b0, size_t max_clusters);

    const IntMat& b0() const { return b0_; }
    int rank() const { return n_; }
    bool exhausted() const { return exhausted_; }
    size_t cluster_count() const;
    size_t variable_count() const;
    size_t max_clusters() const { return max_clusters_; }
    void set_max_clusters(size_t m);

    const ClusterRec& cluster(int ci) const;
    const std::vector<Int>& g_vec(VarId v) const;
    std::optional<VarId> find_var(const std::vector<Int>& g) const;
    std::optional<int> find_cluster(std::vector<VarId> sorted_vars) const;
    int root() const { return 0; }

    /** Clusters known to contain variable v (complete iff exhausted). */
    std::vector<int> clusters_containing(VarId v) const;
    /** Some enumerated cluster containing all given vars, if any (lowest index). */
    std::optional<int> containing_cluster(const std::vector<VarId>& cell) const;
    bool is_cell(const std::vector<VarId>& vars) const;

    /** Mutate cluster ci at seed position k; memoized; nullopt if budget hit. */
    std::optional<int> expand(int ci, int k) const;
    /** Mutate away the given variable of ci. */
    std::optional<int> expand_at(int ci, VarId leaving) const;

    /**
     * Relative index of variable x w.r.t. cluster ci (coordinates in seed
     * column order): e_j iff x is the j-th variable, −e_j iff the j-th
     * variable is x[1]; otherwise the sign split gives the extension data
     * of x against this cluster.  Tropical propagation along the witness path.
     */
    std::vector<Int> relative_index(int ci, VarId x) const;

    /** The shift x ↦ x[1]; total on exhausted stores, may need lazy growth. */
    VarId shift_var(VarId x) const;
    /** x ↦ x[−1] via witness-path replay from the shifted root seed. */
    VarId unshift_var(VarId x) const;

    /** All enumerated faces containing the given cell (each sorted). */
    std::vector<std::vector<VarId>> star(const std::vector<VarId>& cell) const;
    /** Facets of the link of the cell: cluster ∖ cell over clusters ⊇ cell. */
    SubComplex link(const std::vector<VarId>& cell) const;
    /** The whole complex as a facet list. */
    SubComplex complex() const;

    ExchangeGraph exchange_graph() const;

private:
    ComplexStore() = default;
    int intern(const std::vector<Int>& g) const;
    int add_cluster(Seed&& s) const; // returns index (existing or new)
    void replay_shifts_upto(size_t count) const;

    IntMat b0_;
    int n_ = 0;
    size_t max_clusters_ = 0;
    bool exhausted_ = false;
    // lazily materialized: expansion only memoizes, so these are mutable
    mutable std::deque<ClusterRec> clusters_;
    mutable std::map<std::vector<VarId>, int> cluster_index_;
    mutable std::map<std::vector<Int>, VarId> var_index_;
    mutable std::deque<std::vector<Int>> g_vectors_;
    mutable std::deque<std::vector<int>> var_clusters_; // inverted index
    mutable std::map<VarId, VarId> shift_;              // x[-1] -> x  inverse entries
    mutable std::map<VarId, VarId> unshift_;            // x -> x[-1]
    mutable size_t shifts_replayed_ = 0;
    mutable std::unique_ptr<std::shared_mutex> mu_ = std::make_unique<std::shared_mutex>();
};

} // namespace cfk

#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "pathrep/automaton.hpp"
#include "pathrep/graph.hpp"
#include "pathrep/pmr.hpp"
#include "pathrep/rng.hpp"

namespace pathrep {

/// A path count: a natural number or infinity. Infinite exactly when the
/// trim PMR has a cycle (trimness puts every cycle on an S->T path).
struct CountResult {
    bool infinite = false;
    mpz_class value = 0;

    static CountResult inf() { return CountResult{true, 0}; }
    friend bool operator==(const CountResult& a, const CountResult& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    std::string to_string() const { return infinite ? "inf" : value.get_str(); }
};

/// NFA view of a PMR: states are rep-nodes, the alphabet is the graph's
/// edge ids, initial/final states are S/T. Words of the NFA spell exactly
/// the represented nonempty paths. Two caveats inherent to the word view:
/// length-0 paths all spell the empty word, and parallel rep-edges with the
/// same endpoints and gamma collapse into one transition (the transition
/// relation is a set). The equivalence routines compensate for the former
/// and avoid the view where multiplicities matter.
Automaton pmr_to_nfa(const Pmr& r);

/// Inverse of pmr_to_nfa up to isomorphism. Every alphabet symbol must be an
/// edge id of `g` and consecutive transitions must respect incidence;
/// states with no incident transition are rejected (their node image is
/// underdetermined).
Pmr nfa_to_pmr(const Automaton& a, const GraphDb& g);

/// mpaths(a) == mpaths(b): exact path equivalence of the NFA views via
/// basis construction over reachable run-count vectors (integer arithmetic,
/// Gaussian elimination over rationals).
bool multiset_equivalent(const Pmr& a, const Pmr& b);

enum class SetEquivStrategy {
    /// Polynomial test for unambiguous NFA views: accepted-word counts per
    /// length of A1, A2 and their synchronized product must agree for every
    /// length up to |Q1| + |Q2| + |Q1||Q2| (linear-recurrence order bound).
    Ufa,
    /// Determinize both views (subject to the state cap) and compare.
    Determinize,
};

/// spaths(a) == spaths(b).
bool set_equivalent(const Pmr& a, const Pmr& b, SetEquivStrategy strategy = SetEquivStrategy::Ufa,
                    std::size_t det_cap = kDefaultDetCap);

/// Polynomial-time reduction by iterated forward/backward bisimulation on
/// the NFA view, with (gamma, source-membership, target-membership) as the
/// initial partition. Preserves spaths; multiplicities may collapse. Not
/// necessarily minimal.
Pmr bisim_reduce(const Pmr& r);

/// Structural isomorphism respecting gamma, S, and T.
bool pmr_isomorphic(const Pmr& a, const Pmr& b);

/// Number of S->T paths, by cycle check plus a reverse-topological count.
/// Requires a trim PMR (throws NotTrimError otherwise).
CountResult count_paths(const Pmr& r);

/// Per rep-node path counts: to_target[v] counts paths from v to T,
/// from_source[v] counts paths from S to v. Only valid on acyclic PMRs.
struct PathCountAnnotation {
    std::vector<mpz_class> to_target;
    std::vector<mpz_class> from_source;
};
PathCountAnnotation annotate_counts(const Pmr& r);

/// Uniform sample from mpaths(r); `length`, when given, restricts to the
/// submultiset of that length (returns nullopt when empty). Without a
/// length the multiset must be finite (throws InfiniteMultisetError).
std::optional<Path> sample_uniform(const Pmr& r, std::optional<std::size_t> length, Rng& rng);

/// Subgraph of the data graph induced by the gamma-images of r.
GraphDb graph_projection(const Pmr& r);

/// Streams gamma-images of S->T rep-paths in DFS order (sorted adjacency),
/// multiplicity-faithfully, with output-linear delay on trim PMRs:
/// backtracking out of a found path is charged before the path is returned.
/// `max_length` bounds the search depth (required for cyclic PMRs).
class PathEnumerator {
public:
    explicit PathEnumerator(const Pmr& r,
                            std::optional<std::size_t> max_length = std::nullopt);

    /// Fills `out` with the next path; false at end of stream.
    bool next(Path& out);

private:
    const Pmr* r_;
    std::optional<std::size_t> max_length_;
    struct Frame {
        RepNode node;
        std::size_t next_edge; // index into out_edges(node)
    };
    std::vector<Frame> stack_;
    Path current_;
    std::size_t next_source_ = 0;
};

/// Length-stratified enumeration for possibly-infinite multisets: emits all
/// paths of length 0, then 1, and so on, each level via a length-restricted
/// product. Stops after node_count() consecutive empty levels (no longer
/// path can exist past such a gap) or at `max_length`.
class StratifiedEnumerator {
public:
    explicit StratifiedEnumerator(const Pmr& r,
                                  std::optional<std::size_t> max_length = std::nullopt);
    bool next(Path& out);

private:
    void advance_level();
    const Pmr* r_;
    std::optional<std::size_t> max_length_;
    std::size_t level_ = 0;
    std::size_t empty_streak_ = 0;
    bool done_ = false;
    std::optional<Pmr> level_pmr_;
    std::optional<PathEnumerator> level_enum_;
    bool level_emitted_ = false;
};

/// The sub-PMR of paths of exactly `length`: product with the (length+1)-
/// state line automaton over the rep-graph, trimmed.
Pmr length_restricted(const Pmr& r, std::size_t length);

} // namespace pathrep

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathrep/automaton.hpp"
#include "pathrep/graph.hpp"

namespace pathrep {

using RepNode = std::uint32_t;
using RepEdge = std::uint32_t;

inline constexpr std::uint64_t kDefaultPathCap = 1000000;

/// Path multiset representation: an unlabeled graph, a homomorphism gamma
/// into a data graph, and source/target node sets. Represents the multiset
/// of gamma-images of its source-to-target paths. Immutable once built.
class Pmr {
public:
    struct Edge {
        RepNode src;
        RepNode tgt;
        EdgeId gamma;
    };

    explicit Pmr(const GraphDb& g) : graph_(&g) {}

    RepNode add_node(NodeId gamma);
    /// Requires gamma to connect the gamma-images of src and tgt in the graph.
    RepEdge add_edge(RepNode src, RepNode tgt, EdgeId gamma);
    void mark_source(RepNode v);
    void mark_target(RepNode v);
    void set_trim(bool trim) { trim_ = trim; }

    const GraphDb& graph() const { return *graph_; }
    std::size_t node_count() const { return gamma_node_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t size() const { return node_count() + edge_count(); }

    NodeId gamma_node(RepNode v) const { return gamma_node_[v]; }
    const Edge& edge(RepEdge e) const { return edges_[e]; }
    /// Outgoing rep-edges in ascending edge-id order.
    const std::vector<RepEdge>& out_edges(RepNode v) const { return out_[v]; }

    bool is_source(RepNode v) const { return source_flag_[v]; }
    bool is_target(RepNode v) const { return target_flag_[v]; }
    const std::vector<RepNode>& sources() const { return sources_; }
    const std::vector<RepNode>& targets() const { return targets_; }

    /// Whether this PMR was produced trim (every node on some S->T path).
    bool trim_flag() const { return trim_; }

    /// Incoming rep-edges, built on first use.
    const std::vector<std::vector<RepEdge>>& in_edges() const;

    /// Checks the homomorphism invariant and internal consistency; throws
    /// SemanticError on violation. Cheap enough to run in tests and on
    /// deserialized input.
    void validate() const;

private:
    const GraphDb* graph_;
    std::vector<NodeId> gamma_node_;
    std::vector<Edge> edges_;
    std::vector<std::vector<RepEdge>> out_;
    mutable std::vector<std::vector<RepEdge>> in_;
    std::vector<bool> source_flag_, target_flag_;
    std::vector<RepNode> sources_, targets_;
    bool trim_ = false;
};

/// True iff every node (and edge) lies on some S->T path.
bool check_trim(const Pmr& r);

/// Fresh disjoint chain per path occurrence; mpaths(result) = m. Trim.
Pmr canonical_pmr(const PathMultiset& m, const GraphDb& g);
Pmr canonical_pmr(const Path& p);

/// mpaths(result) = mpaths(a) (+) mpaths(b), in linear time.
Pmr disjoint_union(const Pmr& a, const Pmr& b);

/// Product of a graph and an automaton: nodes N x Q, edges pair a graph edge
/// with a same-label transition, S = N x I, T = N x F. Not trimmed. Requires
/// an unambiguous automaton for multiset correctness unless
/// `allow_ambiguous` is set (set semantics, or chain products where distinct
/// runs intentionally encode distinct splits).
Pmr product(const GraphDb& g, const Automaton& a, bool allow_ambiguous = false);

/// Same, keeping the automaton state of every rep-node and the transition of
/// every rep-edge (chain evaluation reads boundary sets out of these).
struct TracedPmr {
    Pmr pmr;
    std::vector<State> node_state;
    std::vector<std::uint32_t> edge_transition;
};
TracedPmr traced_product(const GraphDb& g, const Automaton& a, bool allow_ambiguous = false);
TracedPmr traced_select(const TracedPmr& r, const NodePredicate& from, const NodePredicate& to);

/// Keeps exactly the nodes and edges on some S->T path; mpaths unchanged.
Pmr trim(const Pmr& r);

/// Restricts S to sources with gamma in `from`, T to targets with gamma in
/// `to`, then trims: mpaths(result) = sigma_{from,to}(mpaths(r)).
Pmr select(const Pmr& r, const NodePredicate& from, const NodePredicate& to);

enum class GroupKind { Source, Target, Pairwise };

/// Finite set of PMRs with pairwise-disjoint represented multisets.
struct GroupedPmr {
    GroupKind kind;
    std::vector<Pmr> groups;
    /// Shared endpoint per group: source node, target node, or both.
    std::vector<std::pair<std::optional<NodeId>, std::optional<NodeId>>> endpoints;
};

/// Splits a trim PMR into the maximal groups sharing a source, a target, or
/// an endpoint pair.
GroupedPmr group(const Pmr& r, GroupKind kind);

/// Keeps the paths with no shorter path between the same endpoints.
/// Modified BFS with predecessor sets per source gamma-group, run from the
/// smaller side of S/T. Output is trim and acyclic.
Pmr shortest_filter(const Pmr& r);

/// Keeps, among the shortest paths, those whose label sequence is
/// lexicographically least per endpoint pair (byte order on labels).
Pmr radix_shortest_filter(const Pmr& r);

enum class PathMode { Simple, Trail };

/// Exhaustively enumerates S->T rep-paths whose image repeats no node
/// (Simple) or no edge (Trail) and returns the canonical PMR of the
/// resulting multiset. Exponential by nature; `path_cap` bounds the number
/// of emitted paths. `reduce` applies bisim_reduce to the result.
Pmr simple_trail_filter(const Pmr& r, PathMode mode, std::uint64_t path_cap = kDefaultPathCap,
                        bool reduce = false);

} // namespace pathrep

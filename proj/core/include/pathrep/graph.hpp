#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pathrep/errors.hpp"

namespace pathrep {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using LabelId = std::uint32_t;

class Automaton;

/// Edge-labeled directed multigraph with dense integer ids. External ids are
/// opaque strings; internally everything is interned for O(1) adjacency.
/// Immutable by convention once loaded; loading is single-threaded, reads are
/// safe to share.
class GraphDb {
public:
    struct Edge {
        NodeId src;
        NodeId tgt;
        LabelId label;
    };

    /// Registers a node, or returns the existing id for the name.
    NodeId add_node(std::string_view name);

    /// Registers an edge; endpoints are auto-registered as nodes.
    /// Throws FormatError if the edge name is already taken.
    EdgeId add_edge(std::string_view name, std::string_view src, std::string_view tgt,
                    std::string_view label);

    std::size_t node_count() const { return node_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t label_count() const { return label_names_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    LabelId label(EdgeId e) const { return edges_[e].label; }
    const std::vector<EdgeId>& out_edges(NodeId v) const { return out_[v]; }

    const std::string& node_name(NodeId v) const { return node_names_[v]; }
    const std::string& edge_name(EdgeId e) const { return edge_names_[e]; }
    const std::string& label_name(LabelId l) const { return label_names_[l]; }

    std::optional<NodeId> find_node(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;
    std::optional<LabelId> find_label(std::string_view name) const;

private:
    LabelId intern_label(std::string_view name);

    std::vector<std::string> node_names_, edge_names_, label_names_;
    std::unordered_map<std::string, NodeId> node_ids_;
    std::unordered_map<std::string, EdgeId> edge_ids_;
    std::unordered_map<std::string, LabelId> label_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

/// Alternating node/edge sequence v0 e1 v1 ... en vn, valid in one graph.
/// A length-0 path is a single node with no edges.
struct Path {
    const GraphDb* graph = nullptr;
    std::vector<NodeId> nodes; // length n+1
    std::vector<EdgeId> edges; // length n

    std::size_t length() const { return edges.size(); }
    NodeId src() const { return nodes.front(); }
    NodeId tgt() const { return nodes.back(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.nodes == b.nodes && a.edges == b.edges;
    }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        if (a.nodes != b.nodes) return a.nodes < b.nodes;
        return a.edges < b.edges;
    }
};

/// True iff every edge of `p` connects the surrounding nodes in its graph.
bool path_is_valid(const Path& p);

/// Sequence of edge labels along the path; empty for length-0 paths.
std::vector<std::string> label_word(const Path& p);

Path length_zero_path(const GraphDb& g, NodeId v);

/// Renders "v0 e1 v1 ... en vn" with external names.
std::string path_to_string(const Path& p);

/// Finite multiset of paths, all in the same graph. Test/oracle type;
/// production results are PMRs.
class PathMultiset {
public:
    void insert(const Path& p, std::uint64_t multiplicity = 1);
    std::uint64_t count(const Path& p) const;
    std::uint64_t total() const;
    bool empty() const { return entries_.empty(); }
    std::size_t distinct() const { return entries_.size(); }

    const std::map<Path, std::uint64_t>& entries() const { return entries_; }

    friend bool operator==(const PathMultiset& a, const PathMultiset& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::map<Path, std::uint64_t> entries_;
};

/// Either every node, or a finite set. |All| counts as 1 for complexity
/// accounting.
class NodePredicate {
public:
    static NodePredicate all() { return NodePredicate(true); }
    static NodePredicate of(std::unordered_set<NodeId> ids) {
        NodePredicate p(false);
        p.ids_ = std::move(ids);
        return p;
    }
    static NodePredicate of_names(const GraphDb& g, const std::vector<std::string>& names);

    bool is_all() const { return all_; }
    bool contains(NodeId v) const { return all_ || ids_.count(v) != 0; }
    const std::unordered_set<NodeId>& ids() const { return ids_; }

private:
    explicit NodePredicate(bool all) : all_(all) {}
    bool all_;
    std::unordered_set<NodeId> ids_;
};

/// Parses the line-oriented graph format:
///   node <node-id>
///   edge <edge-id> <src-id> <tgt-id> <label>
/// '#' starts a comment; tokens are whitespace-separated.
GraphDb load_graph(std::istream& in);
GraphDb load_graph_from_string(std::string_view text);
GraphDb load_graph_file(const std::string& path);

/// Writes the graph back out in the same format (all nodes, then all edges,
/// in id order). load_graph(save_graph(g)) is isomorphic to g.
void save_graph(const GraphDb& g, std::ostream& out);
std::string save_graph_to_string(const GraphDb& g);

/// Digest of the canonicalized edge list (name-sorted node and edge lines),
/// independent of line order and comments in the source file.
std::string canonical_graph_hash(const GraphDb& g);

/// Exhaustive oracle: every path of length <= max_len from U to V whose label
/// word is accepted by `lang`, multiplicity 1 each. Exponential; desk scale.
PathMultiset brute_force_paths(const GraphDb& g, std::size_t max_len, const NodePredicate& from,
                               const NodePredicate& to, const Automaton& lang);

} // namespace pathrep

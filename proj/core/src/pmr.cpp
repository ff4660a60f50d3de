#include "pathrep/pmr.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "pathrep/errors.hpp"

namespace pathrep {

RepNode Pmr::add_node(NodeId gamma) {
    RepNode v = static_cast<RepNode>(gamma_node_.size());
    gamma_node_.push_back(gamma);
    out_.emplace_back();
    source_flag_.push_back(false);
    target_flag_.push_back(false);
    in_.clear();
    return v;
}

RepEdge Pmr::add_edge(RepNode src, RepNode tgt, EdgeId gamma) {
    assert(src < node_count() && tgt < node_count());
    assert(graph_->edge(gamma).src == gamma_node_[src] &&
           graph_->edge(gamma).tgt == gamma_node_[tgt]);
    RepEdge e = static_cast<RepEdge>(edges_.size());
    edges_.push_back(Edge{src, tgt, gamma});
    out_[src].push_back(e);
    in_.clear();
    return e;
}

void Pmr::mark_source(RepNode v) {
    if (source_flag_[v]) return;
    source_flag_[v] = true;
    sources_.insert(std::upper_bound(sources_.begin(), sources_.end(), v), v);
}

void Pmr::mark_target(RepNode v) {
    if (target_flag_[v]) return;
    target_flag_[v] = true;
    targets_.insert(std::upper_bound(targets_.begin(), targets_.end(), v), v);
}

const std::vector<std::vector<RepEdge>>& Pmr::in_edges() const {
    if (in_.empty() && !edges_.empty()) {
        in_.resize(node_count());
        for (RepEdge e = 0; e < edge_count(); ++e) in_[edges_[e].tgt].push_back(e);
    }
    if (in_.empty()) in_.resize(node_count());
    return in_;
}

void Pmr::validate() const {
    for (RepNode v = 0; v < node_count(); ++v)
        if (gamma_node_[v] >= graph_->node_count())
            throw SemanticError("rep-node maps outside the graph");
    for (const auto& e : edges_) {
        if (e.gamma >= graph_->edge_count())
            throw SemanticError("rep-edge maps outside the graph");
        const auto& ge = graph_->edge(e.gamma);
        if (ge.src != gamma_node_[e.src] || ge.tgt != gamma_node_[e.tgt])
            throw SemanticError("homomorphism violation: rep-edge endpoints do not match gamma");
    }
    for (RepNode v : sources_)
        if (v >= node_count()) throw SemanticError("source outside node set");
    for (RepNode v : targets_)
        if (v >= node_count()) throw SemanticError("target outside node set");
}

namespace {

// Forward reachability from `from`, over out-edges.
std::vector<bool> reachable_from(const Pmr& r, const std::vector<RepNode>& from) {
    std::vector<bool> seen(r.node_count(), false);
    std::deque<RepNode> queue;
    for (RepNode v : from)
        if (!seen[v]) {
            seen[v] = true;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        RepNode v = queue.front();
        queue.pop_front();
        for (RepEdge e : r.out_edges(v)) {
            RepNode w = r.edge(e).tgt;
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

std::vector<bool> coreachable_to(const Pmr& r, const std::vector<RepNode>& to) {
    std::vector<bool> seen(r.node_count(), false);
    const auto& in = r.in_edges();
    std::deque<RepNode> queue;
    for (RepNode v : to)
        if (!seen[v]) {
            seen[v] = true;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        RepNode v = queue.front();
        queue.pop_front();
        for (RepEdge e : in[v]) {
            RepNode w = r.edge(e).src;
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

// Copies the sub-PMR induced by `keep_node`, with S/T replaced by the given
// endpoint lists (filtered to kept nodes).
Pmr restrict_pmr(const Pmr& r, const std::vector<bool>& keep_node,
                 const std::vector<RepNode>& new_sources, const std::vector<RepNode>& new_targets) {
    Pmr out(r.graph());
    std::vector<RepNode> remap(r.node_count(), UINT32_MAX);
    for (RepNode v = 0; v < r.node_count(); ++v)
        if (keep_node[v]) remap[v] = out.add_node(r.gamma_node(v));
    for (RepEdge e = 0; e < r.edge_count(); ++e) {
        const auto& rec = r.edge(e);
        if (remap[rec.src] != UINT32_MAX && remap[rec.tgt] != UINT32_MAX)
            out.add_edge(remap[rec.src], remap[rec.tgt], rec.gamma);
    }
    for (RepNode v : new_sources)
        if (remap[v] != UINT32_MAX) out.mark_source(remap[v]);
    for (RepNode v : new_targets)
        if (remap[v] != UINT32_MAX) out.mark_target(remap[v]);
    return out;
}

} // namespace

bool check_trim(const Pmr& r) {
    auto reach = reachable_from(r, r.sources());
    auto coreach = coreachable_to(r, r.targets());
    for (RepNode v = 0; v < r.node_count(); ++v)
        if (!(reach[v] && coreach[v])) return false;
    return true;
}

Pmr canonical_pmr(const Path& p) {
    Pmr out(*p.graph);
    RepNode prev = out.add_node(p.nodes[0]);
    out.mark_source(prev);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        RepNode next = out.add_node(p.nodes[i + 1]);
        out.add_edge(prev, next, p.edges[i]);
        prev = next;
    }
    out.mark_target(prev);
    out.set_trim(true);
    return out;
}

Pmr canonical_pmr(const PathMultiset& m, const GraphDb& g) {
    Pmr out(g);
    for (const auto& [path, mult] : m.entries()) {
        for (std::uint64_t i = 0; i < mult; ++i) {
            RepNode prev = out.add_node(path.nodes[0]);
            out.mark_source(prev);
            for (std::size_t j = 0; j < path.edges.size(); ++j) {
                RepNode next = out.add_node(path.nodes[j + 1]);
                out.add_edge(prev, next, path.edges[j]);
                prev = next;
            }
            out.mark_target(prev);
        }
    }
    out.set_trim(true);
    return out;
}

Pmr disjoint_union(const Pmr& a, const Pmr& b) {
    if (&a.graph() != &b.graph())
        throw GraphMismatchError("disjoint_union of PMRs over different graphs");
    Pmr out(a.graph());
    for (RepNode v = 0; v < a.node_count(); ++v) out.add_node(a.gamma_node(v));
    for (RepNode v = 0; v < b.node_count(); ++v) out.add_node(b.gamma_node(v));
    const RepNode offset = static_cast<RepNode>(a.node_count());
    for (RepEdge e = 0; e < a.edge_count(); ++e) {
        const auto& rec = a.edge(e);
        out.add_edge(rec.src, rec.tgt, rec.gamma);
    }
    for (RepEdge e = 0; e < b.edge_count(); ++e) {
        const auto& rec = b.edge(e);
        out.add_edge(rec.src + offset, rec.tgt + offset, rec.gamma);
    }
    for (RepNode v : a.sources()) out.mark_source(v);
    for (RepNode v : a.targets()) out.mark_target(v);
    for (RepNode v : b.sources()) out.mark_source(v + offset);
    for (RepNode v : b.targets()) out.mark_target(v + offset);
    out.set_trim(a.trim_flag() && b.trim_flag());
    return out;
}

TracedPmr traced_product(const GraphDb& g, const Automaton& a, bool allow_ambiguous) {
    if (!allow_ambiguous && a.kind() == AutomatonKind::Nfa)
        throw AmbiguityError(
            "product requires an unambiguous automaton; the multiset would be wrong "
            "(use set semantics to override)");

    TracedPmr out{Pmr(g), {}, {}};
    const std::size_t nq = a.state_count();
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (State q = 0; q < nq; ++q) {
            out.pmr.add_node(v);
            out.node_state.push_back(q);
        }
    auto rep = [&](NodeId v, State q) { return static_cast<RepNode>(v * nq + q); };

    // label -> transitions with that label
    std::unordered_map<LabelId, std::vector<std::uint32_t>> by_label;
    for (std::uint32_t ti = 0; ti < a.transition_count(); ++ti) {
        const auto& t = a.transition(ti);
        if (auto l = g.find_label(a.symbol_name(t.symbol))) by_label[*l].push_back(ti);
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ge = g.edge(e);
        auto it = by_label.find(ge.label);
        if (it == by_label.end()) continue;
        for (std::uint32_t ti : it->second) {
            const auto& t = a.transition(ti);
            out.pmr.add_edge(rep(ge.src, t.from), rep(ge.tgt, t.to), e);
            out.edge_transition.push_back(ti);
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (State q = 0; q < nq; ++q) {
            if (a.is_initial(q)) out.pmr.mark_source(rep(v, q));
            if (a.is_final(q)) out.pmr.mark_target(rep(v, q));
        }
    return out;
}

Pmr product(const GraphDb& g, const Automaton& a, bool allow_ambiguous) {
    return traced_product(g, a, allow_ambiguous).pmr;
}

Pmr select(const Pmr& r, const NodePredicate& from, const NodePredicate& to) {
    std::vector<RepNode> s2, t2;
    for (RepNode v : r.sources())
        if (from.contains(r.gamma_node(v))) s2.push_back(v);
    for (RepNode v : r.targets())
        if (to.contains(r.gamma_node(v))) t2.push_back(v);
    auto reach = reachable_from(r, s2);
    auto coreach = coreachable_to(r, t2);
    std::vector<bool> keep(r.node_count());
    for (RepNode v = 0; v < r.node_count(); ++v) keep[v] = reach[v] && coreach[v];
    Pmr out = restrict_pmr(r, keep, s2, t2);
    out.set_trim(true);
    return out;
}

Pmr trim(const Pmr& r) { return select(r, NodePredicate::all(), NodePredicate::all()); }

TracedPmr traced_select(const TracedPmr& r, const NodePredicate& from, const NodePredicate& to) {
    std::vector<RepNode> s2, t2;
    for (RepNode v : r.pmr.sources())
        if (from.contains(r.pmr.gamma_node(v))) s2.push_back(v);
    for (RepNode v : r.pmr.targets())
        if (to.contains(r.pmr.gamma_node(v))) t2.push_back(v);
    auto reach = reachable_from(r.pmr, s2);
    auto coreach = coreachable_to(r.pmr, t2);

    TracedPmr out{Pmr(r.pmr.graph()), {}, {}};
    std::vector<RepNode> remap(r.pmr.node_count(), UINT32_MAX);
    for (RepNode v = 0; v < r.pmr.node_count(); ++v)
        if (reach[v] && coreach[v]) {
            remap[v] = out.pmr.add_node(r.pmr.gamma_node(v));
            out.node_state.push_back(r.node_state[v]);
        }
    for (RepEdge e = 0; e < r.pmr.edge_count(); ++e) {
        const auto& rec = r.pmr.edge(e);
        if (remap[rec.src] != UINT32_MAX && remap[rec.tgt] != UINT32_MAX) {
            out.pmr.add_edge(remap[rec.src], remap[rec.tgt], rec.gamma);
            out.edge_transition.push_back(r.edge_transition[e]);
        }
    }
    for (RepNode v : s2)
        if (remap[v] != UINT32_MAX) out.pmr.mark_source(remap[v]);
    for (RepNode v : t2)
        if (remap[v] != UINT32_MAX) out.pmr.mark_target(remap[v]);
    out.pmr.set_trim(true);
    return out;
}

GroupedPmr group(const Pmr& r, GroupKind kind) {
    if (!r.trim_flag() && !check_trim(r)) throw NotTrimError("group requires a trim PMR");
    GroupedPmr out;
    out.kind = kind;

    if (kind == GroupKind::Source || kind == GroupKind::Target) {
        // Distinct endpoint gamma values, in first-seen (id) order.
        std::vector<NodeId> keys;
        std::unordered_set<NodeId> seen;
        const auto& endpoints = (kind == GroupKind::Source) ? r.sources() : r.targets();
        for (RepNode v : endpoints)
            if (seen.insert(r.gamma_node(v)).second) keys.push_back(r.gamma_node(v));
        for (NodeId x : keys) {
            NodePredicate p = NodePredicate::of({x});
            Pmr g = (kind == GroupKind::Source) ? select(r, p, NodePredicate::all())
                                                : select(r, NodePredicate::all(), p);
            out.groups.push_back(std::move(g));
            if (kind == GroupKind::Source)
                out.endpoints.emplace_back(x, std::nullopt);
            else
                out.endpoints.emplace_back(std::nullopt, x);
        }
        return out;
    }

    // Pairwise: collect endpoint pairs by one reachability pass per distinct
    // source gamma value.
    std::vector<NodeId> sources;
    std::unordered_set<NodeId> seen_src;
    for (RepNode v : r.sources())
        if (seen_src.insert(r.gamma_node(v)).second) sources.push_back(r.gamma_node(v));

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId x : sources) {
        std::vector<RepNode> sx;
        for (RepNode v : r.sources())
            if (r.gamma_node(v) == x) sx.push_back(v);
        auto reach = reachable_from(r, sx);
        std::vector<NodeId> ys;
        std::unordered_set<NodeId> seen_tgt;
        for (RepNode v : r.targets())
            if (reach[v] && seen_tgt.insert(r.gamma_node(v)).second)
                ys.push_back(r.gamma_node(v));
        for (NodeId y : ys) pairs.emplace_back(x, y);
    }
    for (auto [x, y] : pairs) {
        out.groups.push_back(select(r, NodePredicate::of({x}), NodePredicate::of({y})));
        out.endpoints.emplace_back(x, y);
    }
    return out;
}

} // namespace pathrep

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "pathrep/analysis.hpp"
#include "pathrep/errors.hpp"
#include "pathrep/pmr.hpp"

namespace pathrep {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// A shortest-paths piece for one source gamma-group, computed over an
// adjacency view so the same code runs forward (from S) and backward
// (from T, on reversed edges).
struct AdjView {
    const Pmr* r;
    bool forward;

    RepNode head(RepEdge e) const { return forward ? r->edge(e).tgt : r->edge(e).src; }
    RepNode tail(RepEdge e) const { return forward ? r->edge(e).src : r->edge(e).tgt; }
    const std::vector<RepEdge>& out(RepNode v) const {
        return forward ? r->out_edges(v) : r->in_edges()[v];
    }
    const std::vector<RepEdge>& in(RepNode v) const {
        return forward ? r->in_edges()[v] : r->out_edges(v);
    }
    const std::vector<RepNode>& starts() const { return forward ? r->sources() : r->targets(); }
    const std::vector<RepNode>& ends() const { return forward ? r->targets() : r->sources(); }
};

struct ShortestPiece {
    std::vector<bool> keep_node;
    std::vector<bool> keep_edge;
    std::vector<RepNode> starts; // members of the BFS seed group that survive
    std::vector<RepNode> ends;   // minimal-distance end nodes
    std::vector<std::uint32_t> dist;
};

// Modified BFS from all seeds at distance 0, recording distances; then keep
// only the nodes/edges on a minimal-length path to each end gamma-value.
ShortestPiece shortest_piece(const AdjView& view, const std::vector<RepNode>& seeds) {
    const Pmr& r = *view.r;
    ShortestPiece piece;
    piece.dist.assign(r.node_count(), kUnreached);
    std::deque<RepNode> queue;
    for (RepNode v : seeds) {
        piece.dist[v] = 0;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        RepNode v = queue.front();
        queue.pop_front();
        for (RepEdge e : view.out(v)) {
            RepNode w = view.head(e);
            if (piece.dist[w] == kUnreached) {
                piece.dist[w] = piece.dist[v] + 1;
                queue.push_back(w);
            }
        }
    }

    // Minimal distance per end gamma value.
    std::unordered_map<NodeId, std::uint32_t> best;
    for (RepNode v : view.ends()) {
        if (piece.dist[v] == kUnreached) continue;
        auto [it, inserted] = best.emplace(r.gamma_node(v), piece.dist[v]);
        if (!inserted) it->second = std::min(it->second, piece.dist[v]);
    }

    piece.keep_node.assign(r.node_count(), false);
    piece.keep_edge.assign(r.edge_count(), false);
    std::deque<RepNode> back;
    for (RepNode v : view.ends()) {
        if (piece.dist[v] == kUnreached) continue;
        if (piece.dist[v] != best.at(r.gamma_node(v))) continue;
        piece.ends.push_back(v);
        if (!piece.keep_node[v]) {
            piece.keep_node[v] = true;
            back.push_back(v);
        }
    }
    // Backward sweep along edges that advance the BFS distance by one.
    while (!back.empty()) {
        RepNode v = back.front();
        back.pop_front();
        for (RepEdge e : view.in(v)) {
            RepNode u = view.tail(e);
            if (piece.dist[u] == kUnreached || piece.dist[u] + 1 != piece.dist[v]) continue;
            piece.keep_edge[e] = true;
            if (!piece.keep_node[u]) {
                piece.keep_node[u] = true;
                back.push_back(u);
            }
        }
    }
    for (RepNode v : seeds)
        if (piece.keep_node[v]) piece.starts.push_back(v);
    return piece;
}

// Distinct gamma values of the view's start nodes, in id order.
std::vector<NodeId> start_gamma_groups(const Pmr& r, const std::vector<RepNode>& starts) {
    std::vector<NodeId> keys;
    std::unordered_set<NodeId> seen;
    for (RepNode v : starts)
        if (seen.insert(r.gamma_node(v)).second) keys.push_back(r.gamma_node(v));
    return keys;
}

// Appends the piece (restricted to kept nodes/edges) to `out`, oriented
// forward regardless of the view direction.
void append_piece(Pmr& out, const AdjView& view, const ShortestPiece& piece) {
    const Pmr& r = *view.r;
    std::vector<RepNode> remap(r.node_count(), UINT32_MAX);
    for (RepNode v = 0; v < r.node_count(); ++v)
        if (piece.keep_node[v]) remap[v] = out.add_node(r.gamma_node(v));
    for (RepEdge e = 0; e < r.edge_count(); ++e)
        if (piece.keep_edge[e])
            out.add_edge(remap[r.edge(e).src], remap[r.edge(e).tgt], r.edge(e).gamma);
    const auto& sources = view.forward ? piece.starts : piece.ends;
    const auto& targets = view.forward ? piece.ends : piece.starts;
    for (RepNode v : sources) out.mark_source(remap[v]);
    for (RepNode v : targets) out.mark_target(remap[v]);
}

} // namespace

Pmr shortest_filter(const Pmr& r) {
    std::optional<Pmr> trimmed;
    const Pmr& base = r.trim_flag() ? r : *(trimmed = trim(r));

    // Run from the smaller endpoint side; the reversed run computes the same
    // per-endpoint-pair minima.
    const auto src_groups = start_gamma_groups(base, base.sources());
    const auto tgt_groups = start_gamma_groups(base, base.targets());
    const bool forward = src_groups.size() <= tgt_groups.size();
    AdjView view{&base, forward};
    const auto& groups = forward ? src_groups : tgt_groups;

    Pmr out(base.graph());
    for (NodeId x : groups) {
        std::vector<RepNode> seeds;
        for (RepNode v : view.starts())
            if (base.gamma_node(v) == x) seeds.push_back(v);
        ShortestPiece piece = shortest_piece(view, seeds);
        append_piece(out, view, piece);
    }
    out.set_trim(true);
    return out;
}

namespace {

// Byte-order rank of every graph label.
std::vector<std::uint32_t> label_ranks(const GraphDb& g) {
    std::vector<std::uint32_t> order(g.label_count());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return g.label_name(a) < g.label_name(b); });
    std::vector<std::uint32_t> rank(g.label_count());
    for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    return rank;
}

// Single-source-group DAG pass keeping only lexicographically least label
// sequences per end gamma value. `piece` must come from a forward
// shortest_piece run (so kept edges advance dist by one and the kept
// subgraph is acyclic).
void lexi_refine(const Pmr& r, const std::vector<std::uint32_t>& rank, ShortestPiece& piece) {
    // Kahn topological order over kept nodes/edges.
    std::vector<std::uint32_t> indeg(r.node_count(), 0);
    for (RepEdge e = 0; e < r.edge_count(); ++e)
        if (piece.keep_edge[e]) ++indeg[r.edge(e).tgt];
    std::deque<RepNode> ready;
    for (RepNode v = 0; v < r.node_count(); ++v)
        if (piece.keep_node[v] && indeg[v] == 0) ready.push_back(v);

    // d[v]: least label-rank sequence over kept paths from the seeds to v.
    std::vector<std::optional<std::vector<std::uint32_t>>> d(r.node_count());
    std::vector<std::vector<RepEdge>> pred(r.node_count());
    for (RepNode v : piece.starts) d[v] = std::vector<std::uint32_t>{};

    std::vector<RepNode> topo;
    while (!ready.empty()) {
        RepNode v = ready.front();
        ready.pop_front();
        topo.push_back(v);
        for (RepEdge e : r.out_edges(v)) {
            if (!piece.keep_edge[e]) continue;
            RepNode w = r.edge(e).tgt;
            if (d[v]) {
                std::vector<std::uint32_t> cand = *d[v];
                cand.push_back(rank[r.graph().label(r.edge(e).gamma)]);
                if (!d[w] || cand < *d[w]) {
                    d[w] = std::move(cand);
                    pred[w] = {e};
                } else if (cand == *d[w]) {
                    pred[w].push_back(e);
                }
            }
            if (--indeg[w] == 0) ready.push_back(w);
        }
    }

    // Least sequence per end gamma value.
    std::unordered_map<NodeId, const std::vector<std::uint32_t>*> best;
    for (RepNode v : piece.ends) {
        if (!d[v]) continue;
        auto [it, inserted] = best.emplace(r.gamma_node(v), &*d[v]);
        if (!inserted && *d[v] < *it->second) it->second = &*d[v];
    }

    std::vector<bool> keep_node(r.node_count(), false);
    std::vector<bool> keep_edge(r.edge_count(), false);
    std::vector<RepNode> ends;
    std::deque<RepNode> back;
    for (RepNode v : piece.ends) {
        if (!d[v] || *d[v] != *best.at(r.gamma_node(v))) continue;
        ends.push_back(v);
        if (!keep_node[v]) {
            keep_node[v] = true;
            back.push_back(v);
        }
    }
    while (!back.empty()) {
        RepNode v = back.front();
        back.pop_front();
        for (RepEdge e : pred[v]) {
            keep_edge[e] = true;
            RepNode u = r.edge(e).src;
            if (!keep_node[u]) {
                keep_node[u] = true;
                back.push_back(u);
            }
        }
    }

    piece.keep_node = std::move(keep_node);
    piece.keep_edge = std::move(keep_edge);
    piece.ends = std::move(ends);
    std::vector<RepNode> starts;
    for (RepNode v : piece.starts)
        if (piece.keep_node[v]) starts.push_back(v);
    piece.starts = std::move(starts);
}

} // namespace

Pmr radix_shortest_filter(const Pmr& r) {
    std::optional<Pmr> trimmed;
    const Pmr& base = r.trim_flag() ? r : *(trimmed = trim(r));

    // Always from the source side: lexicographic order reads words forward.
    AdjView view{&base, true};
    const auto rank = label_ranks(base.graph());

    Pmr out(base.graph());
    for (NodeId x : start_gamma_groups(base, base.sources())) {
        std::vector<RepNode> seeds;
        for (RepNode v : base.sources())
            if (base.gamma_node(v) == x) seeds.push_back(v);
        ShortestPiece piece = shortest_piece(view, seeds);
        lexi_refine(base, rank, piece);
        append_piece(out, view, piece);
    }
    out.set_trim(true);
    return out;
}

namespace {

struct ModeFilterState {
    const Pmr* r;
    PathMode mode;
    std::uint64_t cap;
    std::uint64_t emitted = 0;
    PathMultiset found;
    std::vector<std::uint32_t> node_uses;  // per graph node (Simple)
    std::vector<std::uint32_t> edge_uses;  // per graph edge (Trail)
    Path current;
};

void mode_filter_dfs(ModeFilterState& st, RepNode v) {
    const Pmr& r = *st.r;
    if (r.is_target(v)) {
        if (++st.emitted > st.cap)
            throw ResourceLimitError("simple/trail filter exceeded the path cap of " +
                                     std::to_string(st.cap));
        st.found.insert(st.current);
    }
    for (RepEdge e : r.out_edges(v)) {
        const auto& rec = r.edge(e);
        NodeId gn = r.gamma_node(rec.tgt);
        if (st.mode == PathMode::Simple && st.node_uses[gn] > 0) continue;
        if (st.mode == PathMode::Trail && st.edge_uses[rec.gamma] > 0) continue;
        ++st.node_uses[gn];
        ++st.edge_uses[rec.gamma];
        st.current.nodes.push_back(gn);
        st.current.edges.push_back(rec.gamma);
        mode_filter_dfs(st, rec.tgt);
        st.current.edges.pop_back();
        st.current.nodes.pop_back();
        --st.edge_uses[rec.gamma];
        --st.node_uses[gn];
    }
}

} // namespace

Pmr simple_trail_filter(const Pmr& r, PathMode mode, std::uint64_t path_cap, bool reduce) {
    ModeFilterState st;
    st.r = &r;
    st.mode = mode;
    st.cap = path_cap;
    st.node_uses.assign(r.graph().node_count(), 0);
    st.edge_uses.assign(r.graph().edge_count(), 0);
    st.current.graph = &r.graph();

    for (RepNode v : r.sources()) {
        NodeId gn = r.gamma_node(v);
        ++st.node_uses[gn];
        st.current.nodes.push_back(gn);
        mode_filter_dfs(st, v);
        st.current.nodes.pop_back();
        --st.node_uses[gn];
    }
    Pmr out = canonical_pmr(st.found, r.graph());
    if (reduce) out = bisim_reduce(out);
    return out;
}

} // namespace pathrep

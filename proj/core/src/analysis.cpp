#include "pathrep/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "pathrep/errors.hpp"

namespace pathrep {

Automaton pmr_to_nfa(const Pmr& r) {
    Automaton a;
    for (RepNode v = 0; v < r.node_count(); ++v)
        a.add_state(r.is_source(v), r.is_target(v));
    for (RepEdge e = 0; e < r.edge_count(); ++e) {
        const auto& rec = r.edge(e);
        a.add_transition(rec.src, r.graph().edge_name(rec.gamma), rec.tgt);
    }
    return a;
}

Pmr nfa_to_pmr(const Automaton& a, const GraphDb& g) {
    const std::size_t n = a.state_count();
    std::vector<std::optional<NodeId>> gamma(n);

    auto force = [&](State q, NodeId v) {
        if (gamma[q] && *gamma[q] != v)
            throw SemanticError("incidence violation: state '" + std::to_string(q) +
                                "' would map to two different graph nodes");
        gamma[q] = v;
    };
    for (const auto& t : a.transitions()) {
        auto edge = g.find_edge(a.symbol_name(t.symbol));
        if (!edge)
            throw SemanticError("alphabet symbol '" + a.symbol_name(t.symbol) +
                                "' is not an edge id of the graph");
        force(t.from, g.edge(*edge).src);
        force(t.to, g.edge(*edge).tgt);
    }
    for (State q = 0; q < n; ++q)
        if (!gamma[q])
            throw SemanticError("state '" + std::to_string(q) +
                                "' has no incident transition; its node image is underdetermined");

    Pmr out(g);
    for (State q = 0; q < n; ++q) out.add_node(*gamma[q]);
    for (const auto& t : a.transitions())
        out.add_edge(t.from, t.to, *g.find_edge(a.symbol_name(t.symbol)));
    for (State q = 0; q < n; ++q) {
        if (a.is_initial(q)) out.mark_source(q);
        if (a.is_final(q)) out.mark_target(q);
    }
    out.set_trim(check_trim(out));
    return out;
}

namespace {

// Exact row-echelon basis over Q for Tzeng-style path equivalence.
class RationalBasis {
public:
    /// Reduces `v` against the basis; if a nonzero residual remains, adds it
    /// as a new row and returns true.
    bool insert(std::vector<mpq_class> v) {
        for (auto& row : rows_) {
            const mpq_class& x = v[row.pivot];
            if (x != 0) {
                mpq_class f = x; // row is normalized: row.vec[pivot] == 1
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row.vec[i];
            }
        }
        std::size_t pivot = v.size();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                pivot = i;
                break;
            }
        if (pivot == v.size()) return false;
        mpq_class inv = v[pivot];
        for (auto& x : v) x /= inv;
        rows_.push_back(Row{std::move(v), pivot});
        return true;
    }

private:
    struct Row {
        std::vector<mpq_class> vec;
        std::size_t pivot;
    };
    std::vector<Row> rows_;
};

} // namespace

namespace {

// Length-0 paths are invisible to the edge-word view of a PMR (every one of
// them spells the empty word), so equivalences compare them per graph node.
std::map<NodeId, std::size_t> zero_length_path_counts(const Pmr& r) {
    std::map<NodeId, std::size_t> counts;
    for (RepNode v : r.sources())
        if (r.is_target(v)) ++counts[r.gamma_node(v)];
    return counts;
}

} // namespace

bool multiset_equivalent(const Pmr& a, const Pmr& b) {
    if (&a.graph() != &b.graph())
        throw GraphMismatchError("multiset equivalence of PMRs over different graphs");
    if (zero_length_path_counts(a) != zero_length_path_counts(b)) return false;

    const std::size_t na = a.node_count(), nb = b.node_count();
    const std::size_t n = na + nb;

    // Per symbol (graph edge), the rep-edges of both sides.
    std::unordered_map<EdgeId, std::vector<std::pair<std::uint32_t, std::uint32_t>>> step;
    for (RepEdge e = 0; e < a.edge_count(); ++e)
        step[a.edge(e).gamma].emplace_back(a.edge(e).src, a.edge(e).tgt);
    for (RepEdge e = 0; e < b.edge_count(); ++e)
        step[b.edge(e).gamma].emplace_back(na + b.edge(e).src, na + b.edge(e).tgt);

    // f(v) = sum over a's targets minus sum over b's targets; path
    // equivalence holds iff f vanishes on every reachable run-count vector.
    auto functional_zero = [&](const std::vector<mpq_class>& v) {
        mpq_class f = 0;
        for (RepNode t : a.targets()) f += v[t];
        for (RepNode t : b.targets()) f -= v[na + t];
        return f == 0;
    };

    std::vector<mpq_class> start(n, 0);
    for (RepNode s : a.sources()) start[s] += 1;
    for (RepNode s : b.sources()) start[na + s] += 1;

    // The empty word was handled per node above; the basis walk checks the
    // functional on every vector reachable by at least one symbol.
    RationalBasis basis;
    std::deque<std::vector<mpq_class>> queue;
    if (basis.insert(start)) queue.push_back(std::move(start));

    while (!queue.empty()) {
        std::vector<mpq_class> v = std::move(queue.front());
        queue.pop_front();
        for (const auto& [sym, moves] : step) {
            std::vector<mpq_class> w(n, 0);
            bool nonzero = false;
            for (const auto& [from, to] : moves) {
                if (v[from] != 0) {
                    w[to] += v[from];
                    nonzero = true;
                }
            }
            if (!nonzero) continue;
            if (!functional_zero(w)) return false;
            std::vector<mpq_class> copy = w;
            if (basis.insert(std::move(copy))) queue.push_back(std::move(w));
        }
    }
    return true;
}

bool set_equivalent(const Pmr& a, const Pmr& b, SetEquivStrategy strategy, std::size_t det_cap) {
    if (&a.graph() != &b.graph())
        throw GraphMismatchError("set equivalence of PMRs over different graphs");

    // Nodes carrying length-0 paths, which the word view cannot distinguish.
    std::set<NodeId> za, zb;
    for (const auto& [node, count] : zero_length_path_counts(a)) za.insert(node);
    for (const auto& [node, count] : zero_length_path_counts(b)) zb.insert(node);
    if (za != zb) return false;

    Automaton na = pmr_to_nfa(a);
    Automaton nb = pmr_to_nfa(b);

    if (strategy == SetEquivStrategy::Determinize)
        return language_equivalent(na, nb, det_cap);

    // The empty word was compared per node above, so ambiguity on it alone
    // (several initial-final states) is harmless here.
    if (!check_unambiguous_nonempty(na) || !check_unambiguous_nonempty(nb))
        throw AmbiguityError("set_equivalent(Ufa) requires unambiguous NFA views; "
                             "use the determinize strategy");

    // For UFAs, accepted-word counts per length equal accepting-run counts,
    // and their differences obey linear recurrences of bounded order.
    const std::size_t qa = na.state_count(), qb = nb.state_count();
    const std::size_t bound = qa + qb + qa * qb;
    Automaton prod = intersection_product(na, nb);
    auto ca = accepting_runs_by_length(na, bound);
    auto cb = accepting_runs_by_length(nb, bound);
    auto cp = accepting_runs_by_length(prod, bound);
    for (std::size_t len = 1; len <= bound; ++len)
        if (ca[len] != cp[len] || cb[len] != cp[len]) return false;
    return true;
}

namespace {

// One round of partition refinement over the NFA view. `forward` refines on
// (gamma-edge, successor block) signatures, backward on predecessors.
std::vector<std::uint32_t> refine_partition(const Pmr& r, std::vector<std::uint32_t> block,
                                            bool forward) {
    const std::size_t n = r.node_count();
    for (;;) {
        std::map<std::vector<std::uint64_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next(n);
        for (RepNode v = 0; v < n; ++v) {
            std::vector<std::uint64_t> sig;
            sig.push_back(block[v]);
            std::vector<std::uint64_t> moves;
            const auto& edges = forward ? r.out_edges(v) : r.in_edges()[v];
            for (RepEdge e : edges) {
                const auto& rec = r.edge(e);
                RepNode other = forward ? rec.tgt : rec.src;
                moves.push_back((std::uint64_t(rec.gamma) << 32) | block[other]);
            }
            std::sort(moves.begin(), moves.end());
            moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
            sig.insert(sig.end(), moves.begin(), moves.end());
            auto [it, ins] = sig_ids.emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size()));
            (void)ins;
            next[v] = it->second;
        }
        if (next == block) return block;
        block = std::move(next);
    }
}

Pmr quotient(const Pmr& r, const std::vector<std::uint32_t>& block, std::uint32_t block_count) {
    Pmr out(r.graph());
    std::vector<std::optional<NodeId>> gamma(block_count);
    for (RepNode v = 0; v < r.node_count(); ++v) {
        if (!gamma[block[v]]) gamma[block[v]] = r.gamma_node(v);
        assert(*gamma[block[v]] == r.gamma_node(v));
    }
    for (std::uint32_t b = 0; b < block_count; ++b) out.add_node(*gamma[b]);
    std::set<std::tuple<RepNode, RepNode, EdgeId>> seen;
    for (RepEdge e = 0; e < r.edge_count(); ++e) {
        const auto& rec = r.edge(e);
        auto key = std::make_tuple(block[rec.src], block[rec.tgt], rec.gamma);
        if (seen.insert(key).second) out.add_edge(block[rec.src], block[rec.tgt], rec.gamma);
    }
    for (RepNode v : r.sources()) out.mark_source(block[v]);
    for (RepNode v : r.targets()) out.mark_target(block[v]);
    out.set_trim(check_trim(out));
    return out;
}

Pmr bisim_round(const Pmr& r, bool forward) {
    const std::size_t n = r.node_count();
    std::vector<std::uint32_t> block(n);
    std::map<std::tuple<NodeId, bool, bool>, std::uint32_t> init;
    for (RepNode v = 0; v < n; ++v) {
        auto key = std::make_tuple(r.gamma_node(v), r.is_source(v), r.is_target(v));
        auto [it, ins] = init.emplace(key, static_cast<std::uint32_t>(init.size()));
        (void)ins;
        block[v] = it->second;
    }
    block = refine_partition(r, std::move(block), forward);
    std::uint32_t count = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
    return quotient(r, block, count);
}

} // namespace

Pmr bisim_reduce(const Pmr& r) {
    Pmr cur = bisim_round(r, true);
    for (;;) {
        std::size_t before = cur.size();
        cur = bisim_round(cur, false);
        cur = bisim_round(cur, true);
        if (cur.size() == before) return cur;
    }
}

namespace {

// Backtracking isomorphism with (gamma, degree, S/T) signatures. PMRs here
// are small; this is a test and CLI convenience, not a hot path.
struct IsoState {
    const Pmr *a, *b;
    std::vector<std::uint32_t> a2b, b2a;
};

bool compatible(const IsoState& st, RepNode va, RepNode vb) {
    const Pmr &a = *st.a, &b = *st.b;
    return a.gamma_node(va) == b.gamma_node(vb) && a.is_source(va) == b.is_source(vb) &&
           a.is_target(va) == b.is_target(vb) &&
           a.out_edges(va).size() == b.out_edges(vb).size() &&
           a.in_edges()[va].size() == b.in_edges()[vb].size();
}

bool iso_dfs(IsoState& st, RepNode va) {
    const Pmr &a = *st.a, &b = *st.b;
    if (va == a.node_count()) {
        // Node bijection fixed; the multiset of edges must match.
        std::map<std::tuple<RepNode, RepNode, EdgeId>, int> balance;
        for (RepEdge e = 0; e < a.edge_count(); ++e) {
            const auto& rec = a.edge(e);
            balance[{st.a2b[rec.src], st.a2b[rec.tgt], rec.gamma}]++;
        }
        for (RepEdge e = 0; e < b.edge_count(); ++e) {
            const auto& rec = b.edge(e);
            if (--balance[{rec.src, rec.tgt, rec.gamma}] < 0) return false;
        }
        for (const auto& [k, v] : balance)
            if (v != 0) return false;
        return true;
    }
    for (RepNode vb = 0; vb < b.node_count(); ++vb) {
        if (st.b2a[vb] != UINT32_MAX || !compatible(st, va, vb)) continue;
        st.a2b[va] = vb;
        st.b2a[vb] = va;
        if (iso_dfs(st, va + 1)) return true;
        st.a2b[va] = UINT32_MAX;
        st.b2a[vb] = UINT32_MAX;
    }
    return false;
}

} // namespace

bool pmr_isomorphic(const Pmr& a, const Pmr& b) {
    if (&a.graph() != &b.graph()) return false;
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    if (a.sources().size() != b.sources().size() || a.targets().size() != b.targets().size())
        return false;
    IsoState st{&a, &b, std::vector<std::uint32_t>(a.node_count(), UINT32_MAX),
                std::vector<std::uint32_t>(b.node_count(), UINT32_MAX)};
    return iso_dfs(st, 0);
}

namespace {

// Reverse topological order; nullopt if the (kept) graph has a cycle.
std::optional<std::vector<RepNode>> reverse_topo_order(const Pmr& r) {
    const std::size_t n = r.node_count();
    std::vector<std::uint32_t> outdeg(n, 0);
    for (RepEdge e = 0; e < r.edge_count(); ++e) ++outdeg[r.edge(e).src];
    std::deque<RepNode> ready;
    for (RepNode v = 0; v < n; ++v)
        if (outdeg[v] == 0) ready.push_back(v);
    std::vector<RepNode> order;
    const auto& in = r.in_edges();
    while (!ready.empty()) {
        RepNode v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (RepEdge e : in[v])
            if (--outdeg[r.edge(e).src] == 0) ready.push_back(r.edge(e).src);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

} // namespace

CountResult count_paths(const Pmr& r) {
    if (!r.trim_flag() && !check_trim(r))
        throw NotTrimError("count_paths requires a trim PMR");
    auto order = reverse_topo_order(r);
    if (!order) return CountResult::inf();

    std::vector<mpz_class> cnt(r.node_count(), 0);
    for (RepNode v : *order) {
        mpz_class c = r.is_target(v) ? 1 : 0;
        for (RepEdge e : r.out_edges(v)) c += cnt[r.edge(e).tgt];
        cnt[v] = std::move(c);
    }
    CountResult result;
    for (RepNode v : r.sources()) result.value += cnt[v];
    return result;
}

PathCountAnnotation annotate_counts(const Pmr& r) {
    auto order = reverse_topo_order(r);
    if (!order) throw InfiniteMultisetError("annotate_counts requires an acyclic PMR");
    PathCountAnnotation ann;
    ann.to_target.assign(r.node_count(), 0);
    ann.from_source.assign(r.node_count(), 0);
    for (RepNode v : *order) {
        mpz_class c = r.is_target(v) ? 1 : 0;
        for (RepEdge e : r.out_edges(v)) c += ann.to_target[r.edge(e).tgt];
        ann.to_target[v] = std::move(c);
    }
    const auto& in = r.in_edges();
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        RepNode v = *it;
        mpz_class c = r.is_source(v) ? 1 : 0;
        for (RepEdge e : in[v]) c += ann.from_source[r.edge(e).src];
        ann.from_source[v] = std::move(c);
    }
    return ann;
}

std::optional<Path> sample_uniform(const Pmr& r, std::optional<std::size_t> length, Rng& rng) {
    if (length) {
        Pmr restricted = length_restricted(r, *length);
        if (restricted.node_count() == 0) return std::nullopt;
        return sample_uniform(restricted, std::nullopt, rng);
    }

    if (!r.trim_flag() && !check_trim(r))
        throw NotTrimError("sample_uniform requires a trim PMR");
    auto order = reverse_topo_order(r);
    if (!order)
        throw InfiniteMultisetError("cannot sample without a length bound: "
                                    "the represented multiset is infinite");

    std::vector<mpz_class> cnt(r.node_count(), 0);
    for (RepNode v : *order) {
        mpz_class c = r.is_target(v) ? 1 : 0;
        for (RepEdge e : r.out_edges(v)) c += cnt[r.edge(e).tgt];
        cnt[v] = std::move(c);
    }
    mpz_class total = 0;
    for (RepNode v : r.sources()) total += cnt[v];
    if (total == 0) return std::nullopt;

    // Start node with probability cnt(v)/N.
    mpz_class draw = rng.below(total);
    RepNode at = UINT32_MAX;
    for (RepNode v : r.sources()) {
        if (draw < cnt[v]) {
            at = v;
            break;
        }
        draw -= cnt[v];
    }
    assert(at != UINT32_MAX);

    Path path = length_zero_path(r.graph(), r.gamma_node(at));
    for (;;) {
        // Stop here (if a target) with weight 1, else follow edge u->w with
        // weight cnt(w); total weight is cnt(at), so every path gets 1/N.
        mpz_class pick = rng.below(cnt[at]);
        if (r.is_target(at)) {
            if (pick == 0) return path;
            pick -= 1;
        }
        bool advanced = false;
        for (RepEdge e : r.out_edges(at)) {
            RepNode w = r.edge(e).tgt;
            if (pick < cnt[w]) {
                path.edges.push_back(r.edge(e).gamma);
                path.nodes.push_back(r.gamma_node(w));
                at = w;
                advanced = true;
                break;
            }
            pick -= cnt[w];
        }
        assert(advanced);
        if (!advanced) return std::nullopt;
    }
}

Pmr length_restricted(const Pmr& r, std::size_t length) {
    // Product with the (length+1)-state line automaton: level-indexed copy.
    Pmr out(r.graph());
    const std::size_t levels = length + 1;
    for (std::size_t l = 0; l < levels; ++l)
        for (RepNode v = 0; v < r.node_count(); ++v) out.add_node(r.gamma_node(v));
    auto rep = [&](std::size_t level, RepNode v) {
        return static_cast<RepNode>(level * r.node_count() + v);
    };
    for (std::size_t l = 0; l + 1 < levels; ++l)
        for (RepEdge e = 0; e < r.edge_count(); ++e) {
            const auto& rec = r.edge(e);
            out.add_edge(rep(l, rec.src), rep(l + 1, rec.tgt), rec.gamma);
        }
    for (RepNode v : r.sources()) out.mark_source(rep(0, v));
    for (RepNode v : r.targets()) out.mark_target(rep(length, v));
    return trim(out);
}

GraphDb graph_projection(const Pmr& r) {
    if (!r.trim_flag() && !check_trim(r))
        throw NotTrimError("graph_projection requires a trim PMR");
    const GraphDb& g = r.graph();
    std::vector<bool> node_used(g.node_count(), false);
    std::vector<bool> edge_used(g.edge_count(), false);
    for (RepNode v = 0; v < r.node_count(); ++v) node_used[r.gamma_node(v)] = true;
    for (RepEdge e = 0; e < r.edge_count(); ++e) edge_used[r.edge(e).gamma] = true;

    GraphDb out;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (node_used[v]) out.add_node(g.node_name(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (edge_used[e]) {
            const auto& rec = g.edge(e);
            out.add_edge(g.edge_name(e), g.node_name(rec.src), g.node_name(rec.tgt),
                         g.label_name(rec.label));
        }
    return out;
}

} // namespace pathrep

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "pathrep/errors.hpp"
#include "pathrep/query.hpp"

namespace pathrep {

namespace {

void validate_chain_shape(const std::vector<ChainAtom>& atoms) {
    if (atoms.empty()) throw SemanticError("empty chain");
    std::vector<std::string> vars;
    vars.push_back(atoms[0].from_var);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i + 1 < atoms.size() && atoms[i].to_var != atoms[i + 1].from_var)
            throw UnsupportedError(
                "only chain-shaped joins are supported: atom " + std::to_string(i + 1) +
                " ends in '" + atoms[i].to_var + "' but the next atom starts in '" +
                atoms[i + 1].from_var + "'");
        vars.push_back(atoms[i].to_var);
    }
    std::set<std::string> distinct(vars.begin(), vars.end());
    if (distinct.size() != vars.size())
        throw UnsupportedError("repeated variables beyond the chain shape are not supported");
}

// Per-source path counts over the trimmed product. Kahn's peeling processes
// exactly the nodes that cannot reach a cycle; everything else counts as
// infinite.
struct SourceCounts {
    std::vector<bool> finite; // per rep-node
    std::vector<mpz_class> to_target;
};

SourceCounts per_node_counts(const Pmr& r) {
    SourceCounts sc;
    const std::size_t n = r.node_count();
    sc.finite.assign(n, false);
    sc.to_target.assign(n, 0);

    std::vector<std::uint32_t> outdeg(n, 0);
    for (RepEdge e = 0; e < r.edge_count(); ++e) ++outdeg[r.edge(e).src];
    std::deque<RepNode> ready;
    for (RepNode v = 0; v < n; ++v)
        if (outdeg[v] == 0) ready.push_back(v);
    const auto& in = r.in_edges();
    while (!ready.empty()) {
        RepNode v = ready.front();
        ready.pop_front();
        sc.finite[v] = true;
        mpz_class c = r.is_target(v) ? 1 : 0;
        for (RepEdge e : r.out_edges(v)) c += sc.to_target[r.edge(e).tgt];
        sc.to_target[v] = std::move(c);
        for (RepEdge e : in[v])
            if (--outdeg[r.edge(e).src] == 0) ready.push_back(r.edge(e).src);
    }
    return sc;
}

struct ChainPieces {
    std::vector<Automaton> atoms;
    ChainAutomaton chain;
    TracedPmr traced; // trimmed product with state/transition trace
};

ChainPieces build_chain_product(const GraphDb& g, const std::vector<ChainAtom>& atoms,
                                const EvalOptions& opt) {
    std::vector<Automaton> compiled;
    for (const auto& atom : atoms) {
        Automaton a = compile_lang(atom.lang, opt);
        if (a.kind() == AutomatonKind::Nfa)
            throw AmbiguityError("chain atom languages must be unambiguous automata");
        compiled.push_back(std::move(a));
    }
    std::vector<const Automaton*> ptrs;
    for (const auto& a : compiled) ptrs.push_back(&a);
    ChainAutomaton chain = concat_chain(ptrs);
    // Runs of the concatenation encode split choices, so the product must
    // tolerate ambiguity: distinct runs are distinct tuples.
    TracedPmr raw = traced_product(g, chain.automaton, /*allow_ambiguous=*/true);
    TracedPmr trimmed = traced_select(raw, NodePredicate::all(), NodePredicate::all());
    return ChainPieces{std::move(compiled), std::move(chain), std::move(trimmed)};
}

// Boundary sets U_0..U_k: a node u is in U_i when some tuple puts the
// boundary between atoms i and i+1 at u. Junction visits certify their own
// boundary; skip transitions and final junctions certify the boundaries
// their epsilon-atoms span.
std::vector<std::vector<NodeId>> boundary_sets(const ChainPieces& pieces) {
    const std::size_t k = pieces.chain.atom_count();
    const Pmr& r = pieces.traced.pmr;
    const Automaton& ca = pieces.chain.automaton;
    std::vector<std::set<NodeId>> acc(k + 1);

    for (RepNode v = 0; v < r.node_count(); ++v) {
        State s = pieces.traced.node_state[v];
        if (pieces.chain.is_junction(s)) acc[pieces.chain.junction_index(s)].insert(r.gamma_node(v));
    }
    for (RepEdge e = 0; e < r.edge_count(); ++e) {
        const auto& t = ca.transition(pieces.traced.edge_transition[e]);
        std::uint32_t m = pieces.chain.entered_segment(t);
        if (m == 0) continue;
        std::uint32_t h = pieces.chain.junction_index(t.from);
        NodeId u = r.gamma_node(r.edge(e).src);
        for (std::uint32_t i = h; i < m; ++i) acc[i].insert(u);
    }
    for (RepNode v : r.targets()) {
        State s = pieces.traced.node_state[v];
        std::uint32_t h = pieces.chain.junction_index(s);
        for (std::uint32_t i = h; i <= k; ++i) acc[i].insert(r.gamma_node(v));
    }

    std::vector<std::vector<NodeId>> out(k + 1);
    for (std::size_t i = 0; i <= k; ++i) out[i].assign(acc[i].begin(), acc[i].end());
    return out;
}

} // namespace

ChainResult eval_chain(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt) {
    const Query& query = q->kind == Query::Kind::Proj1 ? *q->children[0] : *q;
    if (query.kind != Query::Kind::Chain)
        throw UnsupportedError("eval_chain expects a chain(...) query");
    validate_chain_shape(query.atoms);

    ChainPieces pieces = build_chain_product(g, query.atoms, opt);
    auto boundaries = boundary_sets(pieces);
    const std::size_t k = pieces.chain.atom_count();

    bool any_mode = false;
    std::vector<Pmr> atom_pmrs;
    std::vector<GroupedPmr> atom_groups;
    for (std::size_t i = 0; i < k; ++i) {
        NodePredicate from = NodePredicate::of(
            std::unordered_set<NodeId>(boundaries[i].begin(), boundaries[i].end()));
        NodePredicate to = NodePredicate::of(
            std::unordered_set<NodeId>(boundaries[i + 1].begin(), boundaries[i + 1].end()));
        Pmr ri = select(product(g, pieces.atoms[i]), from, to);
        if (query.atoms[i].mode) {
            any_mode = true;
            switch (*query.atoms[i].mode) {
            case SelectorMode::Shortest: ri = shortest_filter(ri); break;
            case SelectorMode::RadixShortest: ri = radix_shortest_filter(ri); break;
            case SelectorMode::Simple:
                ri = simple_trail_filter(ri, PathMode::Simple, opt.path_cap);
                break;
            case SelectorMode::Trail:
                ri = simple_trail_filter(ri, PathMode::Trail, opt.path_cap);
                break;
            }
        }
        atom_groups.push_back(group(ri, GroupKind::Pairwise));
        atom_pmrs.push_back(std::move(ri));
    }

    // With per-atom filters the boundary sets are over-approximations; a
    // semi-join sweep over the endpoint-pair relations drops groups that no
    // full tuple can use. For pure chains the sweep keeps everything.
    if (any_mode) {
        std::vector<std::vector<std::pair<NodeId, NodeId>>> pairs(k);
        for (std::size_t i = 0; i < k; ++i)
            for (const auto& [src, tgt] : atom_groups[i].endpoints)
                pairs[i].emplace_back(*src, *tgt);

        std::vector<std::vector<bool>> alive(k);
        for (std::size_t i = 0; i < k; ++i) alive[i].assign(pairs[i].size(), true);
        // Forward: a pair survives when its source continues some prefix.
        std::set<NodeId> frontier;
        for (std::size_t j = 0; j < pairs[0].size(); ++j) frontier.insert(pairs[0][j].second);
        for (std::size_t i = 1; i < k; ++i) {
            std::set<NodeId> next;
            for (std::size_t j = 0; j < pairs[i].size(); ++j) {
                if (!frontier.count(pairs[i][j].first))
                    alive[i][j] = false;
                else
                    next.insert(pairs[i][j].second);
            }
            frontier = std::move(next);
        }
        // Backward symmetric sweep.
        std::set<NodeId> back;
        for (std::size_t j = 0; j < pairs[k - 1].size(); ++j)
            if (alive[k - 1][j]) back.insert(pairs[k - 1][j].first);
        for (std::size_t i = k - 1; i-- > 0;) {
            std::set<NodeId> next;
            for (std::size_t j = 0; j < pairs[i].size(); ++j) {
                if (alive[i][j] && !back.count(pairs[i][j].second)) alive[i][j] = false;
                if (alive[i][j]) next.insert(pairs[i][j].first);
            }
            back = std::move(next);
        }
        for (std::size_t i = 0; i < k; ++i) {
            GroupedPmr kept;
            kept.kind = GroupKind::Pairwise;
            for (std::size_t j = 0; j < pairs[i].size(); ++j)
                if (alive[i][j]) {
                    kept.groups.push_back(std::move(atom_groups[i].groups[j]));
                    kept.endpoints.push_back(atom_groups[i].endpoints[j]);
                }
            atom_groups[i] = std::move(kept);
        }
    }

    ChainResult result{std::move(pieces.traced.pmr), std::move(boundaries), std::move(atom_pmrs),
                       std::move(atom_groups)};
    return result;
}

ChainTabEnumerator::ChainTabEnumerator(const GraphDb&, const ChainResult& result)
    : result_(&result) {
    const std::size_t k = result.atom_groups.size();
    // Group indexes per atom, keyed and ordered by endpoints.
    std::vector<std::map<std::pair<NodeId, NodeId>, std::size_t>> by_pair(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < result.atom_groups[i].groups.size(); ++j) {
            const auto& [src, tgt] = result.atom_groups[i].endpoints[j];
            by_pair[i].emplace(std::make_pair(*src, *tgt), j);
        }

    // Join endpoint pairs along shared nodes, depth-first in sorted order.
    std::vector<std::size_t> chosen(k);
    auto rec = [&](auto&& self, std::size_t i, NodeId at) -> void {
        if (i == k) {
            tuples_.push_back(chosen);
            return;
        }
        for (const auto& [pair, j] : by_pair[i]) {
            if (i > 0 && pair.first != at) continue;
            chosen[i] = j;
            self(self, i + 1, pair.second);
        }
    };
    if (k > 0) rec(rec, 0, 0);
}

bool ChainTabEnumerator::open_tuple() {
    const std::size_t k = result_->atom_groups.size();
    while (tuple_ < tuples_.size()) {
        enums_.clear();
        paths_.assign(k, Path{});
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            enums_.emplace_back(result_->atom_groups[i].groups[tuples_[tuple_][i]]);
            ok = enums_[i].next(paths_[i]);
        }
        if (ok) {
            tuple_open_ = true;
            return true;
        }
        ++tuple_; // empty group: no rows for this tuple
    }
    return false;
}

bool ChainTabEnumerator::advance_position(std::size_t i) {
    if (enums_[i].next(paths_[i])) return true;
    if (i == 0) return false;
    if (!advance_position(i - 1)) return false;
    enums_[i] = PathEnumerator(result_->atom_groups[i].groups[tuples_[tuple_][i]]);
    return enums_[i].next(paths_[i]);
}

bool ChainTabEnumerator::next(ChainRow& out) {
    const std::size_t k = result_->atom_groups.size();
    if (k == 0) return false;
    if (!tuple_open_) {
        if (!open_tuple()) return false;
        out.paths = paths_;
        return true;
    }
    if (advance_position(k - 1)) {
        out.paths = paths_;
        return true;
    }
    tuple_open_ = false;
    ++tuple_;
    if (!open_tuple()) return false;
    out.paths = paths_;
    return true;
}

std::vector<std::pair<NodeId, CountResult>> eval_proj1(const GraphDb& g, const QueryPtr& q,
                                                       const EvalOptions& opt) {
    const Query& query = q->kind == Query::Kind::Proj1 ? *q->children[0] : *q;
    if (query.kind != Query::Kind::Chain)
        throw UnsupportedError("eval_proj1 expects proj1(chain(...))");
    validate_chain_shape(query.atoms);
    for (const auto& atom : query.atoms)
        if (atom.mode)
            throw UnsupportedError("proj1 counting does not support per-atom selector modes");

    ChainPieces pieces = build_chain_product(g, query.atoms, opt);
    const Pmr& r = pieces.traced.pmr;
    SourceCounts sc = per_node_counts(r);

    std::map<NodeId, CountResult> per_node;
    for (RepNode v : r.sources()) {
        NodeId u = r.gamma_node(v);
        auto& acc = per_node[u];
        if (!sc.finite[v])
            acc.infinite = true;
        else if (!acc.infinite)
            acc.value += sc.to_target[v];
    }
    return {per_node.begin(), per_node.end()};
}

} // namespace pathrep

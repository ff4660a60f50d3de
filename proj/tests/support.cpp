#include "support.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pathrep::testing {

std::string running_example_text() {
    return "# Transfer fragment of the bank accounts example\n"
           "edge t1 a1 a3 Transfer\n"
           "edge t2 a3 a2 Transfer\n"
           "edge t3 a2 a4 Transfer\n"
           "edge t4 a4 a6 Transfer\n"
           "edge t5 a6 a5 Transfer\n"
           "edge t6 a6 a3 Transfer\n"
           "edge t7 a3 a5 Transfer\n"
           "edge t8 a5 a1 Transfer\n";
}

GraphDb running_example_graph() { return load_graph_from_string(running_example_text()); }

std::string ladder_text(std::size_t n) {
    // x -> {u1,v1} -> m1 -> {u2,v2} -> m2 ... -> y, all labeled a.
    std::ostringstream out;
    std::size_t e = 0;
    auto mid = [&](std::size_t i) {
        return i == n ? std::string("y") : "m" + std::to_string(i);
    };
    std::string prev = "x";
    for (std::size_t i = 1; i <= n; ++i) {
        std::string u = "u" + std::to_string(i);
        std::string v = "v" + std::to_string(i);
        out << "edge g" << ++e << ' ' << prev << ' ' << u << " a\n";
        out << "edge g" << ++e << ' ' << prev << ' ' << v << " a\n";
        out << "edge g" << ++e << ' ' << u << ' ' << mid(i) << " a\n";
        out << "edge g" << ++e << ' ' << v << ' ' << mid(i) << " a\n";
        prev = mid(i);
    }
    return out.str();
}

GraphDb ladder_graph(std::size_t n) { return load_graph_from_string(ladder_text(n)); }

PmrBuilder& PmrBuilder::node(const std::string& handle, const std::string& graph_node) {
    auto id = pmr_.graph().find_node(graph_node);
    if (!id) throw std::runtime_error("fixture: unknown graph node " + graph_node);
    handles_[handle] = pmr_.add_node(*id);
    return *this;
}

PmrBuilder& PmrBuilder::edge(const std::string& from, const std::string& to,
                             const std::string& graph_edge) {
    auto id = pmr_.graph().find_edge(graph_edge);
    if (!id) throw std::runtime_error("fixture: unknown graph edge " + graph_edge);
    pmr_.add_edge(handles_.at(from), handles_.at(to), *id);
    return *this;
}

PmrBuilder& PmrBuilder::source(const std::string& handle) {
    pmr_.mark_source(handles_.at(handle));
    return *this;
}

PmrBuilder& PmrBuilder::target(const std::string& handle) {
    pmr_.mark_target(handles_.at(handle));
    return *this;
}

Pmr PmrBuilder::build(bool mark_trim) {
    pmr_.set_trim(mark_trim && check_trim(pmr_));
    return pmr_;
}

Pmr even_cycle_pmr(const GraphDb& g) {
    // r1 -t7-> a5 -t8-> a1 -t1-> a3 -t7-> a5 -t8-> a1 -t1-> r1; S = T = {r1}.
    return PmrBuilder(g)
        .node("r1", "a3")
        .node("b", "a5")
        .node("c", "a1")
        .node("d", "a3")
        .node("e", "a5")
        .node("f", "a1")
        .edge("r1", "b", "t7")
        .edge("b", "c", "t8")
        .edge("c", "d", "t1")
        .edge("d", "e", "t7")
        .edge("e", "f", "t8")
        .edge("f", "r1", "t1")
        .source("r1")
        .target("r1")
        .build();
}

Pmr double_diamond_pmr(const GraphDb& g) {
    return PmrBuilder(g)
        .node("r1", "a3")
        .node("p", "a5")
        .node("q", "a5")
        .node("r2", "a1")
        .edge("r1", "p", "t7")
        .edge("r1", "q", "t7")
        .edge("p", "r2", "t8")
        .edge("q", "r2", "t8")
        .source("r1")
        .target("r2")
        .build();
}

Automaton transfer_chain_dfa() {
    Automaton a;
    State q1 = a.add_state(true, false);
    State q2 = a.add_state(false, false);
    State q3 = a.add_state(false, true);
    a.add_transition(q1, "Transfer", q2);
    a.add_transition(q2, "Transfer", q3);
    return a;
}

Automaton transfer_chain_ambiguous() {
    Automaton a;
    State q1 = a.add_state(true, false);
    State q2 = a.add_state(false, false);
    State q2p = a.add_state(false, false);
    State q3 = a.add_state(false, true);
    a.add_transition(q1, "Transfer", q2);
    a.add_transition(q2, "Transfer", q3);
    a.add_transition(q1, "Transfer", q2p);
    a.add_transition(q2p, "Transfer", q3);
    return a;
}

Automaton universal_automaton(const GraphDb& g) {
    Automaton a;
    State q = a.add_state(true, true);
    for (LabelId l = 0; l < g.label_count(); ++l) a.add_transition(q, g.label_name(l), q);
    return a;
}

GraphDb grouping_example_graph() {
    return load_graph_from_string("edge ab a b red\n"
                                  "edge bc b c red\n"
                                  "edge ae a e red\n"
                                  "edge ec e c red\n"
                                  "edge de d e red\n"
                                  "edge ef e f red\n");
}

Pmr grouping_example_pmr(const GraphDb& g) {
    return PmrBuilder(g)
        .node("a", "a")
        .node("b", "b")
        .node("c", "c")
        .node("d", "d")
        .node("e", "e")
        .node("f", "f")
        .edge("a", "b", "ab")
        .edge("b", "c", "bc")
        .edge("a", "e", "ae")
        .edge("e", "c", "ec")
        .edge("d", "e", "de")
        .edge("e", "f", "ef")
        .source("a")
        .source("d")
        .target("c")
        .target("f")
        .build();
}

Path make_path(const GraphDb& g, const std::vector<std::string>& names) {
    assert(names.size() % 2 == 1);
    Path p;
    p.graph = &g;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i % 2 == 0) {
            auto id = g.find_node(names[i]);
            if (!id) throw std::runtime_error("fixture: unknown node " + names[i]);
            p.nodes.push_back(*id);
        } else {
            auto id = g.find_edge(names[i]);
            if (!id) throw std::runtime_error("fixture: unknown edge " + names[i]);
            p.edges.push_back(*id);
        }
    }
    assert(path_is_valid(p));
    return p;
}

GraphDb random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges,
                     std::size_t n_labels, bool acyclic) {
    std::size_t n = 1 + rng.below(max_nodes);
    std::size_t m = rng.below(max_edges + 1);
    GraphDb g;
    for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t s = rng.below(n);
        std::size_t t = rng.below(n);
        if (acyclic) {
            if (s == t) continue;
            if (s > t) std::swap(s, t); // edges only go up the node order
        }
        std::string label(1, static_cast<char>('a' + rng.below(n_labels)));
        g.add_edge("e" + std::to_string(e), "n" + std::to_string(s), "n" + std::to_string(t),
                   label);
    }
    return g;
}

RegexPtr random_regex(Rng& rng, std::size_t depth, const std::vector<std::string>& labels) {
    if (depth == 0 || rng.below(4) == 0) {
        if (rng.below(8) == 0) return rx_epsilon();
        return rx_label(labels[rng.below(labels.size())]);
    }
    switch (rng.below(5)) {
    case 0: return rx_concat(random_regex(rng, depth - 1, labels), random_regex(rng, depth - 1, labels));
    case 1: return rx_union(random_regex(rng, depth - 1, labels), random_regex(rng, depth - 1, labels));
    case 2: return rx_star(random_regex(rng, depth - 1, labels));
    case 3: return rx_plus(random_regex(rng, depth - 1, labels));
    default: return rx_optional(random_regex(rng, depth - 1, labels));
    }
}

Automaton random_nfa(Rng& rng, std::size_t max_states, std::size_t n_symbols) {
    Automaton a;
    std::size_t n = 1 + rng.below(max_states);
    for (std::size_t i = 0; i < n; ++i)
        a.add_state(rng.below(3) == 0, rng.below(3) == 0);
    if (a.initial_states().empty()) a.set_initial(static_cast<State>(rng.below(n)));
    if (a.final_states().empty()) a.set_final(static_cast<State>(rng.below(n)));
    std::size_t m = rng.below(2 * n * n_symbols + 1);
    for (std::size_t t = 0; t < m; ++t) {
        std::string sym(1, static_cast<char>('a' + rng.below(n_symbols)));
        a.add_transition(static_cast<State>(rng.below(n)), sym,
                         static_cast<State>(rng.below(n)));
    }
    return a;
}

namespace {

Pmr random_pmr_impl(Rng& rng, const GraphDb& g, std::size_t max_nodes, bool acyclic) {
    Pmr r(g);
    std::size_t n = 1 + rng.below(max_nodes);
    for (std::size_t i = 0; i < n; ++i)
        r.add_node(static_cast<NodeId>(rng.below(g.node_count())));
    // Candidate edges: rep pairs whose gamma images are connected. Exact
    // duplicates (same endpoints, same gamma) are skipped; they carry real
    // multiplicity but the word view of a PMR cannot round-trip them.
    std::set<std::tuple<RepNode, RepNode, EdgeId>> used;
    std::size_t attempts = 3 * n;
    for (std::size_t i = 0; i < attempts; ++i) {
        RepNode s = static_cast<RepNode>(rng.below(n));
        RepNode t = static_cast<RepNode>(rng.below(n));
        if (acyclic) {
            if (s == t) continue;
            if (s > t) std::swap(s, t);
        }
        NodeId gs = r.gamma_node(s), gt = r.gamma_node(t);
        std::vector<EdgeId> candidates;
        for (EdgeId e : g.out_edges(gs))
            if (g.edge(e).tgt == gt) candidates.push_back(e);
        if (candidates.empty()) continue;
        EdgeId gamma = candidates[rng.below(candidates.size())];
        if (used.emplace(s, t, gamma).second) r.add_edge(s, t, gamma);
    }
    for (RepNode v = 0; v < r.node_count(); ++v) {
        if (rng.below(3) == 0) r.mark_source(v);
        if (rng.below(3) == 0) r.mark_target(v);
    }
    if (r.sources().empty()) r.mark_source(static_cast<RepNode>(rng.below(n)));
    if (r.targets().empty()) r.mark_target(static_cast<RepNode>(rng.below(n)));
    r.set_trim(check_trim(r));
    return r;
}

} // namespace

Pmr random_pmr(Rng& rng, const GraphDb& g, std::size_t max_nodes) {
    return random_pmr_impl(rng, g, max_nodes, false);
}

Pmr random_acyclic_pmr(Rng& rng, const GraphDb& g, std::size_t max_nodes) {
    return random_pmr_impl(rng, g, max_nodes, true);
}

namespace {

struct MatchMemo {
    std::map<std::tuple<const RegexNode*, std::size_t, std::size_t>, bool> memo;
    const std::vector<std::string>* word;

    bool match(const RegexPtr& e, std::size_t i, std::size_t j) {
        auto key = std::make_tuple(e.get(), i, j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo[key] = false; // cycle guard for star/plus self-reference
        bool ok = false;
        switch (e->kind) {
        case RegexKind::Epsilon: ok = (i == j); break;
        case RegexKind::Label: ok = (j == i + 1 && (*word)[i] == e->label); break;
        case RegexKind::Concat:
            for (std::size_t m = i; m <= j && !ok; ++m)
                ok = match(e->left, i, m) && match(e->right, m, j);
            break;
        case RegexKind::Union: ok = match(e->left, i, j) || match(e->right, i, j); break;
        case RegexKind::Star:
            ok = (i == j);
            for (std::size_t m = i + 1; m <= j && !ok; ++m)
                ok = match(e->left, i, m) && match(e, m, j);
            break;
        case RegexKind::Plus:
            for (std::size_t m = i + 1; m <= j && !ok; ++m)
                ok = match(e->left, i, m) && (m == j || match(e, m, j));
            if (!ok && match(e->left, i, j)) ok = true;
            break;
        case RegexKind::Optional: ok = (i == j) || match(e->left, i, j); break;
        }
        memo[key] = ok;
        return ok;
    }
};

} // namespace

bool regex_matches(const RegexPtr& e, const std::vector<std::string>& word) {
    MatchMemo m;
    m.word = &word;
    return m.match(e, 0, word.size());
}

mpz_class count_accepting_runs(const Automaton& a, const std::vector<std::string>& word) {
    std::vector<mpz_class> runs(a.state_count(), 0);
    for (State q = 0; q < a.state_count(); ++q)
        if (a.is_initial(q)) runs[q] = 1;
    for (const auto& sym : word) {
        std::vector<mpz_class> next(a.state_count(), 0);
        auto s = a.find_symbol(sym);
        if (s)
            for (const auto& t : a.transitions())
                if (t.symbol == *s) next[t.to] += runs[t.from];
        runs = std::move(next);
    }
    mpz_class total = 0;
    for (State q = 0; q < a.state_count(); ++q)
        if (a.is_final(q)) total += runs[q];
    return total;
}

std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet,
                                                std::size_t max_len) {
    std::vector<std::vector<std::string>> words{{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t level_end = words.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (const auto& sym : alphabet) {
                auto w = words[i];
                w.push_back(sym);
                words.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return words;
}

namespace {

void bounded_dfs(const Pmr& r, RepNode at, std::size_t budget, Path& current, PathMultiset& out) {
    if (r.is_target(at)) out.insert(current);
    if (budget == 0) return;
    for (RepEdge e : r.out_edges(at)) {
        const auto& rec = r.edge(e);
        current.nodes.push_back(r.gamma_node(rec.tgt));
        current.edges.push_back(rec.gamma);
        bounded_dfs(r, rec.tgt, budget - 1, current, out);
        current.edges.pop_back();
        current.nodes.pop_back();
    }
}

} // namespace

PathMultiset enumerate_bounded(const Pmr& r, std::size_t max_len) {
    PathMultiset out;
    for (RepNode v : r.sources()) {
        Path p = length_zero_path(r.graph(), r.gamma_node(v));
        bounded_dfs(r, v, max_len, p, out);
    }
    return out;
}

std::uint64_t bounded_walk_estimate(const Pmr& r, std::size_t max_len, std::uint64_t cap) {
    std::vector<std::uint64_t> walks(r.node_count(), 0);
    for (RepNode v : r.sources()) walks[v] = 1;
    std::uint64_t total = 0;
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (std::uint64_t w : walks) {
            total += w;
            if (total >= cap) return cap;
        }
        std::vector<std::uint64_t> next(r.node_count(), 0);
        for (RepEdge e = 0; e < r.edge_count(); ++e) {
            const auto& rec = r.edge(e);
            next[rec.tgt] += walks[rec.src];
            if (next[rec.tgt] >= cap) next[rec.tgt] = cap;
        }
        walks = std::move(next);
    }
    return total;
}

PathMultiset filter_shortest(const PathMultiset& m) {
    std::map<std::pair<NodeId, NodeId>, std::size_t> best;
    for (const auto& [p, mult] : m.entries()) {
        auto key = std::make_pair(p.src(), p.tgt());
        auto it = best.find(key);
        if (it == best.end() || p.length() < it->second) best[key] = p.length();
    }
    PathMultiset out;
    for (const auto& [p, mult] : m.entries())
        if (p.length() == best.at({p.src(), p.tgt()})) out.insert(p, mult);
    return out;
}

PathMultiset filter_radix_shortest(const PathMultiset& m) {
    PathMultiset shortest = filter_shortest(m);
    std::map<std::pair<NodeId, NodeId>, std::vector<std::string>> least;
    for (const auto& [p, mult] : shortest.entries()) {
        auto key = std::make_pair(p.src(), p.tgt());
        auto word = label_word(p);
        auto it = least.find(key);
        if (it == least.end() || word < it->second) least[key] = word;
    }
    PathMultiset out;
    for (const auto& [p, mult] : shortest.entries())
        if (label_word(p) == least.at({p.src(), p.tgt()})) out.insert(p, mult);
    return out;
}

bool is_simple_path(const Path& p) {
    std::set<NodeId> seen(p.nodes.begin(), p.nodes.end());
    return seen.size() == p.nodes.size();
}

bool is_trail_path(const Path& p) {
    std::set<EdgeId> seen(p.edges.begin(), p.edges.end());
    return seen.size() == p.edges.size();
}

PathMultiset filter_simple(const PathMultiset& m) {
    PathMultiset out;
    for (const auto& [p, mult] : m.entries())
        if (is_simple_path(p)) out.insert(p, mult);
    return out;
}

PathMultiset filter_trail(const PathMultiset& m) {
    PathMultiset out;
    for (const auto& [p, mult] : m.entries())
        if (is_trail_path(p)) out.insert(p, mult);
    return out;
}

} // namespace pathrep::testing

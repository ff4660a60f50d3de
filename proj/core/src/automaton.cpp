#include "pathrep/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pathrep/errors.hpp"

namespace pathrep {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (std::uint64_t(a) << 32) | b;
}

} // namespace

State Automaton::add_state(bool initial, bool final_state) {
    State q = static_cast<State>(initial_.size());
    initial_.push_back(initial);
    final_.push_back(final_state);
    out_.emplace_back();
    kind_.reset();
    return q;
}

void Automaton::set_initial(State q, bool on) {
    initial_[q] = on;
    kind_.reset();
}

void Automaton::set_final(State q, bool on) {
    final_[q] = on;
    kind_.reset();
}

Symbol Automaton::intern_symbol(std::string_view name) {
    auto it = symbol_ids_.find(std::string(name));
    if (it != symbol_ids_.end()) return it->second;
    Symbol s = static_cast<Symbol>(symbols_.size());
    symbols_.emplace_back(name);
    symbol_ids_.emplace(symbols_.back(), s);
    return s;
}

std::optional<Symbol> Automaton::find_symbol(std::string_view name) const {
    auto it = symbol_ids_.find(std::string(name));
    if (it == symbol_ids_.end()) return std::nullopt;
    return it->second;
}

void Automaton::add_transition(State from, Symbol symbol, State to) {
    assert(from < state_count() && to < state_count() && symbol < symbols_.size());
    // 21 bits per component is plenty for any automaton we can hold.
    std::uint64_t key = (std::uint64_t(from) << 42) | (std::uint64_t(symbol) << 21) | to;
    if (!transition_keys_.insert(key).second) return;
    out_[from].push_back(static_cast<std::uint32_t>(transitions_.size()));
    transitions_.push_back(Transition{from, symbol, to});
    kind_.reset();
}

void Automaton::add_transition(State from, std::string_view symbol, State to) {
    add_transition(from, intern_symbol(symbol), to);
}

std::vector<State> Automaton::initial_states() const {
    std::vector<State> out;
    for (State q = 0; q < state_count(); ++q)
        if (initial_[q]) out.push_back(q);
    return out;
}

std::vector<State> Automaton::final_states() const {
    std::vector<State> out;
    for (State q = 0; q < state_count(); ++q)
        if (final_[q]) out.push_back(q);
    return out;
}

bool Automaton::accepts_epsilon() const {
    for (State q = 0; q < state_count(); ++q)
        if (initial_[q] && final_[q]) return true;
    return false;
}

bool Automaton::deterministic() const {
    if (initial_states().size() > 1) return false;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& t : transitions_)
        if (!seen.insert(pair_key(t.from, t.symbol)).second) return false;
    return true;
}

AutomatonKind Automaton::kind() const {
    if (!kind_) {
        if (deterministic())
            kind_ = AutomatonKind::Dfa;
        else if (check_unambiguous(*this))
            kind_ = AutomatonKind::Ufa;
        else
            kind_ = AutomatonKind::Nfa;
    }
    return *kind_;
}

bool Automaton::accepts(const std::vector<std::string>& word) const {
    std::vector<bool> alive = initial_;
    for (const auto& label : word) {
        auto sym = find_symbol(label);
        if (!sym) return false;
        std::vector<bool> next(state_count(), false);
        bool any = false;
        for (const auto& t : transitions_) {
            if (t.symbol == *sym && alive[t.from]) {
                next[t.to] = true;
                any = true;
            }
        }
        if (!any) return false;
        alive = std::move(next);
    }
    for (State q = 0; q < state_count(); ++q)
        if (alive[q] && final_[q]) return true;
    return false;
}

namespace {

// Two accepting runs on the same word visit an off-diagonal synchronized
// state pair somewhere. With `nonempty_only`, the witness word must have at
// least one symbol, i.e. the pair must be strictly after the seeds or
// strictly before the finals.
bool pair_ambiguity(const Automaton& a, bool nonempty_only) {
    const std::size_t n = a.state_count();
    if (n == 0) return false;

    // symbol -> successors / predecessors, per state.
    std::vector<std::unordered_map<Symbol, std::vector<State>>> succ(n), pred(n);
    for (const auto& t : a.transitions()) {
        succ[t.from][t.symbol].push_back(t.to);
        pred[t.to][t.symbol].push_back(t.from);
    }

    auto pair_step = [&](std::vector<std::unordered_map<Symbol, std::vector<State>>>& adj,
                         State p, State q, auto&& visit) {
        for (const auto& [sym, ps] : adj[p]) {
            auto it = adj[q].find(sym);
            if (it == adj[q].end()) continue;
            for (State p2 : ps)
                for (State q2 : it->second) visit(p2, q2);
        }
    };

    // Forward closure from I x I; pairs first seen via >= 1 step go to plus.
    std::unordered_set<std::uint64_t> reach_any, reach_plus;
    std::deque<std::pair<State, State>> queue;
    auto initial = a.initial_states();
    for (State p : initial)
        for (State q : initial)
            if (reach_any.insert(pair_key(p, q)).second) queue.emplace_back(p, q);
    std::vector<std::pair<State, State>> reached_order(queue.begin(), queue.end());
    std::size_t scan = 0;
    while (scan < reached_order.size()) {
        auto [p, q] = reached_order[scan++];
        pair_step(succ, p, q, [&](State p2, State q2) {
            reach_plus.insert(pair_key(p2, q2));
            if (reach_any.insert(pair_key(p2, q2)).second) reached_order.emplace_back(p2, q2);
        });
    }

    // Backward closure from F x F, restricted to forward-reachable pairs.
    std::unordered_set<std::uint64_t> co_any, co_plus;
    std::deque<std::pair<State, State>> back;
    for (auto [p, q] : reached_order)
        if (a.is_final(p) && a.is_final(q) && co_any.insert(pair_key(p, q)).second)
            back.emplace_back(p, q);
    std::vector<std::pair<State, State>> co_order(back.begin(), back.end());
    scan = 0;
    while (scan < co_order.size()) {
        auto [p, q] = co_order[scan++];
        pair_step(pred, p, q, [&](State p2, State q2) {
            if (!reach_any.count(pair_key(p2, q2))) return;
            co_plus.insert(pair_key(p2, q2));
            if (co_any.insert(pair_key(p2, q2)).second) co_order.emplace_back(p2, q2);
        });
    }

    for (auto [p, q] : co_order) {
        if (p == q) continue;
        auto key = pair_key(p, q);
        if (!nonempty_only) return true;
        if (reach_plus.count(key) || co_plus.count(key)) return true;
    }
    return false;
}

} // namespace

bool check_unambiguous(const Automaton& a) { return !pair_ambiguity(a, false); }

bool check_unambiguous_nonempty(const Automaton& a) { return !pair_ambiguity(a, true); }

Automaton reverse(const Automaton& a) {
    Automaton r;
    for (State q = 0; q < a.state_count(); ++q) r.add_state(a.is_final(q), a.is_initial(q));
    for (const auto& s : a.alphabet()) r.intern_symbol(s);
    for (const auto& t : a.transitions()) r.add_transition(t.to, a.symbol_name(t.symbol), t.from);
    return r;
}

namespace {

struct GlushkovInfo {
    bool nullable;
    std::vector<std::uint32_t> first, last; // positions
};

// Positions are numbered in label-traversal order; position p carries label
// labels[p]. follow[p] collects the positions that may come next.
GlushkovInfo glushkov_walk(const RegexPtr& e, std::vector<std::string>& labels,
                           std::vector<std::vector<std::uint32_t>>& follow) {
    auto connect = [&](const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) {
        for (auto p : from)
            for (auto q : to) follow[p].push_back(q);
    };
    auto merged = [](std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    switch (e->kind) {
    case RegexKind::Epsilon: return {true, {}, {}};
    case RegexKind::Label: {
        std::uint32_t p = static_cast<std::uint32_t>(labels.size());
        labels.push_back(e->label);
        follow.emplace_back();
        return {false, {p}, {p}};
    }
    case RegexKind::Concat: {
        auto l = glushkov_walk(e->left, labels, follow);
        auto r = glushkov_walk(e->right, labels, follow);
        connect(l.last, r.first);
        return {l.nullable && r.nullable,
                l.nullable ? merged(l.first, r.first) : l.first,
                r.nullable ? merged(r.last, l.last) : r.last};
    }
    case RegexKind::Union: {
        auto l = glushkov_walk(e->left, labels, follow);
        auto r = glushkov_walk(e->right, labels, follow);
        return {l.nullable || r.nullable, merged(l.first, r.first), merged(l.last, r.last)};
    }
    case RegexKind::Star:
    case RegexKind::Plus: {
        auto l = glushkov_walk(e->left, labels, follow);
        connect(l.last, l.first);
        return {e->kind == RegexKind::Star || l.nullable, l.first, l.last};
    }
    case RegexKind::Optional: {
        auto l = glushkov_walk(e->left, labels, follow);
        return {true, l.first, l.last};
    }
    }
    return {true, {}, {}};
}

} // namespace

Automaton glushkov(const RegexPtr& e) {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint32_t>> follow;
    GlushkovInfo info = glushkov_walk(e, labels, follow);

    Automaton a;
    State start = a.add_state(true, info.nullable);
    std::vector<State> pos_state(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) pos_state[p] = a.add_state(false, false);
    for (auto p : info.last) a.set_final(pos_state[p], true);
    for (auto p : info.first) a.add_transition(start, labels[p], pos_state[p]);
    for (std::size_t p = 0; p < labels.size(); ++p)
        for (auto q : follow[p]) a.add_transition(pos_state[p], labels[q], pos_state[q]);
    return a;
}

Automaton determinize(const Automaton& a, std::size_t state_cap) {
    Automaton d;
    for (const auto& s : a.alphabet()) d.intern_symbol(s);

    auto initial = a.initial_states();
    if (initial.empty()) return d; // empty language, no states

    std::map<std::vector<State>, State> subset_id;
    std::deque<const std::vector<State>*> queue;

    auto intern = [&](std::vector<State> subset) -> State {
        auto it = subset_id.find(subset);
        if (it != subset_id.end()) return it->second;
        if (subset_id.size() >= state_cap)
            throw ResourceLimitError("determinization exceeded the state cap of " +
                                     std::to_string(state_cap));
        bool final_subset =
            std::any_of(subset.begin(), subset.end(), [&](State q) { return a.is_final(q); });
        State id = d.add_state(subset_id.empty(), final_subset);
        auto [pos, inserted] = subset_id.emplace(std::move(subset), id);
        (void)inserted;
        queue.push_back(&pos->first);
        return id;
    };

    intern(initial);
    while (!queue.empty()) {
        const std::vector<State>& subset = *queue.front();
        queue.pop_front();
        State from = subset_id.at(subset);
        // symbol -> successor subset
        std::map<Symbol, std::vector<State>> next;
        for (State q : subset)
            for (auto ti : a.out_transitions(q)) {
                const auto& t = a.transition(ti);
                next[t.symbol].push_back(t.to);
            }
        for (auto& [sym, targets] : next) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            State to = intern(std::move(targets));
            d.add_transition(from, sym, to);
        }
    }
    return d;
}

Automaton trim_dead_states(const Automaton& a) {
    const std::size_t n = a.state_count();
    std::vector<bool> reach(n, false), coreach(n, false);

    std::deque<State> queue;
    for (State q : a.initial_states()) {
        reach[q] = true;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (auto ti : a.out_transitions(q)) {
            State to = a.transition(ti).to;
            if (!reach[to]) {
                reach[to] = true;
                queue.push_back(to);
            }
        }
    }

    std::vector<std::vector<State>> preds(n);
    for (const auto& t : a.transitions()) preds[t.to].push_back(t.from);
    for (State q : a.final_states()) {
        coreach[q] = true;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (State p : preds[q])
            if (!coreach[p]) {
                coreach[p] = true;
                queue.push_back(p);
            }
    }

    Automaton out;
    for (const auto& s : a.alphabet()) out.intern_symbol(s);
    std::vector<State> remap(n, UINT32_MAX);
    for (State q = 0; q < n; ++q)
        if (reach[q] && coreach[q]) remap[q] = out.add_state(a.is_initial(q), a.is_final(q));
    for (const auto& t : a.transitions())
        if (remap[t.from] != UINT32_MAX && remap[t.to] != UINT32_MAX)
            out.add_transition(remap[t.from], a.symbol_name(t.symbol), remap[t.to]);
    return out;
}

Automaton merge_equivalent_states(const Automaton& a) {
    assert(a.deterministic());
    const std::size_t n = a.state_count();
    if (n == 0) return a;

    std::vector<std::uint32_t> block(n);
    for (State q = 0; q < n; ++q) block[q] = a.is_final(q) ? 1 : 0;

    // (symbol -> successor transition), per state, for signature building.
    std::vector<std::vector<std::pair<Symbol, State>>> step(n);
    for (const auto& t : a.transitions()) step[t.from].emplace_back(t.symbol, t.to);
    for (auto& s : step) std::sort(s.begin(), s.end());

    for (;;) {
        std::map<std::vector<std::int64_t>, std::uint32_t> sig_block;
        std::vector<std::uint32_t> next(n);
        for (State q = 0; q < n; ++q) {
            std::vector<std::int64_t> sig;
            sig.push_back(block[q]);
            for (auto [sym, to] : step[q]) {
                sig.push_back(sym);
                sig.push_back(block[to]);
            }
            auto [it, inserted] =
                sig_block.emplace(std::move(sig), static_cast<std::uint32_t>(sig_block.size()));
            (void)inserted;
            next[q] = it->second;
        }
        bool changed = false;
        for (State q = 0; q < n; ++q) changed |= (next[q] != block[q]);
        block = std::move(next);
        if (!changed) break;
    }

    std::uint32_t block_count = *std::max_element(block.begin(), block.end()) + 1;
    Automaton out;
    for (const auto& s : a.alphabet()) out.intern_symbol(s);
    for (std::uint32_t b = 0; b < block_count; ++b) out.add_state(false, false);
    for (State q = 0; q < n; ++q) {
        if (a.is_initial(q)) out.set_initial(block[q]);
        if (a.is_final(q)) out.set_final(block[q]);
    }
    for (const auto& t : a.transitions())
        out.add_transition(block[t.from], a.symbol_name(t.symbol), block[t.to]);
    return out;
}

Automaton regex_to_ufa(const RegexPtr& e, std::size_t state_cap) {
    return merge_equivalent_states(trim_dead_states(determinize(glushkov(e), state_cap)));
}

std::vector<mpz_class> accepting_runs_by_length(const Automaton& a, std::size_t max_len) {
    const std::size_t n = a.state_count();
    std::vector<mpz_class> counts;
    counts.reserve(max_len + 1);
    std::vector<mpz_class> vec(n, 0);
    for (State q = 0; q < n; ++q)
        if (a.is_initial(q)) vec[q] = 1;
    for (std::size_t len = 0;; ++len) {
        mpz_class total = 0;
        for (State q = 0; q < n; ++q)
            if (a.is_final(q)) total += vec[q];
        counts.push_back(total);
        if (len == max_len) break;
        std::vector<mpz_class> next(n, 0);
        for (const auto& t : a.transitions()) next[t.to] += vec[t.from];
        vec = std::move(next);
    }
    return counts;
}

Automaton intersection_product(const Automaton& a, const Automaton& b) {
    Automaton out;
    std::unordered_map<std::uint64_t, State> pair_state;
    std::deque<std::pair<State, State>> queue;
    auto intern = [&](State p, State q) {
        auto key = pair_key(p, q);
        auto it = pair_state.find(key);
        if (it != pair_state.end()) return it->second;
        State s = out.add_state(a.is_initial(p) && b.is_initial(q),
                                a.is_final(p) && b.is_final(q));
        pair_state.emplace(key, s);
        queue.emplace_back(p, q);
        return s;
    };
    for (State p : a.initial_states())
        for (State q : b.initial_states()) intern(p, q);

    std::vector<std::unordered_map<std::string, std::vector<State>>> succ_b(b.state_count());
    for (const auto& t : b.transitions())
        succ_b[t.from][b.symbol_name(t.symbol)].push_back(t.to);

    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        State from = pair_state.at(pair_key(p, q));
        for (auto ti : a.out_transitions(p)) {
            const auto& t = a.transition(ti);
            const std::string& sym = a.symbol_name(t.symbol);
            auto it = succ_b[q].find(sym);
            if (it == succ_b[q].end()) continue;
            for (State q2 : it->second) out.add_transition(from, sym, intern(t.to, q2));
        }
    }
    return out;
}

bool language_equivalent(const Automaton& a, const Automaton& b, std::size_t state_cap) {
    Automaton da = determinize(a, state_cap);
    Automaton db = determinize(b, state_cap);

    // Pair walk over partial DFAs; UINT32_MAX plays the dead sink.
    constexpr State kSink = UINT32_MAX;
    auto da_init = da.initial_states();
    auto db_init = db.initial_states();
    State sa = da_init.empty() ? kSink : da_init[0];
    State sb = db_init.empty() ? kSink : db_init[0];

    auto step_fn = [](const Automaton& d) {
        std::unordered_map<std::uint64_t, State> step;
        for (const auto& t : d.transitions()) step[pair_key(t.from, t.symbol)] = t.to;
        return step;
    };
    auto step_a = step_fn(da);
    auto step_b = step_fn(db);

    std::vector<std::string> syms;
    for (const auto& s : da.alphabet()) syms.push_back(s);
    for (const auto& s : db.alphabet())
        if (!da.find_symbol(s)) syms.push_back(s);

    std::unordered_set<std::uint64_t> seen;
    std::deque<std::pair<State, State>> queue;
    queue.emplace_back(sa, sb);
    seen.insert(pair_key(sa, sb));
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        bool fa = p != kSink && da.is_final(p);
        bool fb = q != kSink && db.is_final(q);
        if (fa != fb) return false;
        for (const auto& sym : syms) {
            State p2 = kSink, q2 = kSink;
            if (p != kSink) {
                if (auto s = da.find_symbol(sym)) {
                    auto it = step_a.find(pair_key(p, *s));
                    if (it != step_a.end()) p2 = it->second;
                }
            }
            if (q != kSink) {
                if (auto s = db.find_symbol(sym)) {
                    auto it = step_b.find(pair_key(q, *s));
                    if (it != step_b.end()) q2 = it->second;
                }
            }
            if (p2 == kSink && q2 == kSink) continue;
            if (seen.insert(pair_key(p2, q2)).second) queue.emplace_back(p2, q2);
        }
    }
    return true;
}

std::uint32_t ChainAutomaton::junction_index(State q) const {
    for (std::uint32_t i = 0; i < junction.size(); ++i)
        if (junction[i] == q) return i;
    assert(false && "not a junction state");
    return UINT32_MAX;
}

std::uint32_t ChainAutomaton::entered_segment(const Automaton::Transition& t) const {
    if (!is_junction(t.from)) return 0;
    if (is_junction(t.to)) return junction_index(t.to);
    return segment_of[t.to];
}

ChainAutomaton concat_chain(const std::vector<const Automaton*>& atoms) {
    const std::size_t k = atoms.size();
    assert(k >= 1);
    for (const auto* atom : atoms)
        if (atom->kind() == AutomatonKind::Nfa)
            throw AmbiguityError("chain atoms must be unambiguous automata");

    ChainAutomaton chain;
    Automaton& a = chain.automaton;
    chain.atom_accepts_epsilon.assign(k + 1, false);
    for (std::size_t i = 1; i <= k; ++i)
        chain.atom_accepts_epsilon[i] = atoms[i - 1]->accepts_epsilon();

    // Interior states of each atom, then junction states j_0..j_k.
    std::vector<std::vector<State>> embed(k);
    for (std::size_t i = 0; i < k; ++i) {
        embed[i].resize(atoms[i]->state_count());
        for (State q = 0; q < atoms[i]->state_count(); ++q) {
            embed[i][q] = a.add_state(false, false);
            chain.segment_of.push_back(static_cast<std::uint32_t>(i + 1));
        }
    }
    chain.junction.resize(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
        chain.junction[i] = a.add_state(false, false);
        chain.segment_of.push_back(0);
    }

    // Interior transitions.
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& t : atoms[i]->transitions())
            a.add_transition(embed[i][t.from], atoms[i]->symbol_name(t.symbol), embed[i][t.to]);

    // Exit copies: completing segment i lands on junction j_i.
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& t : atoms[i]->transitions())
            if (atoms[i]->is_final(t.to))
                a.add_transition(embed[i][t.from], atoms[i]->symbol_name(t.symbol),
                                 chain.junction[i + 1]);

    // Entry and through copies from each junction j_h into segment m, for
    // every m whose preceding atoms h+1..m-1 all accept the empty word.
    for (std::size_t h = 0; h < k; ++h) {
        for (std::size_t m = h + 1; m <= k; ++m) {
            if (m > h + 1 && !chain.atom_accepts_epsilon[m - 1]) break;
            const Automaton& atom = *atoms[m - 1];
            for (const auto& t : atom.transitions()) {
                if (!atom.is_initial(t.from)) continue;
                a.add_transition(chain.junction[h], atom.symbol_name(t.symbol),
                                 embed[m - 1][t.to]);
                if (atom.is_final(t.to))
                    a.add_transition(chain.junction[h], atom.symbol_name(t.symbol),
                                     chain.junction[m]);
            }
        }
    }

    // Single initial junction; a final junction j_h needs all of atoms
    // h+1..k to accept the empty word.
    a.set_initial(chain.junction[0]);
    for (std::size_t h = k + 1; h-- > 0;) {
        bool eps_suffix = true;
        for (std::size_t i = h + 1; i <= k; ++i) eps_suffix &= chain.atom_accepts_epsilon[i];
        if (eps_suffix) a.set_final(chain.junction[h]);
    }
    return chain;
}

namespace {

void parse_automaton_lines(std::istream& in, Automaton& a) {
    std::unordered_map<std::string, State> state_ids;
    struct PendingTransition {
        std::string from, label, to;
        std::size_t line;
    };
    std::vector<PendingTransition> pending;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tok(line);
        std::string kind;
        if (!(tok >> kind)) continue;
        if (kind == "state") {
            std::string id;
            if (!(tok >> id)) throw FormatError("expected 'state <id> [initial] [final]'", lineno);
            if (state_ids.count(id)) throw FormatError("duplicate state id '" + id + "'", lineno);
            bool initial = false, final_state = false;
            std::string flag;
            while (tok >> flag) {
                if (flag == "initial")
                    initial = true;
                else if (flag == "final")
                    final_state = true;
                else
                    throw FormatError("unknown state flag '" + flag + "'", lineno);
            }
            state_ids.emplace(id, a.add_state(initial, final_state));
        } else if (kind == "trans") {
            PendingTransition t;
            std::string extra;
            if (!(tok >> t.from >> t.label >> t.to) || (tok >> extra))
                throw FormatError("expected 'trans <from> <label> <to>'", lineno);
            t.line = lineno;
            pending.push_back(std::move(t));
        } else {
            throw FormatError("unknown directive '" + kind + "'", lineno);
        }
    }
    for (const auto& t : pending) {
        auto from = state_ids.find(t.from);
        auto to = state_ids.find(t.to);
        if (from == state_ids.end())
            throw FormatError("unknown state '" + t.from + "'", t.line);
        if (to == state_ids.end()) throw FormatError("unknown state '" + t.to + "'", t.line);
        a.add_transition(from->second, t.label, to->second);
    }
}

} // namespace

Automaton load_automaton(std::istream& in) {
    Automaton a;
    parse_automaton_lines(in, a);
    return a;
}

Automaton load_automaton_from_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_automaton(in);
}

Automaton load_automaton_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open automaton file '" + path + "'");
    return load_automaton(in);
}

void save_automaton(const Automaton& a, std::ostream& out) {
    for (State q = 0; q < a.state_count(); ++q) {
        out << "state q" << q;
        if (a.is_initial(q)) out << " initial";
        if (a.is_final(q)) out << " final";
        out << '\n';
    }
    for (const auto& t : a.transitions())
        out << "trans q" << t.from << ' ' << a.symbol_name(t.symbol) << " q" << t.to << '\n';
}

} // namespace pathrep

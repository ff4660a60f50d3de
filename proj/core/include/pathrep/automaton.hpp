#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <gmpxx.h>

#include "pathrep/regex.hpp"

namespace pathrep {

using State = std::uint32_t;
using Symbol = std::uint32_t;

inline constexpr std::size_t kDefaultDetCap = 1u << 16;

/// NFA < UFA (at most one accepting run per word) < DFA. The kind is
/// verified by inspection, never asserted by callers.
enum class AutomatonKind { Nfa, Ufa, Dfa };

/// epsilon-free finite automaton over string symbols. The empty word is in
/// the language exactly when an initial state is final. Immutable once
/// built; all operations on automata are pure functions.
class Automaton {
public:
    struct Transition {
        State from;
        Symbol symbol;
        State to;
    };

    State add_state(bool initial = false, bool final_state = false);
    void set_initial(State q, bool on = true);
    void set_final(State q, bool on = true);
    Symbol intern_symbol(std::string_view name);
    /// Transitions form a set: re-adding an existing triple is a no-op.
    void add_transition(State from, Symbol symbol, State to);
    void add_transition(State from, std::string_view symbol, State to);

    std::size_t state_count() const { return initial_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const Transition& transition(std::uint32_t t) const { return transitions_[t]; }
    /// Indexes into transitions(), in insertion order.
    const std::vector<std::uint32_t>& out_transitions(State q) const { return out_[q]; }

    const std::vector<std::string>& alphabet() const { return symbols_; }
    const std::string& symbol_name(Symbol s) const { return symbols_[s]; }
    std::optional<Symbol> find_symbol(std::string_view name) const;

    bool is_initial(State q) const { return initial_[q]; }
    bool is_final(State q) const { return final_[q]; }
    std::vector<State> initial_states() const;
    std::vector<State> final_states() const;
    bool accepts_epsilon() const;

    /// Single initial state at most, and no two transitions share (from, symbol).
    bool deterministic() const;

    /// Verified kind: Dfa if deterministic, else Ufa if unambiguous, else Nfa.
    AutomatonKind kind() const;

    bool accepts(const std::vector<std::string>& word) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Symbol> symbol_ids_;
    std::vector<Transition> transitions_;
    std::unordered_set<std::uint64_t> transition_keys_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<bool> initial_, final_;
    mutable std::optional<AutomatonKind> kind_;
};

/// True iff no word has two accepting runs. Decided via the trimmed
/// self-product: ambiguous iff an off-diagonal state pair is reachable from
/// I x I and co-reachable to F x F under synchronized symbols.
bool check_unambiguous(const Automaton& a);

/// Like check_unambiguous, but ignores the empty word. An automaton with
/// several initial-final states (e.g. the NFA view of a product PMR) is
/// ambiguous only on the empty word; callers that account for it separately
/// use this variant.
bool check_unambiguous_nonempty(const Automaton& a);

/// Word-reversal of the language: transitions flipped, I and F swapped.
Automaton reverse(const Automaton& a);

/// Glushkov position automaton of `e` (epsilon-free NFA, |positions|+1 states).
Automaton glushkov(const RegexPtr& e);

/// Subset construction. Throws ResourceLimitError past `state_cap` subsets.
Automaton determinize(const Automaton& a, std::size_t state_cap = kDefaultDetCap);

/// Removes states that are unreachable or cannot reach a final state.
Automaton trim_dead_states(const Automaton& a);

/// Merges language-equivalent states of a deterministic automaton by
/// partition refinement. Output is again deterministic.
Automaton merge_equivalent_states(const Automaton& a);

/// Glushkov -> determinize -> trim -> merge. The result is a (partial) DFA,
/// hence unambiguous.
Automaton regex_to_ufa(const RegexPtr& e, std::size_t state_cap = kDefaultDetCap);

/// Number of accepting runs per word length, for lengths 0..max_len.
std::vector<mpz_class> accepting_runs_by_length(const Automaton& a, std::size_t max_len);

/// Synchronized product (same-symbol pairing); accepts the intersection
/// language, with one accepting run per pair of runs.
Automaton intersection_product(const Automaton& a, const Automaton& b);

/// Language equivalence of two automata via determinization and a
/// synchronized walk over the pair graph.
bool language_equivalent(const Automaton& a, const Automaton& b,
                         std::size_t state_cap = kDefaultDetCap);

/// epsilon-free concatenation of a chain of unambiguous automata, with
/// explicit junction states marking segment boundaries. Accepting runs of
/// the result are in bijection with ways to split the word into
/// L1 ... Lk segments (the concatenation itself may be ambiguous).
struct ChainAutomaton {
    Automaton automaton;
    std::vector<State> junction;           // j_0..j_k, boundary markers
    std::vector<std::uint32_t> segment_of; // per state: 1..k, or 0 for junctions
    std::vector<bool> atom_accepts_epsilon; // 1-based; [0] unused

    std::size_t atom_count() const { return junction.size() - 1; }
    bool is_junction(State q) const { return segment_of[q] == 0; }
    /// Which boundary a junction state marks.
    std::uint32_t junction_index(State q) const;
    /// For a transition leaving a junction, the 1-based segment it enters
    /// (a landing junction j_m means segment m was crossed in one symbol);
    /// 0 for interior transitions.
    std::uint32_t entered_segment(const Automaton::Transition& t) const;
};

ChainAutomaton concat_chain(const std::vector<const Automaton*>& atoms);

/// Textual automaton format:
///   state <id> [initial] [final]
///   trans <from> <label> <to>
Automaton load_automaton(std::istream& in);
Automaton load_automaton_from_string(std::string_view text);
Automaton load_automaton_file(const std::string& path);
void save_automaton(const Automaton& a, std::ostream& out);

} // namespace pathrep

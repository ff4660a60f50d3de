#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pathrep/analysis.hpp"
#include "pathrep/automaton.hpp"
#include "pathrep/graph.hpp"
#include "pathrep/pmr.hpp"
#include "pathrep/regex.hpp"
#include "pathrep/rng.hpp"

namespace pathrep::testing {

// ---- fixtures -----------------------------------------------------------

/// The Transfer fragment of the bank-accounts example: a1..a6 wired by
/// t1: a1->a3, t2: a3->a2, t3: a2->a4, t4: a4->a6, t5: a6->a5, t6: a6->a3,
/// t7: a3->a5, t8: a5->a1, all labeled Transfer.
std::string running_example_text();
GraphDb running_example_graph();

/// The 2^n-shortest-paths family: x, then n diamonds (u_i over v_i), then y,
/// 3n+1 nodes and 4n edges, all labeled a.
std::string ladder_text(std::size_t n);
GraphDb ladder_graph(std::size_t n);

/// Hand-built PMR fixtures over the running example.
Pmr even_cycle_pmr(const GraphDb& g);     // all even-length Mike cycles; S=T={r1}
Pmr double_diamond_pmr(const GraphDb& g); // the Mike->Scott path twice

/// The two Transfer.Transfer automata: a 3-state DFA and the ambiguous
/// 4-state union shape.
Automaton transfer_chain_dfa();
Automaton transfer_chain_ambiguous();

/// Universal automaton over the labels of g (one state, all self-loops).
Automaton universal_automaton(const GraphDb& g);

/// The five-path grouping example: six graph nodes, paths a->b->c, a->e->c,
/// a->e->f, d->e->c, d->e->f.
GraphDb grouping_example_graph();
Pmr grouping_example_pmr(const GraphDb& g);

Path make_path(const GraphDb& g, const std::vector<std::string>& alternating_names);

/// Hand-construction helper with string handles for rep-nodes.
class PmrBuilder {
public:
    explicit PmrBuilder(const GraphDb& g) : pmr_(g) {}
    PmrBuilder& node(const std::string& handle, const std::string& graph_node);
    PmrBuilder& edge(const std::string& from, const std::string& to,
                     const std::string& graph_edge);
    PmrBuilder& source(const std::string& handle);
    PmrBuilder& target(const std::string& handle);
    Pmr build(bool mark_trim = true);

private:
    Pmr pmr_;
    std::map<std::string, RepNode> handles_;
};

// ---- random instances ---------------------------------------------------

GraphDb random_graph(Rng& rng, std::size_t max_nodes, std::size_t max_edges,
                     std::size_t n_labels, bool acyclic = false);
RegexPtr random_regex(Rng& rng, std::size_t depth, const std::vector<std::string>& labels);
Automaton random_nfa(Rng& rng, std::size_t max_states, std::size_t n_symbols);
/// Random PMR over g with at most max_nodes rep-nodes (homomorphism kept).
Pmr random_pmr(Rng& rng, const GraphDb& g, std::size_t max_nodes);
/// Same, but rep-edges only go up the rep-node order, so the PMR is acyclic.
Pmr random_acyclic_pmr(Rng& rng, const GraphDb& g, std::size_t max_nodes);

// ---- independent oracles -------------------------------------------------

/// Regex membership decided structurally on the word, no automata involved.
bool regex_matches(const RegexPtr& e, const std::vector<std::string>& word);

/// Number of accepting runs of `a` on `word`, by per-prefix run counting.
mpz_class count_accepting_runs(const Automaton& a, const std::vector<std::string>& word);

/// All words over `alphabet` of length <= max_len.
std::vector<std::vector<std::string>> all_words(const std::vector<std::string>& alphabet,
                                                std::size_t max_len);

/// gamma-images of all S->T rep-paths of length <= max_len, as a multiset.
PathMultiset enumerate_bounded(const Pmr& r, std::size_t max_len);

/// Number of S-rooted walks of length <= max_len (saturating); used to skip
/// random instances whose exhaustive oracle would be too large.
std::uint64_t bounded_walk_estimate(const Pmr& r, std::size_t max_len,
                                    std::uint64_t cap = 200000);

/// Selector-mode reference filters over explicit path multisets.
PathMultiset filter_shortest(const PathMultiset& m);
PathMultiset filter_radix_shortest(const PathMultiset& m);
PathMultiset filter_simple(const PathMultiset& m);
PathMultiset filter_trail(const PathMultiset& m);

bool is_simple_path(const Path& p);
bool is_trail_path(const Path& p);

} // namespace pathrep::testing

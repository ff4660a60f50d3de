#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pathrep/analysis.hpp"
#include "pathrep/automaton.hpp"
#include "pathrep/graph.hpp"
#include "pathrep/pmr.hpp"
#include "pathrep/regex.hpp"

namespace pathrep {

enum class SelectorMode { Shortest, RadixShortest, Simple, Trail };

/// A regular language, given as a regex or as an automaton file reference
/// (`lang(@file)`).
struct LangSpec {
    RegexPtr regex;
    std::string automaton_file;
};

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct ChainAtom {
    std::string from_var, to_var;
    LangSpec lang;
    std::optional<SelectorMode> mode;
};

/// Expression tree of the query DSL:
///   lang(<regex>) | select(src=..., tgt=..., q) | shortest(q) | radix(q) |
///   simple(q) | trail(q) | union(q, q, ...) | group(src|tgt|pair, q) |
///   chain((x, <regex>, y), ...) | proj1(chain(...))
struct Query {
    enum class Kind { Lang, Select, Mode, Union, Group, Chain, Proj1 };
    Kind kind;

    LangSpec lang;                       // Lang
    bool src_all = true, tgt_all = true; // Select
    std::vector<std::string> src_nodes, tgt_nodes;
    SelectorMode mode = SelectorMode::Shortest; // Mode
    GroupKind group_kind = GroupKind::Pairwise; // Group
    std::vector<QueryPtr> children;             // Select/Mode/Group/Proj1: 1, Union: 2+
    std::vector<ChainAtom> atoms;               // Chain
};

QueryPtr parse_query(std::string_view text);

struct EvalOptions {
    std::size_t det_cap = kDefaultDetCap;
    std::uint64_t path_cap = kDefaultPathCap;
    /// Accept ambiguous automata (multiplicities become meaningless; only
    /// spaths is trustworthy). Direct UFA input stays verified either way.
    bool set_semantics = false;
};

/// Compiles a Lang leaf to an automaton (regex via Glushkov+determinize, or
/// an automaton file). Throws AmbiguityError for ambiguous automata unless
/// set semantics was requested.
Automaton compile_lang(const LangSpec& lang, const EvalOptions& opt);

/// Bottom-up evaluation of a Select/Mode/Union/Lang tree; the result
/// represents exactly the query's path multiset. Group/Chain/Proj1 have
/// their own entry points below.
Pmr eval(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt = {});

GroupedPmr eval_grouped(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt = {});

struct TabRow {
    NodeId src, tgt;
    Path path;
};

/// Streams tab(psi(G)) rows (src, tgt, path) from an evaluated PMR.
class TabEnumerator {
public:
    explicit TabEnumerator(const Pmr& r, std::optional<std::size_t> max_length = std::nullopt,
                           bool stratified = false);
    bool next(TabRow& out);

private:
    std::optional<PathEnumerator> plain_;
    std::optional<StratifiedEnumerator> stratified_;
    Path buf_;
};

/// Evaluation of a chain query: the product with the concatenated automaton,
/// the boundary node sets U_0..U_k, and per-atom pairwise-grouped PMRs
/// (the fully grouped table representation).
struct ChainResult {
    Pmr chain_product;
    std::vector<std::vector<NodeId>> boundaries; // U_0..U_k, sorted node ids
    std::vector<Pmr> atom_pmrs;                  // R_i
    std::vector<GroupedPmr> atom_groups;         // H_i (pairwise)
};

ChainResult eval_chain(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt = {});

/// One row of tab(Q(G)) for a chain query: paths[i] walks atom i+1, and
/// consecutive paths share endpoints.
struct ChainRow {
    std::vector<Path> paths;
};

class ChainTabEnumerator {
public:
    ChainTabEnumerator(const GraphDb& g, const ChainResult& result);
    bool next(ChainRow& out);

private:
    bool open_tuple();
    bool advance_position(std::size_t i);

    const ChainResult* result_;
    std::vector<std::vector<std::size_t>> tuples_; // group index per atom, per tuple
    std::size_t tuple_ = 0;
    bool tuple_open_ = false;
    std::vector<PathEnumerator> enums_;
    std::vector<Path> paths_;
};

/// pi_1 of a chain query: per start node, how many tuples begin there.
/// Cyclic chain products report Infinite for the affected nodes.
std::vector<std::pair<NodeId, CountResult>> eval_proj1(const GraphDb& g, const QueryPtr& q,
                                                       const EvalOptions& opt = {});

} // namespace pathrep

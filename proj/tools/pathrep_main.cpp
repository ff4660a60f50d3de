#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pathrep/analysis.hpp"
#include "pathrep/errors.hpp"
#include "pathrep/graph.hpp"
#include "pathrep/query.hpp"
#include "pathrep/serialize.hpp"

namespace {

using namespace pathrep;

constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitResource = 4;

struct CommonOpts {
    std::string graph_path;
    std::string query;
    std::string query_file;
    std::string pmr_file;
    std::string out = "pmr";
    std::string mode = "multiset";
    std::optional<std::uint64_t> limit;
    std::optional<std::size_t> max_length;
    std::optional<std::size_t> sample_length;
    std::uint64_t seed = 0;
    std::size_t det_cap = kDefaultDetCap;
    std::uint64_t path_cap = kDefaultPathCap;
    bool set_semantics = false;
    std::vector<std::string> pmr_files;

    EvalOptions eval_options() const {
        EvalOptions opt;
        opt.det_cap = det_cap;
        opt.path_cap = path_cap;
        opt.set_semantics = set_semantics;
        return opt;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

QueryPtr load_query(const CommonOpts& o) {
    if (o.query.empty() == o.query_file.empty())
        throw SemanticError("exactly one of --query and --query-file is required");
    return parse_query(o.query.empty() ? read_file(o.query_file) : o.query);
}

// Ambiguous automaton files are fatal under multiset semantics (the product
// would misreport multiplicities) and a warning under --set-semantics.
void warn_ambiguous_langs(const QueryPtr& q, const CommonOpts& o) {
    if (q->kind == Query::Kind::Lang && !q->lang.automaton_file.empty()) {
        Automaton a = load_automaton_file(q->lang.automaton_file);
        if (a.kind() == AutomatonKind::Nfa && o.set_semantics)
            std::cerr << "warning: automaton '" << q->lang.automaton_file
                      << "' is ambiguous; multiplicities in the result are not meaningful\n";
    }
    for (const auto& child : q->children) warn_ambiguous_langs(child, o);
}

void emit_table(std::ostream& os, const GraphDb& g, const Pmr& r, const CommonOpts& o) {
    CountResult total = count_paths(r);
    if (total.infinite && !o.limit && !o.max_length)
        throw SemanticError("the result is infinite; table output needs --limit or --max-length");

    TabEnumerator rows(r, o.max_length, /*stratified=*/total.infinite);
    TabRow row;
    std::uint64_t emitted = 0;
    bool more = rows.next(row);
    while (more && (!o.limit || emitted < *o.limit)) {
        os << g.node_name(row.src) << '\t' << g.node_name(row.tgt) << '\t'
           << path_to_string(row.path) << '\n';
        ++emitted;
        more = rows.next(row);
    }
    if (more && o.limit && emitted == *o.limit) os << "# truncated at " << *o.limit << "\n";
}

// Number of rows in tab(Q(G)): per endpoint tuple, the product of the
// per-atom group counts; summed via memoized join traversal.
CountResult chain_tuple_count(const ChainResult& result) {
    const std::size_t k = result.atom_groups.size();
    std::vector<std::map<std::pair<NodeId, NodeId>, CountResult>> pair_count(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < result.atom_groups[i].groups.size(); ++j) {
            const auto& [src, tgt] = result.atom_groups[i].endpoints[j];
            pair_count[i].emplace(std::make_pair(*src, *tgt),
                                  count_paths(result.atom_groups[i].groups[j]));
        }

    // suffix(i, node): rows of atoms i..k-1 starting at `node`.
    std::vector<std::map<NodeId, CountResult>> memo(k);
    auto suffix = [&](auto&& self, std::size_t i, NodeId at) -> CountResult {
        if (i == k) return CountResult{false, 1};
        auto it = memo[i].find(at);
        if (it != memo[i].end()) return it->second;
        CountResult acc;
        for (const auto& [pair, cnt] : pair_count[i]) {
            if (pair.first != at) continue;
            CountResult rest = self(self, i + 1, pair.second);
            if ((cnt.infinite && (rest.infinite || rest.value > 0)) ||
                (rest.infinite && (cnt.infinite || cnt.value > 0)))
                acc.infinite = true;
            else if (!cnt.infinite && !rest.infinite)
                acc.value += cnt.value * rest.value;
        }
        memo[i].emplace(at, acc);
        return acc;
    };

    CountResult total;
    std::set<NodeId> starts;
    for (const auto& [pair, cnt] : pair_count[0]) starts.insert(pair.first);
    for (NodeId u : starts) {
        CountResult c = suffix(suffix, 0, u);
        if (c.infinite) total.infinite = true;
        total.value += c.value;
    }
    if (total.infinite) total.value = 0;
    return total;
}

int cmd_eval(const CommonOpts& o) {
    GraphDb g = load_graph_file(o.graph_path);
    QueryPtr q = load_query(o);
    warn_ambiguous_langs(q, o);
    EvalOptions opt = o.eval_options();

    if (q->kind == Query::Kind::Proj1) {
        for (const auto& [node, count] : eval_proj1(g, q, opt))
            std::cout << g.node_name(node) << '\t' << count.to_string() << '\n';
        return 0;
    }

    if (q->kind == Query::Kind::Chain) {
        ChainResult result = eval_chain(g, q, opt);
        if (o.out == "count") {
            std::cout << chain_tuple_count(result).to_string() << '\n';
        } else if (o.out == "table") {
            ChainTabEnumerator rows(g, result);
            ChainRow row;
            std::uint64_t emitted = 0;
            bool more = rows.next(row);
            while (more && (!o.limit || emitted < *o.limit)) {
                bool first = true;
                for (const auto& p : row.paths) {
                    if (!first) std::cout << '\t';
                    first = false;
                    std::cout << g.node_name(p.src()) << '\t' << path_to_string(p) << '\t'
                              << g.node_name(p.tgt());
                }
                std::cout << '\n';
                ++emitted;
                more = rows.next(row);
            }
            if (more && o.limit) std::cout << "# truncated at " << *o.limit << "\n";
        } else if (o.out == "pmr") {
            std::cout << pmr_to_json(result.chain_product);
        } else {
            throw SemanticError("chain queries support --out table, count, or pmr");
        }
        return 0;
    }

    if (q->kind == Query::Kind::Group) {
        GroupedPmr grouped = eval_grouped(g, q, opt);
        auto endpoints = [&](std::size_t i) {
            std::string h;
            const auto& [src, tgt] = grouped.endpoints[i];
            if (src) h += " src=" + g.node_name(*src);
            if (tgt) h += " tgt=" + g.node_name(*tgt);
            return h;
        };
        if (o.out == "pmr") {
            std::cout << grouped_pmr_to_json(grouped, g);
        } else if (o.out == "count") {
            for (std::size_t i = 0; i < grouped.groups.size(); ++i)
                std::cout << endpoints(i).substr(1) << '\t'
                          << count_paths(grouped.groups[i]).to_string() << '\n';
        } else if (o.out == "table") {
            for (std::size_t i = 0; i < grouped.groups.size(); ++i) {
                std::cout << "# group" << endpoints(i) << '\n';
                emit_table(std::cout, g, grouped.groups[i], o);
            }
        } else if (o.out == "graph") {
            save_graph(graph_projection(eval(g, q->children[0], opt)), std::cout);
        }
        return 0;
    }

    Pmr r = eval(g, q, opt);
    if (o.out == "pmr") {
        std::cout << pmr_to_json(r);
    } else if (o.out == "count") {
        std::cout << count_paths(r).to_string() << '\n';
    } else if (o.out == "graph") {
        save_graph(graph_projection(r), std::cout);
    } else {
        emit_table(std::cout, g, r, o);
    }
    return 0;
}

int cmd_equiv(const CommonOpts& o) {
    GraphDb g = load_graph_file(o.graph_path);
    Pmr r1 = pmr_from_json_file(o.pmr_files[0], g);
    Pmr r2 = pmr_from_json_file(o.pmr_files[1], g);
    bool equal;
    if (o.mode == "multiset") {
        equal = multiset_equivalent(r1, r2);
    } else {
        try {
            equal = set_equivalent(r1, r2, SetEquivStrategy::Ufa);
        } catch (const AmbiguityError&) {
            equal = set_equivalent(r1, r2, SetEquivStrategy::Determinize, o.det_cap);
        }
    }
    std::cout << (equal ? "equivalent" : "different") << '\n';
    return equal ? 0 : 1;
}

// sample and minimize accept their input either as a stored PMR document or
// as a query to evaluate first.
Pmr load_input_pmr(const CommonOpts& o, const GraphDb& g) {
    if (!o.pmr_file.empty()) {
        if (!o.query.empty() || !o.query_file.empty())
            throw SemanticError("give either --pmr or a query, not both");
        return pmr_from_json_file(o.pmr_file, g);
    }
    QueryPtr q = load_query(o);
    warn_ambiguous_langs(q, o);
    return eval(g, q, o.eval_options());
}

int cmd_sample(const CommonOpts& o) {
    GraphDb g = load_graph_file(o.graph_path);
    Pmr r = load_input_pmr(o, g);
    if (!r.trim_flag()) r = trim(r);
    Rng rng(o.seed);
    auto path = sample_uniform(r, o.sample_length, rng);
    if (path)
        std::cout << path_to_string(*path) << '\n';
    else
        std::cout << "none\n";
    return 0;
}

int cmd_minimize(const CommonOpts& o) {
    GraphDb g = load_graph_file(o.graph_path);
    Pmr r = load_input_pmr(o, g);
    std::cerr << "note: bisimulation reduction preserves the path set; "
                 "multiplicities may collapse (set semantics)\n";
    std::cout << pmr_to_json(bisim_reduce(r));
    return 0;
}

void add_eval_flags(CLI::App* cmd, CommonOpts& o, bool with_out) {
    cmd->add_option("--graph", o.graph_path, "graph file")->required();
    cmd->add_option("--query", o.query, "query expression");
    cmd->add_option("--query-file", o.query_file, "file holding the query expression");
    if (with_out)
        cmd->add_option("--out", o.out, "output kind: pmr, table, count, graph")
            ->check(CLI::IsMember({"pmr", "table", "count", "graph"}));
    cmd->add_option("--limit", o.limit, "maximum number of table rows");
    cmd->add_option("--max-length", o.max_length, "maximum path length to stream");
    cmd->add_option("--det-cap", o.det_cap, "determinization state cap");
    cmd->add_option("--path-cap", o.path_cap, "cap on paths emitted by simple/trail filters");
    cmd->add_flag("--set-semantics", o.set_semantics,
                  "accept ambiguous automata; multiplicities become meaningless");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regular path query engine over succinct path multiset representations"};
    app.require_subcommand(1);

    CommonOpts o;
    int (*run)(const CommonOpts&) = nullptr;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a query");
    add_eval_flags(eval_cmd, o, true);
    eval_cmd->callback([&] { run = cmd_eval; });

    auto* count_cmd = app.add_subcommand("count", "evaluate a query and count its paths");
    add_eval_flags(count_cmd, o, false);
    count_cmd->callback([&] {
        o.out = "count";
        run = cmd_eval;
    });

    auto* project_cmd =
        app.add_subcommand("project", "evaluate a query and print its graph projection");
    add_eval_flags(project_cmd, o, false);
    project_cmd->callback([&] {
        o.out = "graph";
        run = cmd_eval;
    });

    auto* equiv_cmd = app.add_subcommand("equiv", "compare two stored PMRs");
    equiv_cmd->add_option("pmrs", o.pmr_files, "two PMR files")->expected(2)->required();
    equiv_cmd->add_option("--graph", o.graph_path, "graph file")->required();
    equiv_cmd->add_option("--mode", o.mode, "multiset or set")
        ->check(CLI::IsMember({"multiset", "set"}));
    equiv_cmd->add_option("--det-cap", o.det_cap, "determinization state cap");
    equiv_cmd->callback([&] { run = cmd_equiv; });

    auto* sample_cmd = app.add_subcommand("sample", "sample a path uniformly at random");
    add_eval_flags(sample_cmd, o, false);
    sample_cmd->get_option("--graph"); // keep required
    sample_cmd->add_option("--pmr", o.pmr_file, "stored PMR file to sample from");
    sample_cmd->add_option("--length", o.sample_length, "restrict to paths of this length");
    sample_cmd->add_option("--seed", o.seed, "RNG seed (default 0)");
    sample_cmd->callback([&] { run = cmd_sample; });

    auto* minimize_cmd = app.add_subcommand("minimize", "bisimulation-reduce a PMR");
    add_eval_flags(minimize_cmd, o, false);
    minimize_cmd->add_option("--pmr", o.pmr_file, "stored PMR file to reduce");
    minimize_cmd->callback([&] { run = cmd_minimize; });

    try {
        app.parse(argc, argv);
        return run(o);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSemantic;
    }
}

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "pathrep/errors.hpp"
#include "pathrep/query.hpp"
#include "support.hpp"

using namespace pathrep;
using namespace pathrep::testing;

TEST_CASE("parse_query handles the operator grammar") {
    CHECK(parse_query("lang(a*)")->kind == Query::Kind::Lang);
    QueryPtr sel = parse_query("select(src={x,y}, tgt=*, lang(a.b))");
    REQUIRE(sel->kind == Query::Kind::Select);
    CHECK_FALSE(sel->src_all);
    CHECK(sel->src_nodes == std::vector<std::string>{"x", "y"});
    CHECK(sel->tgt_all);

    QueryPtr mode = parse_query("shortest(select(src=*, tgt={y}, lang(a*)))");
    CHECK(mode->kind == Query::Kind::Mode);
    CHECK(mode->mode == SelectorMode::Shortest);

    QueryPtr uni = parse_query("union(lang(a), lang(b), lang(c))");
    CHECK(uni->children.size() == 3);

    QueryPtr grp = parse_query("group(pair, lang(a+))");
    CHECK(grp->group_kind == GroupKind::Pairwise);

    QueryPtr chain = parse_query("chain((x, a*, y), (y, simple(b), z))");
    REQUIRE(chain->atoms.size() == 2);
    CHECK(chain->atoms[0].from_var == "x");
    CHECK_FALSE(chain->atoms[0].mode);
    CHECK(chain->atoms[1].mode == SelectorMode::Simple);

    CHECK(parse_query("proj1(chain((x, a, y)))")->kind == Query::Kind::Proj1);

    CHECK_THROWS_AS(parse_query("lang(a"), SyntaxError);
    CHECK_THROWS_AS(parse_query("frobnicate(a)"), SyntaxError);
    CHECK_THROWS_AS(parse_query("select(src=, tgt=*, lang(a))"), SyntaxError);
    CHECK_THROWS_AS(parse_query("union(lang(a))"), SyntaxError);
    CHECK_THROWS_AS(parse_query("proj1(lang(a))"), SyntaxError);
    CHECK_THROWS_AS(parse_query("lang(a) lang(b)"), SyntaxError);
}

TEST_CASE("eval: shortest over the ladder stays linear-size with 2^n paths") {
    GraphDb g = ladder_graph(8);
    Pmr r = eval(g, parse_query("shortest(select(src={x}, tgt={y}, lang(a*)))"));
    CHECK(count_paths(r) == CountResult{false, 256});
    CHECK(r.node_count() <= 3 * 8 + 4);
}

TEST_CASE("eval: Transfer.Transfer from a6 yields three paths") {
    GraphDb g = running_example_graph();
    Pmr r = eval(g, parse_query("select(src={a6}, tgt=*, lang(Transfer.Transfer))"));
    CHECK(count_paths(r) == CountResult{false, 3});
}

TEST_CASE("eval: union doubles multiplicities") {
    GraphDb g = running_example_graph();
    Pmr once = eval(g, parse_query("lang(Transfer.Transfer)"));
    Pmr twice = eval(g, parse_query("union(lang(Transfer.Transfer), lang(Transfer.Transfer))"));
    CHECK(count_paths(twice).value == 2 * count_paths(once).value);
    PathMultiset m1 = enumerate_bounded(once, 3);
    PathMultiset m2 = enumerate_bounded(twice, 3);
    for (const auto& [p, mult] : m1.entries()) CHECK(m2.count(p) == 2 * mult);
}

TEST_CASE("eval: selecting unknown node names yields the empty result") {
    GraphDb g = running_example_graph();
    Pmr r = eval(g, parse_query("select(src={nowhere}, tgt=*, lang(Transfer))"));
    CHECK(count_paths(r) == CountResult{false, 0});
}

TEST_CASE("eval rejects top-level-only operators in nested position") {
    GraphDb g = running_example_graph();
    CHECK_THROWS_AS(eval(g, parse_query("group(src, lang(a))")), UnsupportedError);
    CHECK_THROWS_AS(eval(g, parse_query("shortest(group(src, lang(a)))")), UnsupportedError);
}

TEST_CASE("eval_grouped mirrors the five-path grouping example") {
    GraphDb g = grouping_example_graph();
    EvalOptions opt;
    CHECK(eval_grouped(g, parse_query("group(src, lang(red.red))"), opt).groups.size() == 2);
    CHECK(eval_grouped(g, parse_query("group(pair, lang(red.red))"), opt).groups.size() == 4);
    CHECK(eval_grouped(g, parse_query("group(tgt, lang(red.red))"), opt).groups.size() == 2);
}

TEST_CASE("eval applies selector modes from the DSL") {
    GraphDb g = running_example_graph();
    // Simple Transfer-paths from a6 of length <= |N|.
    Pmr r = eval(g, parse_query("simple(select(src={a6}, tgt={a2}, lang(Transfer.Transfer)))"));
    CHECK(count_paths(r) == CountResult{false, 1});

    Pmr radix = eval(g, parse_query("radix(select(src={a6}, tgt=*, lang(Transfer.Transfer)))"));
    // Three targets, each with a unique label word (all Transfer), so all stay.
    CHECK(count_paths(radix) == CountResult{false, 3});
}

TEST_CASE("tab_enumerate yields (src, tgt, path) rows") {
    GraphDb g = running_example_graph();
    Pmr r = eval(g, parse_query("select(src={a6}, tgt=*, lang(Transfer.Transfer))"));
    TabEnumerator rows(r);
    TabRow row;
    int n = 0;
    while (rows.next(row)) {
        CHECK(g.node_name(row.src) == "a6");
        CHECK(row.path.length() == 2);
        CHECK(row.src == row.path.src());
        CHECK(row.tgt == row.path.tgt());
        ++n;
    }
    CHECK(n == 3);
}

TEST_CASE("tab_enumerate on an empty result emits nothing") {
    GraphDb g = running_example_graph();
    Pmr r = eval(g, parse_query("lang(NoSuchLabel)"));
    TabEnumerator rows(r);
    TabRow row;
    CHECK_FALSE(rows.next(row));
}

TEST_CASE("tab rows match oracle triples on random acyclic instances") {
    Rng rng(107);
    for (int i = 0; i < 20; ++i) {
        GraphDb g = random_graph(rng, 5, 8, 2, /*acyclic=*/true);
        RegexPtr e = random_regex(rng, 2, {"a", "b"});
        Pmr r = eval(g, parse_query("lang(" + regex_to_string(e) + ")"));
        auto oracle = brute_force_paths(g, g.node_count(), NodePredicate::all(),
                                        NodePredicate::all(), regex_to_ufa(e));
        TabEnumerator rows(r);
        TabRow row;
        PathMultiset seen;
        while (rows.next(row)) {
            CHECK(row.src == row.path.src());
            CHECK(row.tgt == row.path.tgt());
            seen.insert(row.path);
        }
        CHECK(seen == oracle);
    }
}

TEST_CASE("selection commutes with shortest at the semantic level") {
    Rng rng(149);
    for (int i = 0; i < 20; ++i) {
        GraphDb g = random_graph(rng, 6, 9, 2);
        if (g.node_count() < 2) continue;
        RegexPtr e = random_regex(rng, 2, {"a", "b"});
        std::string u = g.node_name(static_cast<NodeId>(rng.below(g.node_count())));
        std::string v = g.node_name(static_cast<NodeId>(rng.below(g.node_count())));
        Pmr outer = eval(g, parse_query("select(src={" + u + "}, tgt={" + v +
                                        "}, shortest(lang(" + regex_to_string(e) + ")))"));
        Pmr inner = eval(g, parse_query("shortest(select(src={" + u + "}, tgt={" + v +
                                        "}, lang(" + regex_to_string(e) + ")))"));
        CHECK(multiset_equivalent(outer, inner));
    }
}

TEST_CASE("ambiguous automaton files require the set-semantics override") {
    GraphDb g = running_example_graph();
    // Write the ambiguous automaton to a file and reference it from the DSL.
    std::string path = "ambiguous_tt.aut";
    {
        std::ofstream out(path);
        save_automaton(transfer_chain_ambiguous(), out);
    }
    QueryPtr q = parse_query("select(src={a6}, tgt=*, lang(@" + path + "))");
    CHECK_THROWS_AS(eval(g, q), AmbiguityError);
    EvalOptions opt;
    opt.set_semantics = true;
    CHECK(count_paths(eval(g, q, opt)) == CountResult{false, 6});
    std::remove(path.c_str());
}

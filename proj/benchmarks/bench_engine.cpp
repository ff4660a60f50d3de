#include <benchmark/benchmark.h>

#include <sstream>

#include "pathrep/analysis.hpp"
#include "pathrep/graph.hpp"
#include "pathrep/query.hpp"

namespace {

using namespace pathrep;

// The 2^n-paths diamond ladder: 3n+1 nodes, 4n edges, all labeled a.
GraphDb ladder(std::size_t n) {
    std::ostringstream out;
    std::size_t e = 0;
    std::string prev = "x";
    for (std::size_t i = 1; i <= n; ++i) {
        std::string mid = (i == n) ? "y" : "m" + std::to_string(i);
        std::string u = "u" + std::to_string(i);
        std::string v = "v" + std::to_string(i);
        out << "edge g" << ++e << ' ' << prev << ' ' << u << " a\n";
        out << "edge g" << ++e << ' ' << prev << ' ' << v << " a\n";
        out << "edge g" << ++e << ' ' << u << ' ' << mid << " a\n";
        out << "edge g" << ++e << ' ' << v << ' ' << mid << " a\n";
        prev = mid;
    }
    return load_graph_from_string(out.str());
}

QueryPtr xy_query() { return parse_query("select(src={x}, tgt={y}, lang(a*))"); }

void BM_ProductTrim(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    QueryPtr q = xy_query();
    for (auto _ : state) {
        Pmr r = eval(g, q);
        benchmark::DoNotOptimize(r.node_count());
    }
}
BENCHMARK(BM_ProductTrim)->Arg(8)->Arg(64)->Arg(256);

void BM_CountPaths(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    Pmr r = eval(g, xy_query());
    for (auto _ : state) {
        CountResult c = count_paths(r);
        benchmark::DoNotOptimize(c.infinite);
    }
}
BENCHMARK(BM_CountPaths)->Arg(8)->Arg(64)->Arg(256);

void BM_ShortestFilter(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    Pmr r = eval(g, xy_query());
    for (auto _ : state) {
        Pmr s = shortest_filter(r);
        benchmark::DoNotOptimize(s.node_count());
    }
}
BENCHMARK(BM_ShortestFilter)->Arg(8)->Arg(64)->Arg(256);

void BM_EnumerateRows(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    Pmr r = eval(g, xy_query());
    for (auto _ : state) {
        PathEnumerator paths(r);
        Path p;
        std::size_t rows = 0;
        while (paths.next(p)) ++rows;
        benchmark::DoNotOptimize(rows);
    }
    state.SetItemsProcessed(state.iterations() << state.range(0));
}
BENCHMARK(BM_EnumerateRows)->Arg(4)->Arg(8)->Arg(12);

void BM_SampleUniform(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    Pmr r = eval(g, xy_query());
    Rng rng(1);
    for (auto _ : state) {
        auto p = sample_uniform(r, std::nullopt, rng);
        benchmark::DoNotOptimize(p->length());
    }
}
BENCHMARK(BM_SampleUniform)->Arg(8)->Arg(64);

void BM_MultisetEquivalence(benchmark::State& state) {
    GraphDb g = ladder(state.range(0));
    Pmr r1 = eval(g, xy_query());
    Pmr r2 = eval(g, xy_query());
    for (auto _ : state) {
        bool eq = multiset_equivalent(r1, r2);
        benchmark::DoNotOptimize(eq);
    }
}
BENCHMARK(BM_MultisetEquivalence)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();

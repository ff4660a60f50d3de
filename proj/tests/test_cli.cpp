#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "pathrep/serialize.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace pathrep;
using namespace pathrep::testing;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

class CliFixture {
public:
    CliFixture() {
        dir_ = fs::temp_directory_path() /
               ("pathrep_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~CliFixture() { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& content) {
        fs::path p = dir_ / name;
        std::ofstream out(p);
        out << content;
        return p;
    }

    std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    CliResult run(const std::string& args) {
        fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        std::string cmd = std::string(PATHREP_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
        int status = std::system(cmd.c_str());
        int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
        return CliResult{code, slurp(out), slurp(err)};
    }

    const fs::path& dir() const { return dir_; }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

} // namespace

TEST_CASE("cli: count over the ladder prints 1024") {
    CliFixture cli;
    auto graph = cli.write("ladder.graph", ladder_text(10));
    auto r = cli.run("count --graph " + graph.string() +
                     " --query 'select(src={x}, tgt={y}, lang(a*))'");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1024\n");
}

TEST_CASE("cli: count on an empty graph prints 0") {
    CliFixture cli;
    auto graph = cli.write("empty.graph", "# nothing\n");
    auto r = cli.run("count --graph " + graph.string() + " --query 'lang(a*)'");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0\n");
}

TEST_CASE("cli: table output, limits, and the truncation marker") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    std::string query = " --query 'select(src={a6}, tgt=*, lang(Transfer.Transfer))'";

    auto full = cli.run("eval --graph " + graph.string() + query + " --out table");
    CHECK(full.exit_code == 0);
    CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 3);
    CHECK(full.out.find("a6\t") == 0);
    CHECK(full.out.find("# truncated") == std::string::npos);

    auto limited = cli.run("eval --graph " + graph.string() + query + " --out table --limit 2");
    CHECK(limited.exit_code == 0);
    CHECK(limited.out.find("# truncated at 2\n") != std::string::npos);
    CHECK(std::count(limited.out.begin(), limited.out.end(), '\n') == 3); // 2 rows + marker

    auto exact = cli.run("eval --graph " + graph.string() + query + " --out table --limit 3");
    CHECK(exact.out.find("# truncated") == std::string::npos);
}

TEST_CASE("cli: infinite tables need a limit, then stream by length") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    std::string query = " --query 'select(src={a1}, tgt={a1}, lang(Transfer+))'";
    auto bare = cli.run("eval --graph " + graph.string() + query + " --out table");
    CHECK(bare.exit_code == 3);

    auto limited = cli.run("eval --graph " + graph.string() + query + " --out table --limit 2");
    CHECK(limited.exit_code == 0);
    // Shortest Transfer cycles at a1 have lengths 3 and 6.
    std::istringstream rows(limited.out);
    std::string row1, row2;
    std::getline(rows, row1);
    std::getline(rows, row2);
    CHECK(std::count(row1.begin(), row1.end(), ' ') == 6);  // 3 edges + 4 nodes - 1
    CHECK(std::count(row2.begin(), row2.end(), ' ') == 12); // 6 edges + 7 nodes - 1
}

TEST_CASE("cli: identical invocations are byte-identical") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    for (std::string args :
         {std::string("eval --graph ") + graph.string() + " --query 'lang(Transfer.Transfer)'",
          std::string("eval --graph ") + graph.string() +
              " --query 'lang(Transfer+)' --out table --limit 5",
          std::string("eval --graph ") + graph.string() +
              " --query 'group(pair, lang(Transfer.Transfer))' --out count",
          std::string("count --graph ") + graph.string() + " --query 'lang(Transfer)'",
          std::string("sample --graph ") + graph.string() +
              " --query 'lang(Transfer.Transfer)' --seed 5"}) {
        auto r1 = cli.run(args);
        auto r2 = cli.run(args);
        CHECK(r1.exit_code == 0);
        CHECK(r1.out == r2.out);
    }
}

TEST_CASE("cli: evaluated PMRs pipe into equiv as multiset-equivalent") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    std::string eval_args = "eval --graph " + graph.string() + " --query 'lang(Transfer.Transfer)'";
    auto r1 = cli.run(eval_args);
    auto r2 = cli.run(eval_args);
    auto f1 = cli.write("r1.pmr", r1.out);
    auto f2 = cli.write("r2.pmr", r2.out);
    auto eq = cli.run("equiv " + f1.string() + " " + f2.string() + " --graph " + graph.string() +
                      " --mode multiset");
    CHECK(eq.exit_code == 0);
    CHECK(eq.out == "equivalent\n");
}

TEST_CASE("cli: equiv separates multiset from set semantics (ambiguous automaton)") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    std::ostringstream amb;
    save_automaton(transfer_chain_ambiguous(), amb);
    auto aut = cli.write("tt.aut", amb.str());

    std::string base = " --graph " + graph.string();
    auto good = cli.run("eval" + base + " --query 'select(src={a6}, tgt=*, lang(Transfer.Transfer))'");
    auto bad = cli.run("eval" + base + " --query 'select(src={a6}, tgt=*, lang(@" + aut.string() +
                       "))' --set-semantics");
    CHECK(bad.exit_code == 0);
    CHECK(bad.err.find("warning") != std::string::npos);
    auto f1 = cli.write("good.pmr", good.out);
    auto f2 = cli.write("bad.pmr", bad.out);

    auto multiset = cli.run("equiv " + f1.string() + " " + f2.string() + base);
    CHECK(multiset.exit_code == 1);
    CHECK(multiset.out == "different\n");
    auto set = cli.run("equiv " + f1.string() + " " + f2.string() + base + " --mode set");
    CHECK(set.exit_code == 0);
    CHECK(set.out == "equivalent\n");

    // Without the override, the ambiguous automaton is a semantic error.
    auto refused = cli.run("eval" + base + " --query 'lang(@" + aut.string() + ")'");
    CHECK(refused.exit_code == 3);
}

TEST_CASE("cli: equiv detects a graph mismatch by content hash") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    auto other = cli.write("other.graph", "edge q1 n1 n2 L\n");
    auto r = cli.run("eval --graph " + graph.string() + " --query 'lang(Transfer)'");
    auto f = cli.write("r.pmr", r.out);
    auto eq = cli.run("equiv " + f.string() + " " + f.string() + " --graph " + other.string());
    CHECK(eq.exit_code == 3);
}

TEST_CASE("cli: sampling is seed-deterministic and honors --length") {
    CliFixture cli;
    auto graph = cli.write("ladder.graph", ladder_text(4));
    std::string args = "sample --graph " + graph.string() +
                       " --query 'select(src={x}, tgt={y}, lang(a*))' --seed 99";
    auto r1 = cli.run(args);
    auto r2 = cli.run(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("x ") == 0);

    auto none = cli.run(args + " --length 3"); // ladder paths have length 8
    CHECK(none.out == "none\n");

    auto bank = cli.write("bank.graph", running_example_text());
    auto inf = cli.run("sample --graph " + bank.string() +
                       " --query 'select(src={a1}, tgt={a1}, lang(Transfer+))' --seed 1");
    CHECK(inf.exit_code == 3);
}

TEST_CASE("cli: minimize warns about set semantics and shrinks the diamond") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    GraphDb g = running_example_graph();
    auto f = cli.write("diamond.pmr", pmr_to_json(double_diamond_pmr(g)));
    auto r = cli.run("minimize --graph " + graph.string() + " --pmr " + f.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("set semantics") != std::string::npos);
    Pmr reduced = pmr_from_json(r.out, g);
    CHECK(reduced.node_count() == 3);
}

TEST_CASE("cli: project prints the projection in graph format") {
    CliFixture cli;
    auto graph = cli.write("ladder.graph", ladder_text(2));
    auto r = cli.run("project --graph " + graph.string() +
                     " --query 'select(src={x}, tgt={y}, lang(a*))'");
    CHECK(r.exit_code == 0);
    GraphDb projected = load_graph_from_string(r.out);
    CHECK(canonical_graph_hash(projected) == canonical_graph_hash(ladder_graph(2)));
}

TEST_CASE("cli: error exit codes") {
    CliFixture cli;
    auto graph = cli.write("bank.graph", running_example_text());
    std::string base = " --graph " + graph.string();

    CHECK(cli.run("eval" + base + " --query 'lang(('").exit_code == 2);      // parse
    CHECK(cli.run("eval" + base + " --query 'group(src, lang(a))' --out count").exit_code == 0);
    CHECK(cli.run("eval" + base + " --query 'shortest(group(src, lang(a)))'").exit_code == 3);
    auto det = cli.run("eval" + base +
                       " --query 'lang((a|b)*.a.(a|b).(a|b).(a|b).(a|b))' --det-cap 8");
    CHECK(det.exit_code == 4); // resource cap
    auto cap = cli.run("eval" + base +
                       " --query 'simple(lang(Transfer+))' --path-cap 2 --out count");
    CHECK(cap.exit_code == 4);
    CHECK(cli.run("eval --graph missing.graph --query 'lang(a)'").exit_code == 2);
}

TEST_CASE("cli: grouped and proj1 output shapes") {
    CliFixture cli;
    auto graph = cli.write("five.graph",
                           "edge ab a b red\nedge bc b c red\nedge ae a e red\n"
                           "edge ec e c red\nedge de d e red\nedge ef e f red\n");
    auto grouped = cli.run("eval --graph " + graph.string() +
                           " --query 'group(pair, lang(red.red))' --out count");
    CHECK(grouped.exit_code == 0);
    CHECK(std::count(grouped.out.begin(), grouped.out.end(), '\n') == 4);
    CHECK(grouped.out.find("src=a tgt=c\t2") != std::string::npos);

    auto table = cli.run("eval --graph " + graph.string() +
                         " --query 'group(src, lang(red.red))' --out table");
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("# group src=a") != std::string::npos);

    auto proj = cli.run("eval --graph " + graph.string() +
                        " --query 'proj1(chain((x, red, y), (y, red, z)))'");
    CHECK(proj.exit_code == 0);
    CHECK(proj.out.find("a\t3") != std::string::npos);
    CHECK(proj.out.find("d\t2") != std::string::npos);
}

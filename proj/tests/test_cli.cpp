#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <strcon/cli.hpp>

using namespace strcon;

namespace {

const std::string kData = STRCON_DATA_DIR;

struct Invocation {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Invocation run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& f) { return kData + "/" + f; }

std::string temp_file(const std::string& name, const std::string& content)
{
    auto p = std::filesystem::temp_directory_path() / ("strcon_cli_" + name);
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST(Cli, ExitCodeCorpus)
{
    std::string cyclic = temp_file("cu.json", run({"reduce", "--pcp", data("pcp_concat.json"), "--concat-undecidable"}).out);
    std::string broken = temp_file("broken.json", "{\"alphabet\": [\"a\"], \"variables\": [\"x\", \"x\"]}");
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> corpus = {
        {{"solve", "--constraint", data("example_duplicating.json"), "--bound", "6"}, 0},
        {{"solve", "--constraint", data("example_duplicating.json"), "--bound", "5"}, 1},
        {{"solve", "--constraint", cyclic, "--bound", "2"}, 3},
        {{"solve", "--constraint", broken, "--bound", "2"}, 2},
        {{"verify", "--constraint", data("example_duplicating.json"), "--assignment",
          data("example_duplicating_assignment.json"), "--extended"}, 0},
        {{"shrink", "--constraint", data("dyck_cf.json"), "--assignment", data("dyck_cf_assignment.json"), "--mode",
          "cf"}, 0},
        {{"certify", "--kind", "fig2", "--n", "3"}, 0},
        {{"certify", "--kind", "fig5", "--n", "5"}, 4},
        {{"bound", "--constraint", data("dyck_cf.json"), "--mode", "reg"}, 2},
        {{"bound", "--constraint", cyclic, "--mode", "reg"}, 3},
        {{"gadget", "--kind", "fig9", "--n", "1"}, 2},
        {{"closure", "--kind", "down", "--n", "2"}, 0},
    };
    ASSERT_EQ(corpus.size(), 12u);
    for (const auto& c : corpus) {
        Invocation r = run(c.args);
        std::string line;
        for (const auto& a : c.args)
            line += a + " ";
        EXPECT_EQ(r.code, c.code) << line << "\n" << r.err;
    }
}

TEST(Cli, SolveThenVerify)
{
    Invocation s = run({"solve", "--constraint", data("example_duplicating.json"), "--bound", "6", "--trace"});
    ASSERT_EQ(s.code, 0) << s.err;
    json j = s.report();
    EXPECT_TRUE(j["sat"]);
    EXPECT_EQ(j["base"]["x"], "ababab");
    EXPECT_EQ(j["base"]["y"], "ab");
    EXPECT_EQ(j["trace"]["order"], json::array({"x", "y"}));
    std::string f = temp_file("sol.json", s.out);
    Invocation v = run({"verify", "--constraint", data("example_duplicating.json"), "--assignment", f, "--extended"});
    EXPECT_EQ(v.code, 0) << v.out;
    Invocation b = run({"verify", "--constraint", data("example_duplicating.json"), "--assignment", f});
    EXPECT_EQ(b.code, 0) << b.out;
}

TEST(Cli, VerifyRejectsWrongOutputs)
{
    std::string f = temp_file("bad.json", R"({"base":{"x":"ababab","y":"ab"},"outputs":{"0.0":"ab","0.1":"ab"}})");
    Invocation v = run({"verify", "--constraint", data("example_duplicating.json"), "--assignment", f, "--extended"});
    EXPECT_EQ(v.code, 1);
    EXPECT_FALSE(v.report()["ok"]);
}

TEST(Cli, BoundReport)
{
    Invocation r = run({"bound", "--constraint", data("dyck_cf.json"), "--mode", "cf"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.report();
    EXPECT_EQ(j["p"], 2);
    EXPECT_EQ(j["B"][0], "256");
    EXPECT_EQ(j["B"][1], "70368744177664"); // 2^46
    Invocation d = run({"bound", "--constraint", data("example_duplicating.json"), "--mode", "reg"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.report()["D"].size(), 2u);
}

TEST(Cli, EmittedDocumentsRoundTrip)
{
    // pcp_concat has no ell, so only the concatenation instance applies
    for (const auto& pcp : {"pcp_solvable.json", "pcp_concat.json"}) {
        for (bool concat : {false, true}) {
            if (!concat && std::string(pcp) == "pcp_concat.json") {
                EXPECT_EQ(run({"reduce", "--pcp", data(pcp)}).code, 2);
                continue;
            }
            std::vector<std::string> args{"reduce", "--pcp", data(pcp)};
            if (concat)
                args.push_back("--concat-undecidable");
            Invocation r = run(args);
            ASSERT_EQ(r.code, 0) << r.err;
            StringConstraint c = load_constraint(r.report());
            EXPECT_EQ(to_json(c).dump(2) + "\n", r.out) << pcp;
        }
    }
    for (const auto& kind : {"fig2", "fig3", "fig5"}) {
        Invocation r = run({"gadget", "--kind", kind, "--n", "2", "--gamma2", "a,b"});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(to_json(automaton_from_json(r.report())).dump(2) + "\n", r.out) << kind;
    }
    Invocation bits = run({"gadget", "--kind", "bitdfa", "--n", "2", "--strict"});
    ASSERT_EQ(bits.code, 0);
    EXPECT_EQ(bits.report().size(), 2u);
    for (const auto& d : bits.report())
        EXPECT_EQ(to_json(automaton_from_json(d)), d);
    Invocation s = run({"solve", "--constraint", data("example_duplicating.json"), "--bound", "6"});
    auto c = load_constraint_file(data("example_duplicating.json"));
    auto ea = load_assignment(s.report(), c, true);
    json a = to_json(ea, c);
    EXPECT_EQ(a["base"], s.report()["base"]);
    EXPECT_EQ(a["outputs"], s.report()["outputs"]);
}

TEST(Cli, DeterministicReports)
{
    std::vector<std::string> args{"certify", "--kind", "fig3", "--n", "2"};
    EXPECT_EQ(run(args).out, run(args).out);
    std::vector<std::string> sh{"shrink", "--constraint", data("dyck_cf.json"), "--assignment",
                                data("dyck_cf_assignment.json"), "--mode", "cf"};
    Invocation a = run(sh);
    EXPECT_EQ(a.out, run(sh).out);
    json j = a.report();
    EXPECT_TRUE(j.contains("trace"));
    auto c = load_constraint_file(data("dyck_cf.json"));
    EXPECT_TRUE(verify_extended(c, load_assignment(j, c, true)).ok);
}

TEST(Cli, ClosureAndCertifyReports)
{
    Invocation f = run({"closure", "--kind", "down", "--n", "1", "--source", "fig5"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.report()[0]["min_dfa_size"], 19);
    std::string nfa = temp_file("ab.json", R"({"kind":"nfa","alphabet":["a","b"],"states":3,"initial":0,"finals":[2],
        "transitions":[{"src":0,"label":"a","dst":1},{"src":1,"label":"b","dst":2}]})");
    Invocation up = run({"closure", "--kind", "up", "--automaton", nfa});
    ASSERT_EQ(up.code, 0) << up.err;
    EXPECT_EQ(up.report()["min_dfa_size"], 3);
    Invocation par = run({"closure", "--kind", "parikh", "--automaton", nfa, "--max-len", "1"});
    EXPECT_EQ(par.code, 2);
    Invocation both = run({"closure", "--kind", "down", "--n", "2", "--automaton", nfa});
    EXPECT_EQ(both.code, 2);
    Invocation cert = run({"certify", "--kind", "fig5", "--n", "1"});
    ASSERT_EQ(cert.code, 0);
    EXPECT_EQ(cert.report()["gamma2_count"]["min"], 4);
    Invocation fam = run({"certify", "--kind", "family", "--n", "2"});
    EXPECT_EQ(fam.code, 0);
    EXPECT_EQ(fam.report()["words"], 1);
}

TEST(Cli, HelpPrintsGrammar)
{
    Invocation h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find(cli_grammar()), std::string::npos);
    Invocation none = run({});
    EXPECT_EQ(none.code, 2);
}

TEST(Cli, BinaryEndToEnd)
{
    std::string cmd = std::string(STRCON_CLI) + " solve --constraint " + data("example_duplicating.json") +
                      " --bound 6 > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(st));
    EXPECT_EQ(WEXITSTATUS(st), 0);
    cmd = std::string(STRCON_CLI) + " certify --kind fig5 --n 9 > /dev/null 2>&1";
    st = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(st));
    EXPECT_EQ(WEXITSTATUS(st), 4);
}

#include <gtest/gtest.h>

#include <sstream>

#include "ltlnorm/cli.hpp"
#include "ltlnorm/corpus.hpp"
#include "oracle.hpp"

using namespace ltlnorm;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args, const CheckHooks& hooks = {})
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Normalize)
{
    const CliRun closed = run({"normalize", "FG(a U b)", "--method", "closed"});
    EXPECT_EQ(closed.code, kExitOk);
    const Formula got = parse(closed.out);
    EXPECT_EQ(oracle::lasso_disagreements(got, parse("GF b & FG(a W b)"), 500, 1), 0u);

    EXPECT_EQ(run({"normalize", "a U b", "--method", "rewrite"}).out, "a U b\n");
    EXPECT_EQ(run({"normalize", "G(F a | b)", "--method", "fgx"}).out, "GF a | F(a & X G b) | G b\n");

    const CliRun traced = run({"normalize", "FG(a U b)", "--trace"});
    EXPECT_EQ(traced.out, "GF b & FG(a W b)\n# stage 3\nrule=fg-u path=. before=4 after=10\n");

    const CliRun dual = run({"normalize", "GF(a U b)", "--method", "dual"});
    EXPECT_EQ(dual.code, kExitOk);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"normalize", "a U"}).code, kExitParseError);
    EXPECT_EQ(run({"normalize", "a", "--method", "bogus"}).code, kExitParseError);
    EXPECT_EQ(run({"frobnicate"}).code, kExitParseError);
    EXPECT_EQ(run({}).code, kExitParseError);
    const CliRun fgx = run({"normalize", "a U b", "--method", "fgx"});
    EXPECT_EQ(fgx.code, kExitPrecondition);
    EXPECT_NE(fgx.err.find("fragment"), std::string::npos);
    EXPECT_EQ(run({"check", "a", "--lassos", "0"}).code, kExitPrecondition);
    EXPECT_EQ(run({"stats", "--family", "psi"}).code, kExitPrecondition);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, Classify)
{
    const CliRun r = run({"classify", "X a"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out,
              "classes: S1 P1\ndelta2: true\nform: normal\nnodes: 2\nubw: 0\ngfba: 0\n");
}

TEST(Cli, Automata)
{
    const CliRun aww = run({"aww", "a U b"});
    EXPECT_EQ(aww.code, kExitOk);
    EXPECT_NE(aww.out.find("\"delta\""), std::string::npos);
    EXPECT_EQ(run({"aww", "a", "--format", "hoa"}).code, kExitPrecondition);

    const CliRun json = run({"drw", "GF a"});
    EXPECT_EQ(json.code, kExitOk);
    EXPECT_NE(json.out.find("\"acceptance\""), std::string::npos);
    const CliRun hoa = run({"drw", "GF a", "--format", "hoa"});
    EXPECT_EQ(hoa.out.rfind("HOA: v1", 0), 0u);
}

TEST(Cli, Check)
{
    const CliRun ok = run({"check", "((a W b) U c) W d", "--lassos", "500"});
    EXPECT_EQ(ok.code, kExitOk) << ok.out;
    EXPECT_NE(ok.out.find("result: unanimous"), std::string::npos);
    EXPECT_EQ(run({"check", "tt", "--lassos", "20"}).code, kExitOk);

    // A normalizer that drops a conjunct must be caught.
    CheckHooks hooks;
    hooks.corrupt = [](const Formula& f) { return f.op() == Op::And ? f.left() : f; };
    const CliRun bad = run({"check", "FG(a U b)", "--lassos", "200", "--seed", "3"}, hooks);
    EXPECT_EQ(bad.code, kExitDisagreement);
    const auto pos = bad.out.find("witness: ");
    ASSERT_NE(pos, std::string::npos);
    const std::string witness = bad.out.substr(pos + 9, bad.out.find(" (", pos) - pos - 9);
    const LassoWord w = parse_lasso(witness, {"a", "b"});
    EXPECT_NE(eval_lasso(parse("FG(a U b)"), w), eval_lasso(parse("GF b"), w));
    EXPECT_NE(bad.out.find("rewrite"), std::string::npos);
}

TEST(Cli, StatsIsDeterministic)
{
    const std::vector<std::string> args{"stats", "--count", "40", "--max-nodes", "10", "--seed", "7"};
    const CliRun a = run(args);
    std::vector<std::string> serial = args;
    serial.insert(serial.end(), {"--threads", "1"});
    const CliRun b = run(serial);
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
              "formula,input_nodes,closed_nodes,rewrite_nodes,rewrite_steps,a1w_states,drw_states,"
              "rabin_pairs");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 41);
}

TEST(Cli, StatsPhiFamily)
{
    const CliRun r = run({"stats", "--family", "phi", "--n-max", "6"});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        // The rewrite_steps column is the fifth field.
        const auto q = line.rfind('"');
        std::istringstream fields(line.substr(q + 2));
        std::string input, closed, rewrite, steps;
        std::getline(fields, input, ',');
        std::getline(fields, closed, ',');
        std::getline(fields, rewrite, ',');
        std::getline(fields, steps, ',');
        EXPECT_EQ(steps, "2") << line;
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(Cli, LiteralCorpusHasTinyAutomata)
{
    CorpusSpec spec;
    spec.count = 30;
    spec.max_nodes = 1;
    spec.seed = 3;
    for (const auto& row : stats_rows(generate_corpus(spec))) {
        ASSERT_TRUE(row.drw_states.has_value());
        EXPECT_LE(*row.drw_states, 3u) << row.formula;
    }
}

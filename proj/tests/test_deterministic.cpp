#include <gtest/gtest.h>

#include "ltlnorm/deterministic.hpp"
#include "ltlnorm/io.hpp"
#include "ltlnorm/rewrite.hpp"
#include "oracle.hpp"

using namespace ltlnorm;

namespace {

bool accepts(const DeterministicAutomaton& d, const char* word)
{
    return drw_accepts_lasso(d, parse_lasso(word, d.ap));
}

// Sampled agreement of an automaton with a formula.
std::size_t disagreements(const DeterministicAutomaton& d, const Formula& f, std::size_t n,
                          std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const LassoWord w = random_lasso(rng, d.ap);
        bad += drw_accepts_lasso(d, w) != eval_lasso(f, w);
    }
    return bad;
}

}  // namespace

TEST(Breakpoint, CoBuchi)
{
    const DeterministicAutomaton fg = breakpoint_cobuchi(ltl_to_a1w(parse("F G a")));
    EXPECT_EQ(fg.acceptance.kind, AcceptanceKind::CoBuchi);
    EXPECT_TRUE(accepts(fg, ";{a}"));
    EXPECT_FALSE(accepts(fg, ";{a},{}"));

    const DeterministicAutomaton fb = breakpoint_cobuchi(ltl_to_a1w(parse("F b")));
    EXPECT_TRUE(accepts(fb, "{},{b};{}"));
    EXPECT_FALSE(accepts(fb, ";{}"));

    AlternatingAutomaton empty = ltl_to_a1w(parse("F b"));
    empty.initial = PosBool::ff();
    const DeterministicAutomaton e = breakpoint_cobuchi(empty);
    EXPECT_EQ(e.size(), 1u);
    EXPECT_FALSE(accepts(e, ";{b}"));

    EXPECT_THROW(breakpoint_cobuchi(ltl_to_a1w(parse("G F a"))), PreconditionError);
}

TEST(Breakpoint, Buchi)
{
    const DeterministicAutomaton gf = breakpoint_buchi(ltl_to_a1w(parse("G F a")));
    EXPECT_EQ(gf.acceptance.kind, AcceptanceKind::Buchi);
    EXPECT_TRUE(accepts(gf, ";{a},{}"));
    EXPECT_FALSE(accepts(gf, "{a};{}"));

    const DeterministicAutomaton g = breakpoint_buchi(ltl_to_a1w(parse("G a")));
    EXPECT_TRUE(accepts(g, ";{a}"));
    EXPECT_FALSE(accepts(g, ";{a},{}"));

    AlternatingAutomaton all = ltl_to_a1w(parse("G a"));
    all.initial = PosBool::tt();
    const DeterministicAutomaton u = breakpoint_buchi(all);
    EXPECT_TRUE(accepts(u, ";{}"));
    EXPECT_TRUE(accepts(u, "{a};{a},{}"));
}

TEST(Aww2ToDrw, Examples)
{
    const DeterministicAutomaton d = aww2_to_drw(ltl_to_a1w(parse("GF b & FG(a W b)")));
    EXPECT_EQ(d.pair_count(), 1u);
    EXPECT_TRUE(accepts(d, ";{a},{b}"));
    EXPECT_FALSE(accepts(d, ";{a}"));

    const DeterministicAutomaton two = aww2_to_drw(ltl_to_a1w(parse("F a | G b")));
    EXPECT_EQ(two.pair_count(), 2u);
    EXPECT_TRUE(accepts(two, ";{b}"));
    EXPECT_TRUE(accepts(two, "{},{a};{}"));
    EXPECT_FALSE(accepts(two, ";{}"));
}

TEST(LtlToDrw, Examples)
{
    const DeterministicAutomaton d = ltl_to_drw(parse("FG(a U b)"));
    EXPECT_TRUE(accepts(d, ";{b}"));
    EXPECT_FALSE(accepts(d, ";{a}"));

    const DeterministicAutomaton t = ltl_to_drw(Formula::tt());
    EXPECT_TRUE(accepts(t, ";{}"));
    EXPECT_EQ(disagreements(ltl_to_drw(Formula::tt(), {"a"}), Formula::tt(), 50, 1), 0u);
    EXPECT_EQ(disagreements(ltl_to_drw(Formula::ff(), {"a"}), Formula::ff(), 50, 1), 0u);

    const Formula running = parse("((a W b) U c) W d");
    DrwInfo info;
    const DeterministicAutomaton r = ltl_to_drw(running, {}, &info);
    EXPECT_EQ(disagreements(r, running, 500, 2), 0u);
    EXPECT_LE(r.pair_count(), info.contexts);
    EXPECT_LE(info.contexts, 8u);
}

TEST(LtlToDrw, ComplementConsistency)
{
    CorpusSpec spec;
    spec.count = 100;
    spec.seed = 91;
    std::mt19937_64 rng(92);
    const auto ap = corpus_propositions(3);
    for (const Formula& f : generate_corpus(spec)) {
        const DeterministicAutomaton d = ltl_to_drw(f, ap);
        const DeterministicAutomaton n = ltl_to_drw(negate(f), ap);
        for (int i = 0; i < 50; ++i) {
            const LassoWord w = random_lasso(rng, ap);
            ASSERT_NE(drw_accepts_lasso(d, w), drw_accepts_lasso(n, w)) << to_string(f);
        }
    }
}

TEST(DeterminizeAww1, Examples)
{
    const DeterministicAutomaton fa = determinize_aww1(ltl_to_a1w(parse("F a")));
    EXPECT_EQ(fa.acceptance.kind, AcceptanceKind::TerminalAccepting);
    EXPECT_EQ(fa.size(), 2u);
    EXPECT_EQ(disagreements(fa, parse("F a"), 300, 3), 0u);

    const DeterministicAutomaton ga = determinize_aww1(ltl_to_a1w(parse("G a")));
    EXPECT_EQ(ga.acceptance.kind, AcceptanceKind::TerminalRejecting);
    EXPECT_EQ(disagreements(ga, parse("G a"), 300, 4), 0u);

    const DeterministicAutomaton mixed = determinize_aww1(ltl_to_a1w(parse("F a & G b")));
    EXPECT_EQ(mixed.acceptance.kind, AcceptanceKind::Weak);
    EXPECT_EQ(disagreements(mixed, parse("F a & G b"), 300, 5), 0u);

    EXPECT_THROW(determinize_aww1(ltl_to_a1w(parse("G F a"))), PreconditionError);
}

TEST(DeterminizeAww1, TerminalSinks)
{
    const DeterministicAutomaton fa = determinize_aww1(ltl_to_a1w(parse("F a")));
    const StateId sink = fa.acceptance.sink;
    for (Letter l = 0; l < fa.alphabet_size(); ++l)
        EXPECT_EQ(fa.step(sink, l), sink);
    EXPECT_EQ(fa.labels[sink], "tt");
    const DeterministicAutomaton ga = determinize_aww1(ltl_to_a1w(parse("G a")));
    EXPECT_EQ(ga.labels[ga.acceptance.sink], "ff");
}

TEST(Product, UnionAndIntersection)
{
    const std::vector<std::string> ap{"a", "b"};
    const DeterministicAutomaton fa = ltl_to_drw(parse("F a"), ap);
    const DeterministicAutomaton gb = ltl_to_drw(parse("G b"), ap);
    const DeterministicAutomaton u = product(fa, gb, ProductMode::Union);
    EXPECT_TRUE(accepts(u, ";{b}"));
    EXPECT_EQ(u.pair_count(), fa.pair_count() + gb.pair_count());
    EXPECT_EQ(disagreements(u, parse("F a | G b"), 300, 6), 0u);

    const DeterministicAutomaton d = ltl_to_drw(parse("GF a & FG !b"), ap);
    const DeterministicAutomaton i = product(d, universal_automaton(ap), ProductMode::Intersect);
    EXPECT_EQ(disagreements(i, parse("GF a & FG !b"), 300, 7), 0u);

    const DeterministicAutomaton fg = breakpoint_cobuchi(ltl_to_a1w(parse("F G a"), ap));
    const DeterministicAutomaton gf = breakpoint_buchi(ltl_to_a1w(parse("G F b"), ap));
    const DeterministicAutomaton both = product(fg, gf, ProductMode::Intersect);
    EXPECT_EQ(both.pair_count(), 1u);
    EXPECT_EQ(disagreements(both, parse("FG a & GF b"), 300, 8), 0u);

    EXPECT_THROW(product(fa, ltl_to_drw(parse("F a"), {"a"}), ProductMode::Union), PreconditionError);
    EXPECT_EQ(union_all({}, ap).pair_count(), 0u);
}

TEST(DrwLasso, AcceptanceBasics)
{
    const std::vector<std::string> ap{"a"};
    EXPECT_TRUE(accepts(universal_automaton(ap), "{a};{}"));
    EXPECT_FALSE(accepts(empty_automaton(ap), "{a};{}"));
    EXPECT_TRUE(accepts(ltl_to_drw(parse("G F a")), ";{a},{}"));
    EXPECT_THROW(drw_accepts_lasso(universal_automaton(ap), parse_lasso(";{b}")), PreconditionError);
    const DeterministicAutomaton gf = ltl_to_drw(parse("G F a"));
    const StateSet cycle = lasso_cycle(gf, parse_lasso("{};{a},{}", gf.ap));
    EXPECT_FALSE(cycle.empty());
    EXPECT_LE(cycle.size(), 2u);
}

TEST(Output, JsonAndHoa)
{
    const DeterministicAutomaton d = ltl_to_drw(parse("GF a"));
    const std::string json = to_json(d);
    EXPECT_NE(json.find("\"acceptance\""), std::string::npos);
    EXPECT_NE(json.find("\"rabin\""), std::string::npos);
    const std::string hoa = to_hoa(d, "GF a");
    EXPECT_EQ(hoa.rfind("HOA: v1\n", 0), 0u);
    EXPECT_NE(hoa.find("acc-name: Rabin " + std::to_string(d.pair_count())), std::string::npos);
    EXPECT_NE(hoa.find("--END--"), std::string::npos);
    const std::string buchi = to_hoa(breakpoint_buchi(ltl_to_a1w(parse("G F a"))));
    EXPECT_NE(buchi.find("acc-name: Buchi"), std::string::npos);
    const std::string cobuchi = to_hoa(breakpoint_cobuchi(ltl_to_a1w(parse("F G a"))));
    EXPECT_NE(cobuchi.find("acc-name: co-Buchi"), std::string::npos);
}

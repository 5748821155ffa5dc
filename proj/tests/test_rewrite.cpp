#include <gtest/gtest.h>

#include "ltlnorm/contextual.hpp"
#include "ltlnorm/corpus.hpp"
#include "ltlnorm/hierarchy.hpp"
#include "ltlnorm/rewrite.hpp"
#include "oracle.hpp"

using namespace ltlnorm;

namespace {

std::vector<Formula> corpus(std::size_t count, std::uint64_t seed)
{
    CorpusSpec spec;
    spec.count = count;
    spec.seed = seed;
    return generate_corpus(spec);
}

// GF-arguments and FG-subformulas of a formula.
void collect_limits(const Formula& f, std::vector<Formula>& gf_args, std::vector<Formula>& fg_nodes)
{
    for (auto& s : subformulas(f)) {
        if (s.op() == Op::GF)
            gf_args.push_back(s.child());
        if (s.op() == Op::FG)
            fg_nodes.push_back(s);
    }
}

}  // namespace

TEST(Stage1, Examples)
{
    const RewriteResult r = stage1(parse("(a0 U a1) W a2"));
    ASSERT_EQ(r.trace.steps.size(), 1u);
    EXPECT_EQ(r.trace.steps[0].rule, "w-left-u");
    EXPECT_EQ(r.trace.steps[0].formula_after,
              parse("GF a1 & (a0 W a1) W a2 | (a0 U a1) U (a2 | ff W ff)"));
    EXPECT_EQ(r.formula, parse("GF a1 & (a0 W a1) W a2 | (a0 U a1) U a2"));

    const RewriteResult right = stage1(parse("a W (b U c)"));
    EXPECT_EQ(right.trace.steps.at(0).rule, "w-right");
    EXPECT_EQ(right.formula, parse("a U (b U c) | G a"));

    const RewriteResult m = stage1(parse("(a M b) W c"));
    EXPECT_EQ(m.trace.steps.at(0).formula_after, parse("GF a & (a R b) W c | (a M b) U (c | G ff)"));
}

TEST(Stage2, Examples)
{
    const RewriteResult r = stage2(parse("(GF a) U b"));
    EXPECT_EQ(r.trace.steps.size(), 1u);
    EXPECT_EQ(r.trace.steps[0].formula_after, parse("GF a & (tt U b) | ff U b"));
    EXPECT_EQ(r.formula, parse("GF a & F b | ff U b"));

    const RewriteResult none = stage2(parse("a & GF b"));
    EXPECT_TRUE(none.trace.steps.empty());
    EXPECT_EQ(none.formula, parse("a & GF b"));

    EXPECT_THROW(stage2(parse("(a U b) W c")), PreconditionError);
}

TEST(Stage3, Examples)
{
    EXPECT_EQ(stage3(parse("GF(a W b)")).formula, parse("GF(a U b) | FG a"));
    EXPECT_EQ(stage3(parse("FG(a U b)")).formula, parse("GF b & FG(a W b)"));
    const RewriteResult id = stage3(parse("GF a"));
    EXPECT_TRUE(id.trace.steps.empty());
    EXPECT_EQ(id.formula, parse("GF a"));
    EXPECT_THROW(stage3(parse("GF a U b")), PreconditionError);
}

TEST(NormalizeRewrite, WorkedExamples)
{
    EXPECT_EQ(normalize_rewrite(parse("FG(a U b)")).formula, parse("GF b & FG(a W b)"));
    EXPECT_EQ(normalize_rewrite(parse("a U b")).formula, parse("a U b"));
    EXPECT_TRUE(normalize_rewrite(parse("a U b")).trace.steps.empty());
    const Formula r = normalize_rewrite(parse("((a W b) U c) W d")).formula;
    EXPECT_EQ(form_status(r), FormStatus::Normal);
    EXPECT_EQ(oracle::lasso_disagreements(r, parse("((a W b) U c) W d"), 1000, 4), 0u);
}

TEST(NormalizeRewrite, PhiFamilyTakesTwoRules)
{
    for (unsigned n = 3; n <= 10; ++n) {
        const RewriteResult r = normalize_rewrite(phi_family(n));
        EXPECT_EQ(r.trace.steps.size(), 2u) << n;
        EXPECT_EQ(form_status(r.formula), FormStatus::Normal);
        EXPECT_LE(r.formula.size(), 12u * n);
    }
    const RewriteResult five = normalize_rewrite(phi_family(5));
    EXPECT_EQ(five.trace.steps[0].rule, "w-left-u");
    EXPECT_EQ(five.trace.steps[1].rule, "pull-gf");
    EXPECT_EQ(oracle::lasso_disagreements(five.formula, phi_family(5), 500, 5), 0u);
}

TEST(NormalizeRewrite, TraceText)
{
    const RewriteResult r = normalize_rewrite(phi_family(4));
    const std::string text = r.trace.to_text();
    EXPECT_EQ(text,
              "# stage 1\n"
              "rule=w-left-u path=0.0 before=9 after=22\n"
              "# stage 2\n"
              "rule=pull-gf path=. before=18 after=38\n");
}

TEST(NormalizeRewrite, StepsPreserveSemantics)
{
    for (const Formula& f : corpus(150, 51)) {
        const RewriteResult r = normalize_rewrite(f);
        for (const RewriteStep& s : r.trace.steps) {
            EXPECT_EQ(oracle::lasso_disagreements(s.formula_before, s.formula_after, 200, 52), 0u)
                << s.rule << " on " << to_string(s.formula_before);
            EXPECT_EQ(s.before, s.formula_before.size());
            EXPECT_EQ(s.after_raw, s.formula_after.size());
        }
    }
}

TEST(NormalizeRewrite, StageProgressionAndMeasures)
{
    for (const Formula& f : corpus(400, 53)) {
        const RewriteResult s1 = stage1(f);
        const FormStatus st1 = form_status(s1.formula);
        EXPECT_NE(st1, FormStatus::Unnormalized) << to_string(f);
        EXPECT_EQ(ubw(s1.formula), 0u);
        const RewriteResult s2 = stage2(s1.formula);
        const FormStatus st2 = form_status(s2.formula);
        EXPECT_TRUE(st2 == FormStatus::OneTwoForm || st2 == FormStatus::Normal) << to_string(f);
        const RewriteResult s3 = stage3(s2.formula);
        EXPECT_EQ(form_status(s3.formula), FormStatus::Normal) << to_string(f);

        for (auto& step : s1.trace.steps)
            EXPECT_LT(step.measure_after, step.measure_before) << step.rule;
        for (auto& step : s2.trace.steps)
            EXPECT_LT(step.measure_after, step.measure_before) << step.rule;
        for (auto& step : s3.trace.steps)
            EXPECT_LT(step.measure_after, step.measure_before) << step.rule;

        // Limit property of stage 1, on the raw rule output.
        RewriteOptions raw;
        raw.simplify = false;
        std::vector<Formula> gf_args, fg_nodes;
        collect_limits(stage1(f, raw).formula, gf_args, fg_nodes);
        for (auto& g : gf_args)
            EXPECT_TRUE(contains_subformula(f, g)) << to_string(g) << " in " << to_string(f);
        for (auto& g : fg_nodes)
            EXPECT_TRUE(contains_subformula(f, g));
    }
}

TEST(NormalizeRewrite, IdempotentOnNormalForms)
{
    for (const Formula& f : corpus(200, 54)) {
        const Formula r = normalize_rewrite(f).formula;
        const RewriteResult again = normalize_rewrite(parse(to_string(r)));
        EXPECT_TRUE(again.trace.steps.empty()) << to_string(r);
        EXPECT_EQ(again.formula, r);
    }
}

TEST(NormalizeRewrite, GeneralizedSubstitution)
{
    RewriteOptions opts;
    opts.generalized_substitution = true;
    for (const Formula& f : corpus(150, 55)) {
        const Formula r = normalize_rewrite(f, opts).formula;
        EXPECT_EQ(form_status(r), FormStatus::Normal);
        EXPECT_EQ(oracle::lasso_disagreements(f, r, 100, 56), 0u) << to_string(f);
    }
}

TEST(NormalizeDual, Examples)
{
    const Formula d = normalize_dual(parse("GF(a U b)"));
    EXPECT_TRUE(is_dual_normal(d));
    EXPECT_EQ(oracle::lasso_disagreements(d, parse("GF(a U b)"), 500, 6), 0u);
    EXPECT_EQ(normalize_dual(parse("a W b")), parse("a W b"));
    EXPECT_EQ(normalize_dual(parse("F a")), parse("F a"));
    for (const Formula& f : corpus(200, 57)) {
        const Formula r = normalize_dual(f);
        EXPECT_TRUE(is_dual_normal(r)) << to_string(f);
        EXPECT_EQ(oracle::lasso_disagreements(f, r, 50, 58), 0u) << to_string(f);
    }
}

namespace {

// Only tt U · and · W ff among the binary temporal operators.
bool in_fgx_shape(const Formula& f)
{
    for (auto& s : subformulas(f)) {
        if (s.op() == Op::Until && s.left() != Formula::tt())
            return false;
        if (s.op() == Op::WeakUntil && s.right() != Formula::ff())
            return false;
        if (s.op() == Op::Release || s.op() == Op::StrongRelease)
            return false;
    }
    return true;
}

}  // namespace

TEST(NormalizeFgx, Examples)
{
    EXPECT_EQ(normalize_fgx(parse("G(F a | b)")).formula, parse("GF a | F(a & X G b) | G b"));
    EXPECT_EQ(normalize_fgx(parse("GF(G a)")).formula, parse("FG a"));
    EXPECT_EQ(normalize_fgx(parse("F a")).formula, parse("F a"));
    EXPECT_THROW(normalize_fgx(parse("a U b")), PreconditionError);
    EXPECT_TRUE(in_fgx_fragment(parse("X G(a | F !b)")));
    EXPECT_FALSE(in_fgx_fragment(parse("a W b")));
}

TEST(NormalizeFgx, RandomFragment)
{
    CorpusSpec spec;
    spec.count = 300;
    spec.seed = 59;
    spec.weights = {{"and", 1}, {"or", 1}, {"next", 1}, {"until", 0}, {"weak_until", 0},
                    {"release", 0}, {"strong_release", 0}, {"literal", 1}};
    std::mt19937_64 rng(60);
    for (Formula f : generate_corpus(spec)) {
        // Wrap random pieces in F and G so the fragment is exercised.
        f = replace_if(f, [&](const Formula& s) {
            if (s.op() != Op::Lit || draw(rng, 2))
                return Formula();
            return draw(rng, 2) ? Formula::eventually(Formula::globally(s))
                                : Formula::globally(Formula::disj(s, Formula::eventually(Formula::lit("b"))));
        });
        ASSERT_TRUE(in_fgx_fragment(f));
        const RewriteResult r = normalize_fgx(f);
        EXPECT_EQ(form_status(r.formula), FormStatus::Normal) << to_string(f);
        EXPECT_TRUE(in_fgx_shape(r.formula)) << to_string(r.formula);
        EXPECT_EQ(oracle::lasso_disagreements(f, r.formula, 100, 61), 0u) << to_string(f);
    }
}

TEST(Measures, RankAndObstacles)
{
    EXPECT_EQ(rank(parse("(a U b) W c")), 5u + 1u);
    EXPECT_EQ(obstacles(parse("GF a")), 0u);
    EXPECT_GT(obstacles(parse("GF(a W b)")), 0u);
    EXPECT_GT(obstacles(parse("FG(a U b)")), 0u);
}

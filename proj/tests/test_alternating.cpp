#include <gtest/gtest.h>

#include "ltlnorm/alternating.hpp"
#include "ltlnorm/corpus.hpp"
#include "ltlnorm/io.hpp"
#include "ltlnorm/rewrite.hpp"
#include "oracle.hpp"

using namespace ltlnorm;

namespace {

// The three-state example automaton over {a, b, c}, built by hand:
// q0 waits on a and may move to q1; q1 is accepting and spawns q2 when b
// fails; q2 waits for c.
AlternatingAutomaton example_automaton()
{
    AlternatingAutomaton a;
    a.ap = {"a", "b", "c"};
    a.states = {{"q0", false, {}}, {"q1", true, {}}, {"q2", false, {}}};
    a.initial = PosBool::var(0);
    a.delta.assign(3, std::vector<PosBool>(8));
    for (Letter l = 0; l < 8; ++l) {
        const bool has_a = l & 1u, has_b = l & 2u, has_c = l & 4u;
        a.delta[0][l] = has_a ? PosBool::var(0) | PosBool::var(1) : PosBool::ff();
        a.delta[1][l] = has_b ? PosBool::var(1) : PosBool::var(1) & PosBool::var(2);
        a.delta[2][l] = has_c ? PosBool::tt() : PosBool::var(2);
    }
    return a;
}

std::vector<Formula> normalized_corpus(std::size_t count, std::uint64_t seed)
{
    CorpusSpec spec;
    spec.count = count;
    spec.seed = seed;
    std::vector<Formula> out;
    for (const Formula& f : generate_corpus(spec))
        out.push_back(normalize_rewrite(f).formula);
    return out;
}

}  // namespace

TEST(AlternationHeight, Examples)
{
    const AlternatingAutomaton ex = example_automaton();
    EXPECT_NO_THROW(ex.validate());
    EXPECT_EQ(alternation_height(ex), 3u);
    const AutomatonClass c = automaton_class(ex);
    EXPECT_TRUE(c.weak);
    EXPECT_TRUE(c.very_weak);
    EXPECT_EQ(c.height, 3u);
    EXPECT_EQ(c.initial_polarity, Polarity::R);

    AlternatingAutomaton single;
    single.states = {{"p", true, {}}};
    single.initial = PosBool::var(0);
    single.delta = {{PosBool::var(0)}};
    EXPECT_EQ(alternation_height(single), 1u);
    EXPECT_EQ(automaton_class(single).initial_polarity, Polarity::A);

    AlternatingAutomaton cycle;
    cycle.states = {{"p", true, {}}, {"q", false, {}}};
    cycle.initial = PosBool::var(0);
    cycle.delta = {{PosBool::var(1)}, {PosBool::var(0)}};
    EXPECT_FALSE(automaton_class(cycle).weak);
    try {
        alternation_height(cycle);
        FAIL();
    } catch (const NotWeakError& e) {
        EXPECT_EQ(e.witness(), (StateSet{0, 1}));
    }

    // A two-state cycle inside α is weak but not very weak.
    AlternatingAutomaton loop2 = cycle;
    loop2.states[1].accepting = true;
    const AutomatonClass lc = automaton_class(loop2);
    EXPECT_TRUE(lc.weak);
    EXPECT_FALSE(lc.very_weak);
    EXPECT_EQ(lc.height, 1u);
}

TEST(LtlToA1w, PaperExampleTable)
{
    // The construction applied to a U X G(b | X F c). The initial atom
    // moves to the G-atom on every letter (through the X), so on letters
    // without a it yields q1 rather than ff.
    const AlternatingAutomaton a = ltl_to_a1w(parse("a U X G(b | X F c)"));
    ASSERT_EQ(a.size(), 3u);
    const PosBool q0 = PosBool::var(0), q1 = PosBool::var(1), q2 = PosBool::var(2);
    EXPECT_EQ(a.initial, q0);
    EXPECT_EQ(a.states[0].atom->formula, parse("a U X G(b | X F c)"));
    EXPECT_EQ(a.states[1].atom->formula, parse("G(b | X F c)"));
    EXPECT_EQ(a.states[2].atom->formula, parse("F c"));
    for (Letter l = 0; l < 8; ++l) {
        const bool has_a = l & 1u, has_b = l & 2u, has_c = l & 4u;
        EXPECT_EQ(a.step(0, l), has_a ? q0 | q1 : q1);
        EXPECT_EQ(a.step(1, l), has_b ? q1 : q1 & q2);
        EXPECT_EQ(a.step(2, l), has_c ? PosBool::tt() : q2);
    }
    EXPECT_FALSE(a.accepting(0));
    EXPECT_TRUE(a.accepting(1));
    EXPECT_FALSE(a.accepting(2));
    EXPECT_EQ(alternation_height(a), 3u);
}

TEST(LtlToA1w, SmallExamples)
{
    const AlternatingAutomaton lit = ltl_to_a1w(parse("a"));
    ASSERT_EQ(lit.size(), 1u);
    EXPECT_EQ(lit.initial, PosBool::var(0));
    EXPECT_TRUE(lit.step(0, 0).is_false());
    EXPECT_TRUE(lit.step(0, 1).is_true());

    const AlternatingAutomaton xa = ltl_to_a1w(parse("X a"));
    const auto& models = xa.initial.models();
    ASSERT_EQ(models.size(), 2u);
    std::vector<HierarchyClass> kinds;
    for (auto& m : models) {
        ASSERT_EQ(m.size(), 1u);
        EXPECT_EQ(xa.states[m[0]].atom->formula, parse("X a"));
        kinds.push_back(xa.states[m[0]].atom->cls);
    }
    EXPECT_NE(kinds[0], kinds[1]);

    const AutomatonClass u = automaton_class(ltl_to_a1w(parse("a U b")));
    EXPECT_EQ(u.height, 1u);
    EXPECT_EQ(u.initial_polarity, Polarity::R);
    EXPECT_EQ(automaton_class(ltl_to_a1w(parse("G a"))).initial_polarity, Polarity::A);

    EXPECT_THROW(ltl_to_a1w(parse("G F a"), HierarchyClass::sigma(1)), PreconditionError);
}

TEST(LtlToA1w, StructureOnNormalizedCorpus)
{
    for (const Formula& f : normalized_corpus(300, 81)) {
        const AlternatingAutomaton a = ltl_to_a1w(f);
        ASSERT_NO_THROW(a.validate());
        const AutomatonClass c = automaton_class(a);
        EXPECT_TRUE(c.very_weak) << to_string(f);
        EXPECT_LE(c.height, 2u) << to_string(f);
        EXPECT_LE(a.size(), 2 * proper_subformulas(expand_limits(f)).size()) << to_string(f);
        // Transitions never climb the hierarchy.
        const auto graph = successor_graph(a);
        for (StateId q = 0; q < a.size(); ++q)
            for (StateId r : graph[q])
                EXPECT_TRUE(subclass(a.states[r].atom->cls, a.states[q].atom->cls))
                    << a.states[q].label << " -> " << a.states[r].label;
        // Literal atoms have no successors.
        for (StateId q = 0; q < a.size(); ++q)
            if (a.states[q].atom->cls.level == 0)
                EXPECT_TRUE(graph[q].empty());
    }
}

TEST(LtlToA1w, LanguageMatchesFormula)
{
    std::mt19937_64 rng(83);
    for (const Formula& f : normalized_corpus(200, 82)) {
        const AlternatingAutomaton a = ltl_to_a1w(f, corpus_propositions(3));
        const AlternatingAutomaton d = dualize(a);
        for (int i = 0; i < 40; ++i) {
            const LassoWord w = random_lasso(rng, a.ap);
            const bool expect = eval_lasso(f, w);
            ASSERT_EQ(oracle::weak_accepts(a, w), expect) << to_string(f) << " on " << to_string(w);
            ASSERT_EQ(oracle::weak_accepts(d, w), !expect) << to_string(f);
        }
    }
}

TEST(LtlToA1w, SharedBuilderPreferences)
{
    A1WBuilder b({"a"}, KindPreference::Sigma);
    const PosBool s = b.mark(parse("X a"), HierarchyClass::delta(1));
    EXPECT_EQ(s.models().size(), 1u);
    b.set_preference(KindPreference::None);
    const PosBool both = b.mark(parse("X a"), HierarchyClass::delta(1));
    EXPECT_EQ(both.models().size(), 2u);
    const AlternatingAutomaton a = b.finish(both);
    EXPECT_EQ(automaton_class(a).initial_polarity, Polarity::Mixed);
}

TEST(Json, AlternatingRoundTrip)
{
    const AlternatingAutomaton a = ltl_to_a1w(parse("GF b & FG(a W b)"));
    const std::string text = to_json(a);
    const AlternatingAutomaton back = alternating_from_json(text);
    EXPECT_EQ(back.ap, a.ap);
    EXPECT_EQ(back.initial, a.initial);
    ASSERT_EQ(back.size(), a.size());
    for (StateId q = 0; q < a.size(); ++q) {
        EXPECT_EQ(back.states[q].label, a.states[q].label);
        EXPECT_EQ(back.accepting(q), a.accepting(q));
        for (Letter l = 0; l < a.alphabet_size(); ++l)
            EXPECT_EQ(back.step(q, l), a.step(q, l));
    }
    EXPECT_EQ(to_json(back), text);
    EXPECT_EQ(letter_bits(5, 3), "101");
    EXPECT_EQ(parse_letter_bits("011"), 6u);
    EXPECT_THROW(alternating_from_json("{\"ap\": []}"), PreconditionError);
}

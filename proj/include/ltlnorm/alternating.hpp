#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltlnorm/formula.hpp"
#include "ltlnorm/hierarchy.hpp"
#include "ltlnorm/lasso.hpp"
#include "ltlnorm/posbool.hpp"

namespace ltlnorm {

// A state of an automaton built from a formula: a proper formula marked
// with one of its minimal classes.
struct Atom {
    Formula formula;
    HierarchyClass cls;
};

struct AlternatingState {
    std::string label;
    bool accepting = false;
    std::optional<Atom> atom;  // empty for hand-built automata
};

struct AlternatingAutomaton {
    std::vector<std::string> ap;
    std::vector<AlternatingState> states;
    PosBool initial;
    std::vector<std::vector<PosBool>> delta;  // delta[state][letter]

    std::size_t alphabet_size() const { return std::size_t(1) << ap.size(); }
    std::size_t size() const { return states.size(); }
    bool accepting(StateId q) const { return states[q].accepting; }
    const PosBool& step(StateId q, Letter a) const { return delta[q][a]; }

    // Throws PreconditionError when delta is not total or mentions unknown
    // states.
    void validate() const;
};

constexpr std::size_t kMaxPropositions = 16;

// When a proper formula has two minimal classes below the requested one,
// the marking may keep only one of them; either atom recognizes the same
// language.
enum class KindPreference { None, Sigma, Pi };

// Builds automata over a shared pool of atoms. mark() may be called for
// several formulas; finish() closes the pool under δ and returns the
// automaton with the given initial formula.
class A1WBuilder {
public:
    A1WBuilder(std::vector<std::string> ap, KindPreference prefer = KindPreference::None);
    ~A1WBuilder();
    A1WBuilder(const A1WBuilder&) = delete;
    A1WBuilder& operator=(const A1WBuilder&) = delete;

    void set_preference(KindPreference prefer);
    // Marked formula φ_Γ. GF/FG must be expanded beforehand. Throws
    // PreconditionError when φ is not in Γ.
    PosBool mark(const Formula& f, const HierarchyClass& gamma);
    AlternatingAutomaton finish(const PosBool& initial);

private:
    struct Impl;
    Impl* impl_;
};

// A_φ with θ0 = φ marked with Δ_i for the least i containing φ (or with the
// given class). GF/FG nodes are expanded to G F / F G first. When ap is empty
// it is the sorted proposition list of φ.
AlternatingAutomaton ltl_to_a1w(const Formula& f, std::vector<std::string> ap = {},
                                KindPreference prefer = KindPreference::None);
AlternatingAutomaton ltl_to_a1w(const Formula& f, const HierarchyClass& gamma,
                                std::vector<std::string> ap = {},
                                KindPreference prefer = KindPreference::None);

// q → q' iff q' occurs in a minimal model of some δ(q, a).
std::vector<StateSet> successor_graph(const AlternatingAutomaton& a);

// Strongly connected components in reverse topological order (sinks first).
std::vector<StateSet> strongly_connected_components(const std::vector<StateSet>& graph);

class NotWeakError : public PreconditionError {
public:
    NotWeakError(StateSet witness);
    const StateSet& witness() const noexcept { return witness_; }

private:
    StateSet witness_;
};

enum class Polarity { A, R, Mixed };
std::string to_string(Polarity p);

struct AutomatonClass {
    bool weak = false;
    bool very_weak = false;
    unsigned height = 0;  // 0 when not weak
    Polarity initial_polarity = Polarity::Mixed;
};

// Least n such that every path alternates at most n-1 times between α and
// non-α components. Components without an internal edge are passed through
// without contributing an alternation. Throws NotWeakError.
unsigned alternation_height(const AlternatingAutomaton& a);
AutomatonClass automaton_class(const AlternatingAutomaton& a);

// Polarity of a positive Boolean formula over the automaton's states: A if
// every variable is accepting, R if none is; constants report R.
Polarity polarity(const AlternatingAutomaton& a, const PosBool& theta);

// Complement automaton: dual transition formulas and initial formula,
// α replaced by its complement. Correct for weak automata.
AlternatingAutomaton dualize(const AlternatingAutomaton& a);
AlternatingAutomaton with_initial(const AlternatingAutomaton& a, const PosBool& initial);

}  // namespace ltlnorm

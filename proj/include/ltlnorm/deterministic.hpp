#pragma once

#include <string>
#include <vector>

#include "ltlnorm/alternating.hpp"
#include "ltlnorm/lasso.hpp"

namespace ltlnorm {

using StateFlags = std::vector<char>;  // membership indexed by state id

// Rabin pair: accept when fin is visited finitely often and inf infinitely
// often.
struct RabinPair {
    StateFlags fin;
    StateFlags inf;
};

enum class AcceptanceKind { Buchi, CoBuchi, Rabin, TerminalAccepting, TerminalRejecting, Weak };
std::string to_string(AcceptanceKind k);

struct Acceptance {
    AcceptanceKind kind = AcceptanceKind::Rabin;
    StateFlags set;                // Büchi / co-Büchi / weak accepting set
    StateId sink = 0;              // terminal variants
    std::vector<RabinPair> pairs;  // Rabin
};

struct DeterministicAutomaton {
    std::vector<std::string> ap;
    std::vector<std::string> labels;           // debug payload per state
    StateId initial = 0;
    std::vector<std::vector<StateId>> delta;   // delta[state][letter]
    Acceptance acceptance;

    std::size_t size() const { return delta.size(); }
    std::size_t alphabet_size() const { return std::size_t(1) << ap.size(); }
    StateId step(StateId q, Letter a) const { return delta[q][a]; }
    // Number of Rabin pairs after conversion to Rabin acceptance.
    std::size_t pair_count() const;
};

// Acceptance rewritten as Rabin pairs over the same states. Weak and
// terminal conditions become single co-Büchi-shaped pairs.
std::vector<RabinPair> rabin_pairs(const DeterministicAutomaton& d);

// Break-point construction for weak automata of height ≤ 2 whose accepting
// states only reach accepting states (this covers AWW[2,R]). States are
// (Levels, Promising); co-Büchi set = states with Promising ≡ ff.
DeterministicAutomaton breakpoint_cobuchi(const AlternatingAutomaton& a);
// The dual case (covers AWW[2,A]): complement, build the co-Büchi
// automaton, read its co-Büchi set as a Büchi set.
DeterministicAutomaton breakpoint_buchi(const AlternatingAutomaton& a);
// One-pair DRW for θR ∧ θA, where θR satisfies the co-Büchi precondition
// and θA the Büchi precondition.
DeterministicAutomaton breakpoint_rabin_pair(const AlternatingAutomaton& a, const PosBool& theta_r,
                                             const PosBool& theta_a);
// One Rabin pair per minimal model of θ0.
DeterministicAutomaton aww2_to_drw(const AlternatingAutomaton& a);

struct DrwInfo {
    std::size_t contexts = 0;     // surviving closed-form disjuncts
    std::size_t a1w_states = 0;   // states of the shared alternating automaton
};
// φ → closed form → one alternating automaton per disjunct → one Rabin pair
// per disjunct → union.
DeterministicAutomaton ltl_to_drw(const Formula& f, std::vector<std::string> ap = {},
                                  DrwInfo* info = nullptr);

// Terminal-accepting (polarity R), terminal-rejecting (polarity A) or weak
// (mixed) deterministic automaton for a weak automaton of height ≤ 1.
DeterministicAutomaton determinize_aww1(const AlternatingAutomaton& a);

enum class ProductMode { Intersect, Union };
// Synchronized product on reachable pairs. Union lifts and concatenates the
// pairs of both sides. Intersection needs one side whose condition is a
// single co-Büchi-shaped pair.
DeterministicAutomaton product(const DeterministicAutomaton& d1, const DeterministicAutomaton& d2,
                               ProductMode mode);
// n-ary union; with no operands, the empty automaton.
DeterministicAutomaton union_all(const std::vector<DeterministicAutomaton>& ds,
                                 std::vector<std::string> ap);

// States visited in one period of the eventual cycle of the run on w.
StateSet lasso_cycle(const DeterministicAutomaton& d, const LassoWord& w);
bool drw_accepts_lasso(const DeterministicAutomaton& d, const LassoWord& w);

DeterministicAutomaton universal_automaton(std::vector<std::string> ap);
DeterministicAutomaton empty_automaton(std::vector<std::string> ap);

}  // namespace ltlnorm

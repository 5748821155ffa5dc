#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltlnorm/formula.hpp"

namespace ltlnorm {

enum class ClassKind : std::uint8_t { Sigma, Pi, Delta };

// Syntactic future hierarchy class. All three kinds coincide at level 0.
struct HierarchyClass {
    ClassKind kind = ClassKind::Delta;
    unsigned level = 0;

    static HierarchyClass sigma(unsigned i) { return {ClassKind::Sigma, i}; }
    static HierarchyClass pi(unsigned i) { return {ClassKind::Pi, i}; }
    static HierarchyClass delta(unsigned i) { return {ClassKind::Delta, i}; }

    friend bool operator==(const HierarchyClass& a, const HierarchyClass& b)
    {
        return a.level == b.level && (a.level == 0 || a.kind == b.kind);
    }
    friend bool operator!=(const HierarchyClass& a, const HierarchyClass& b) { return !(a == b); }
};

// a ⊆ b in the hierarchy order.
bool subclass(const HierarchyClass& a, const HierarchyClass& b);
HierarchyClass dual(const HierarchyClass& c);
std::string to_string(const HierarchyClass& c);

// Least levels i with φ ∈ Σi, φ ∈ Πi and φ ∈ Δi. GF/FG count as G F / F G.
struct Levels {
    unsigned sigma = 0, pi = 0, delta = 0;
};
Levels levels(const Formula& f);

bool member(const Formula& f, const HierarchyClass& c);

// Minimal classes containing φ (one element, or two when Σi and Πi tie).
std::vector<HierarchyClass> classify(const Formula& f);
bool is_delta2(const Formula& f);

struct Measures {
    std::uint64_t nodes = 0;
    std::uint64_t ubw = 0;
    std::uint64_t gfba = 0;
};
// ubw: U/M nodes below some W/R node, not below a limit node (counted per
// occurrence). gfba: distinct limit subformulas occurring below a temporal
// node.
Measures measures(const Formula& f);
std::uint64_t ubw(const Formula& f);
std::uint64_t gfba(const Formula& f);

enum class FormStatus { Normal, OneTwoForm, OneForm, Unnormalized };
FormStatus form_status(const Formula& f);
// Normal form conditions for the dual normalizer: no W/R under U/M, no
// nested limits, no W/R inside GF and no U/M inside FG.
bool is_dual_normal(const Formula& f);
std::string to_string(FormStatus s);

inline bool is_u_like(Op op) { return op == Op::Until || op == Op::StrongRelease; }
inline bool is_w_like(Op op) { return op == Op::WeakUntil || op == Op::Release; }

}  // namespace ltlnorm

#pragma once

#include <cstdint>
#include <vector>

#include "ltlnorm/formula.hpp"

namespace ltlnorm {

// Candidate limit arguments of a limit-free formula: gf holds ψ for every
// χ U ψ or ψ M χ, fg holds ψ for every ψ W χ or χ R ψ. Both lists are
// deduplicated, in post-order of first occurrence.
struct Basis {
    std::vector<Formula> gf;
    std::vector<Formula> fg;

    // Strict subformula order between two basis arguments.
    static bool below(const Formula& a, const Formula& b);
};

Basis compute_basis(const Formula& f);

// Π1 approximant: U/M nodes whose GF guard is outside m collapse to ff.
Formula eval_nu(const Formula& f, const FormulaSet& m);
// Σ1 approximant: W/R nodes whose FG guard is in n collapse to tt.
Formula eval_mu(const Formula& f, const FormulaSet& n);
// Σ2 approximant: W/R nodes become U/M with a G(eval_nu) escape.
Formula flatten(const Formula& f, const FormulaSet& m);

// One disjunct of the closed form for a fixed pair (M, N).
struct ContextDisjunct {
    std::vector<Formula> m;
    std::vector<Formula> n;
    Formula flat;                      // flatten(φ, M)
    std::vector<Formula> fg_parts;     // FG(eval_nu(ψ, M)) for ψ ∈ N
    std::vector<Formula> gf_parts;     // GF(eval_mu(ψ, N)) for ψ ∈ M
    Formula raw;                       // conjunction before simplification
    Formula formula;                   // simplified, never ff
};

struct ClosedForm {
    Basis basis;
    std::uint64_t disjuncts_total = 0;  // 2^(|gf| + |fg|)
    std::uint64_t raw_nodes = 0;        // summed size before simplification
    std::uint64_t max_flatten_nodes = 0;
    std::vector<ContextDisjunct> disjuncts;  // survivors only
    Formula formula;
};

// GF/FG nodes in the input are expanded to G F / F G first.
ClosedForm closed_form(const Formula& f);
Formula normalize_closed_form(const Formula& f);

}  // namespace ltlnorm

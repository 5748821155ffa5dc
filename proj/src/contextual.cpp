#include "ltlnorm/contextual.hpp"

#include <algorithm>
#include <functional>

namespace ltlnorm {

bool Basis::below(const Formula& a, const Formula& b)
{
    return a != b && contains_subformula(b, a);
}

Basis compute_basis(const Formula& f)
{
    if (contains_op(f, Op::GF) || contains_op(f, Op::FG))
        throw PreconditionError("compute_basis expects a limit-free formula");
    Basis b;
    FormulaSet gf_seen, fg_seen;
    auto add = [](std::vector<Formula>& v, FormulaSet& seen, const Formula& g) {
        if (seen.insert(g).second)
            v.push_back(g);
    };
    for (auto& g : subformulas(f)) {
        switch (g.op()) {
        case Op::Until: add(b.gf, gf_seen, g.right()); break;
        case Op::StrongRelease: add(b.gf, gf_seen, g.left()); break;
        case Op::WeakUntil: add(b.fg, fg_seen, g.left()); break;
        case Op::Release: add(b.fg, fg_seen, g.right()); break;
        default: break;
        }
    }
    return b;
}

namespace {

void require_limit_free(const Formula& g)
{
    if (g.is_limit())
        throw PreconditionError("contextual evaluation expects limit-free formulas");
    if (g.op() == Op::Hole)
        throw PreconditionError("contextual evaluation does not accept holes");
}

}  // namespace

Formula eval_nu(const Formula& f, const FormulaSet& m)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        require_limit_free(g);
        if (g.arity() == 0)
            return g;
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula out;
        switch (g.op()) {
        case Op::Until:
            out = m.count(g.right()) ? Formula::weak_until(go(g.left()), go(g.right()))
                                     : Formula::ff();
            break;
        case Op::StrongRelease:
            out = m.count(g.left()) ? Formula::release(go(g.left()), go(g.right()))
                                    : Formula::ff();
            break;
        default:
            out = Formula::make(g.op(), go(g.left()),
                                g.arity() == 2 ? go(g.right()) : Formula());
        }
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

Formula eval_mu(const Formula& f, const FormulaSet& n)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        require_limit_free(g);
        if (g.arity() == 0)
            return g;
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula out;
        switch (g.op()) {
        case Op::WeakUntil:
            out = n.count(g.left()) ? Formula::tt() : Formula::until(go(g.left()), go(g.right()));
            break;
        case Op::Release:
            out = n.count(g.right()) ? Formula::tt()
                                     : Formula::strong_release(go(g.left()), go(g.right()));
            break;
        default:
            out = Formula::make(g.op(), go(g.left()),
                                g.arity() == 2 ? go(g.right()) : Formula());
        }
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

Formula flatten(const Formula& f, const FormulaSet& m)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        require_limit_free(g);
        if (g.arity() == 0)
            return g;
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula out;
        switch (g.op()) {
        case Op::WeakUntil:
            out = Formula::until(go(g.left()), Formula::disj(go(g.right()),
                                                             Formula::globally(eval_nu(g.left(), m))));
            break;
        case Op::Release:
            out = Formula::strong_release(
                Formula::disj(go(g.left()), Formula::globally(eval_nu(g.right(), m))),
                go(g.right()));
            break;
        default:
            out = Formula::make(g.op(), go(g.left()),
                                g.arity() == 2 ? go(g.right()) : Formula());
        }
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

namespace {

Formula conjoin(Formula acc, const Formula& g)
{
    return acc.valid() ? Formula::conj(std::move(acc), g) : g;
}

}  // namespace

ClosedForm closed_form(const Formula& input)
{
    const Formula f = expand_limits(input);
    ClosedForm out;
    out.basis = compute_basis(f);
    const auto& gf = out.basis.gf;
    const auto& fg = out.basis.fg;
    const std::size_t bits = gf.size() + fg.size();
    if (bits >= 63)
        throw PreconditionError("basis too large for the closed form");
    out.disjuncts_total = std::uint64_t(1) << bits;

    Formula result;
    for (std::uint64_t mask = 0; mask < out.disjuncts_total; ++mask) {
        ContextDisjunct d;
        FormulaSet m, n;
        for (std::size_t i = 0; i < gf.size(); ++i)
            if (mask >> i & 1) {
                d.m.push_back(gf[i]);
                m.insert(gf[i]);
            }
        for (std::size_t j = 0; j < fg.size(); ++j)
            if (mask >> (gf.size() + j) & 1) {
                d.n.push_back(fg[j]);
                n.insert(fg[j]);
            }
        d.flat = flatten(f, m);
        out.max_flatten_nodes = std::max(out.max_flatten_nodes, d.flat.size());
        Formula raw = d.flat;
        for (auto& psi : d.n) {
            d.fg_parts.push_back(Formula::fg(eval_nu(psi, m)));
            raw = conjoin(raw, d.fg_parts.back());
        }
        for (auto& psi : d.m) {
            d.gf_parts.push_back(Formula::gf(eval_mu(psi, n)));
            raw = conjoin(raw, d.gf_parts.back());
        }
        out.raw_nodes += raw.size();
        d.raw = raw;
        d.formula = simplify(raw);
        if (d.formula.op() == Op::False)
            continue;
        result = result.valid() ? Formula::disj(result, d.formula) : d.formula;
        out.disjuncts.push_back(std::move(d));
    }
    out.formula = result.valid() ? simplify(result) : Formula::ff();
    return out;
}

Formula normalize_closed_form(const Formula& f)
{
    return closed_form(f).formula;
}

}  // namespace ltlnorm

#include "ltlnorm/hierarchy.hpp"

#include <algorithm>
#include <functional>

namespace ltlnorm {

bool subclass(const HierarchyClass& a, const HierarchyClass& b)
{
    if (a.level == 0)
        return true;
    if (a.kind == b.kind || b.kind == ClassKind::Delta)
        return a.level <= b.level;
    // Δi and the opposite kind only fit strictly higher up.
    return a.level < b.level;
}

HierarchyClass dual(const HierarchyClass& c)
{
    switch (c.kind) {
    case ClassKind::Sigma: return HierarchyClass::pi(c.level);
    case ClassKind::Pi: return HierarchyClass::sigma(c.level);
    default: return c;
    }
}

std::string to_string(const HierarchyClass& c)
{
    if (c.level == 0)
        return "D0";
    const char* k = c.kind == ClassKind::Sigma ? "S" : c.kind == ClassKind::Pi ? "P" : "D";
    return k + std::to_string(c.level);
}

namespace {

Levels combine_levels(const Formula& f, const FormulaMap<Levels>& memo)
{
    auto get = [&](const Formula& g) { return memo.at(g); };
    Levels out;
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Lit:
    case Op::Hole:
        return out;
    case Op::And:
    case Op::Or: {
        Levels a = get(f.left()), b = get(f.right());
        out.sigma = std::max(a.sigma, b.sigma);
        out.pi = std::max(a.pi, b.pi);
        out.delta = std::max(a.delta, b.delta);
        return out;
    }
    case Op::Next: {
        Levels a = get(f.child());
        unsigned s = std::max(1u, a.sigma), p = std::max(1u, a.pi);
        out.sigma = std::min(s, p + 1);
        out.pi = std::min(p, s + 1);
        out.delta = std::min(out.sigma, out.pi);
        return out;
    }
    case Op::Until:
    case Op::StrongRelease: {
        Levels a = get(f.left()), b = get(f.right());
        out.sigma = std::max({1u, a.sigma, b.sigma});
        out.pi = out.sigma + 1;
        out.delta = out.sigma;
        return out;
    }
    case Op::WeakUntil:
    case Op::Release: {
        Levels a = get(f.left()), b = get(f.right());
        out.pi = std::max({1u, a.pi, b.pi});
        out.sigma = out.pi + 1;
        out.delta = out.pi;
        return out;
    }
    case Op::GF: {
        // G F x: F x sits in Σ(max(1,σx)) and G lifts it one Π level.
        Levels a = get(f.child());
        out.pi = std::max(1u, a.sigma) + 1;
        out.sigma = out.pi + 1;
        out.delta = out.pi;
        return out;
    }
    case Op::FG: {
        Levels a = get(f.child());
        out.sigma = std::max(1u, a.pi) + 1;
        out.pi = out.sigma + 1;
        out.delta = out.sigma;
        return out;
    }
    }
    return out;
}

}  // namespace

Levels levels(const Formula& f)
{
    FormulaMap<Levels> memo;
    for (auto& g : subformulas(f))
        memo.emplace(g, combine_levels(g, memo));
    return memo.at(f);
}

bool member(const Formula& f, const HierarchyClass& c)
{
    Levels l = levels(f);
    switch (c.kind) {
    case ClassKind::Sigma: return l.sigma <= c.level || (c.level == 0 && l.delta == 0);
    case ClassKind::Pi: return l.pi <= c.level || (c.level == 0 && l.delta == 0);
    default: return l.delta <= c.level;
    }
}

std::vector<HierarchyClass> classify(const Formula& f)
{
    Levels l = levels(f);
    if (l.delta == 0)
        return {HierarchyClass::delta(0)};
    if (l.delta < std::min(l.sigma, l.pi))
        return {HierarchyClass::delta(l.delta)};
    if (l.sigma < l.pi)
        return {HierarchyClass::sigma(l.sigma)};
    if (l.pi < l.sigma)
        return {HierarchyClass::pi(l.pi)};
    return {HierarchyClass::sigma(l.sigma), HierarchyClass::pi(l.pi)};
}

bool is_delta2(const Formula& f)
{
    return levels(f).delta <= 2;
}

std::uint64_t ubw(const Formula& f)
{
    std::uint64_t count = 0;
    std::function<void(const Formula&, bool)> go = [&](const Formula& g, bool under_w) {
        if (g.is_limit())
            return;
        if (under_w && is_u_like(g.op()))
            ++count;
        const bool w = under_w || is_w_like(g.op());
        for (std::size_t i = 0; i < g.arity(); ++i)
            go(g[i], w);
    };
    go(f, false);
    return count;
}

std::uint64_t gfba(const Formula& f)
{
    FormulaSet found;
    FormulaSet visited_under;
    std::function<void(const Formula&, bool)> go = [&](const Formula& g, bool under_temporal) {
        if (under_temporal) {
            // Everything below an already visited node is known.
            if (!visited_under.insert(g).second)
                return;
            if (g.is_limit())
                found.insert(g);
        }
        const bool t = under_temporal || g.is_temporal();
        for (std::size_t i = 0; i < g.arity(); ++i)
            go(g[i], t);
    };
    go(f, false);
    return found.size();
}

Measures measures(const Formula& f)
{
    return {f.size(), ubw(f), gfba(f)};
}

namespace {

// Checks "no node of kind `inner` strictly below a node of kind `outer`",
// skipping descent into limit nodes when skip_limits is set.
bool nested(const Formula& f, bool (*outer)(Op), bool (*inner)(Op), bool skip_limits)
{
    std::function<bool(const Formula&, bool)> go = [&](const Formula& g, bool below) {
        if (skip_limits && g.is_limit())
            return false;
        if (below && inner(g.op()))
            return true;
        const bool b = below || outer(g.op());
        for (std::size_t i = 0; i < g.arity(); ++i)
            if (go(g[i], b))
                return true;
        return false;
    };
    return go(f, false);
}

bool limit_under_temporal(const Formula& f)
{
    return gfba(f) > 0;
}

bool limit_contents_ok(const Formula& f)
{
    for (auto& g : subformulas(f)) {
        if (!g.is_limit())
            continue;
        const bool forbid_w = g.op() == Op::GF;
        for (auto& h : subformulas(g.child())) {
            if (forbid_w && is_w_like(h.op()))
                return false;
            if (!forbid_w && is_u_like(h.op()))
                return false;
        }
    }
    return true;
}

}  // namespace

FormStatus form_status(const Formula& f)
{
    if (ubw(f) > 0)
        return FormStatus::Unnormalized;
    if (limit_under_temporal(f))
        return FormStatus::OneForm;
    if (nested(f, is_w_like, is_u_like, false) || !limit_contents_ok(f))
        return FormStatus::OneTwoForm;
    return FormStatus::Normal;
}

bool is_dual_normal(const Formula& f)
{
    return !nested(f, is_u_like, is_w_like, false) && !limit_under_temporal(f) &&
           limit_contents_ok(f);
}

std::string to_string(FormStatus s)
{
    switch (s) {
    case FormStatus::Normal: return "normal";
    case FormStatus::OneTwoForm: return "one_two_form";
    case FormStatus::OneForm: return "one_form";
    default: return "unnormalized";
    }
}

}  // namespace ltlnorm

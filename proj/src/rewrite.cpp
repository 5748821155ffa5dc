#include "ltlnorm/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "ltlnorm/hierarchy.hpp"

namespace ltlnorm {

void RewriteTrace::append(const RewriteTrace& other)
{
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    max_raw_nodes = std::max(max_raw_nodes, other.max_raw_nodes);
}

std::string RewriteTrace::to_text() const
{
    std::string out;
    int stage = -1;
    for (auto& s : steps) {
        if (s.stage != stage) {
            stage = s.stage;
            out += "# stage " + std::to_string(stage) + "\n";
        }
        out += "rule=" + s.rule + " path=" + path_to_string(s.path) +
               " before=" + std::to_string(s.before) + " after=" + std::to_string(s.after_raw) +
               "\n";
    }
    return out;
}

std::uint64_t rank(const Formula& f)
{
    return f.size() + ubw(f);
}

std::uint64_t obstacles(const Formula& limit)
{
    if (!limit.is_limit())
        return 0;
    const bool gf = limit.op() == Op::GF;
    // In GF the obstacles are W-like nodes and U-like nodes below them; in
    // FG the roles swap.
    auto primary = gf ? is_w_like : is_u_like;
    auto secondary = gf ? is_u_like : is_w_like;
    std::uint64_t n = 0;
    std::function<void(const Formula&, bool)> go = [&](const Formula& g, bool below) {
        if (primary(g.op()) || (below && secondary(g.op())))
            ++n;
        const bool b = below || primary(g.op());
        for (std::size_t i = 0; i < g.arity(); ++i)
            go(g[i], b);
    };
    go(limit.child(), false);
    return n;
}

namespace {

using Pred = std::function<bool(const Formula&)>;

// First node in pre-order satisfying pred, optionally not entering limit
// nodes or nodes matching barrier.
std::optional<Path> find_first(const Formula& f, const Pred& pred, bool skip_limits,
                               const Pred& barrier = nullptr)
{
    Path path;
    std::function<bool(const Formula&)> go = [&](const Formula& g) {
        if (skip_limits && g.is_limit())
            return false;
        if (pred(g))
            return true;
        if (barrier && barrier(g))
            return false;
        for (std::size_t i = 0; i < g.arity(); ++i) {
            path.push_back(static_cast<std::uint8_t>(i));
            if (go(g[i]))
                return true;
            path.pop_back();
        }
        return false;
    };
    if (go(f))
        return path;
    return std::nullopt;
}

bool has_u_like(const Formula& f)
{
    return find_first(f, [](const Formula& g) { return is_u_like(g.op()); }, true).has_value();
}

class Rewriter {
public:
    Rewriter(const Formula& f, const RewriteOptions& opts, int stage)
        : cur(f), opts_(opts), stage_(stage)
    {}

    void apply(const char* rule, const Path& path, const Formula& replacement,
               std::uint64_t measure_before, std::uint64_t measure_after)
    {
        if (trace.steps.size() >= opts_.max_steps)
            throw std::runtime_error("rewrite step budget exhausted");
        RewriteStep s;
        s.stage = stage_;
        s.rule = rule;
        s.path = path;
        s.before = cur.size();
        s.formula_before = cur;
        Formula raw = replace_at(cur, path, replacement);
        s.after_raw = raw.size();
        s.formula_after = raw;
        cur = opts_.simplify ? simplify(raw) : raw;
        s.after = cur.size();
        s.measure_before = measure_before;
        s.measure_after = measure_after;
        trace.max_raw_nodes = std::max({trace.max_raw_nodes, s.before, s.after_raw});
        trace.steps.push_back(std::move(s));
    }

    RewriteResult result() const { return {cur, trace}; }

    Formula cur;
    RewriteTrace trace;

private:
    const RewriteOptions& opts_;
    int stage_;
};

// The family of nodes substituted together with `target`: the target itself,
// or with the generalized option every node of the same kind sharing the
// argument that carries the limit guard.
Pred family(const Formula& target, bool generalized, bool guard_on_right)
{
    if (!generalized)
        return [target](const Formula& g) { return g.size() == target.size() && g == target; };
    return [target, guard_on_right](const Formula& g) {
        if (g.op() != target.op())
            return false;
        return guard_on_right ? g.right() == target.right() : g.left() == target.left();
    };
}

Formula substitute(const Formula& f, const Pred& match, const std::function<Formula(const Formula&)>& by,
                   bool skip_limits)
{
    return replace_if(
        f, [&](const Formula& g) { return match(g) ? by(g) : Formula(); }, skip_limits);
}

Formula weaken(const Formula& g)
{
    return g.op() == Op::Until ? Formula::weak_until(g.left(), g.right())
                               : Formula::release(g.left(), g.right());
}

Formula strengthen(const Formula& g)
{
    return g.op() == Op::WeakUntil ? Formula::until(g.left(), g.right())
                                   : Formula::strong_release(g.left(), g.right());
}

Formula constant(bool v)
{
    return v ? Formula::tt() : Formula::ff();
}

// The GF guard of a U-like node: GF ψ2 for ψ1 U ψ2, GF ψ1 for ψ1 M ψ2.
Formula u_guard(const Formula& g)
{
    return Formula::gf(g.op() == Op::Until ? g.right() : g.left());
}

// The FG guard of a W-like node: FG ψ1 for ψ1 W ψ2, FG ψ2 for ψ1 R ψ2.
Formula w_guard(const Formula& g)
{
    return Formula::fg(g.op() == Op::WeakUntil ? g.left() : g.right());
}

std::uint64_t max_rank(std::initializer_list<Formula> parts)
{
    std::uint64_t m = 0;
    for (auto& p : parts)
        m = std::max(m, rank(p));
    return m;
}

// ---------------------------------------------------------------------------
// Stage 1: remove U-like nodes below W-like nodes.

std::optional<Path> stage1_redex(const Formula& f)
{
    return find_first(
        f,
        [](const Formula& g) {
            return is_w_like(g.op()) && (has_u_like(g.left()) || has_u_like(g.right()));
        },
        true);
}

void stage1_step(Rewriter& rw, const Path& path, const RewriteOptions& opts)
{
    const Formula rho = at(rw.cur, path);
    const Formula& p1 = rho.left();
    const Formula& p2 = rho.right();
    const std::uint64_t before = rank(rho);
    auto first_u = [](const Formula& g) {
        return at(g, *find_first(g, [](const Formula& h) { return is_u_like(h.op()); }, true));
    };

    if (rho.op() == Op::WeakUntil) {
        if (has_u_like(p2)) {
            Formula g1 = Formula::globally(p1);
            rw.apply("w-right", path, Formula::disj(Formula::until(p1, p2), g1), before,
                     max_rank({p1, p2, g1}));
            return;
        }
        const Formula target = first_u(p1);
        const bool is_u = target.op() == Op::Until;
        Pred fam = family(target, opts.generalized_substitution, is_u);
        Formula p1w = substitute(p1, fam, weaken, true);
        Formula p1f = substitute(p1, fam, [](const Formula&) { return Formula::ff(); }, true);
        Formula rho1 = Formula::weak_until(p1w, p2);
        Formula rho3 = Formula::disj(p2, Formula::globally(p1f));
        Formula out = Formula::disj(Formula::conj(u_guard(target), rho1), Formula::until(p1, rho3));
        rw.apply(is_u ? "w-left-u" : "w-left-m", path, out, before, max_rank({rho1, p1, rho3}));
        return;
    }

    // ψ R φ: the released side φ2 plays the role W's left argument plays.
    if (has_u_like(p1)) {
        Formula g2 = Formula::globally(p2);
        rw.apply("r-left", path, Formula::disj(Formula::strong_release(p1, p2), g2), before,
                 max_rank({p1, p2, g2}));
        return;
    }
    const Formula target = first_u(p2);
    const bool is_u = target.op() == Op::Until;
    Pred fam = family(target, opts.generalized_substitution, is_u);
    Formula p2w = substitute(p2, fam, weaken, true);
    Formula p2f = substitute(p2, fam, [](const Formula&) { return Formula::ff(); }, true);
    Formula rho1 = Formula::release(p1, p2w);
    Formula rho3 = Formula::disj(p1, Formula::globally(p2f));
    Formula out =
        Formula::disj(Formula::conj(u_guard(target), rho1), Formula::strong_release(rho3, p2));
    rw.apply(is_u ? "r-right-u" : "r-right-m", path, out, before, max_rank({rho1, rho3, p2}));
}

// ---------------------------------------------------------------------------
// Stage 2: pull limit subformulas out of temporal contexts.

bool has_limit_below(const Formula& g)
{
    for (std::size_t i = 0; i < g.arity(); ++i) {
        const Formula& c = g[i];
        if (c.is_limit() || has_limit_below(c))
            return true;
    }
    return false;
}

// Leftmost minimal limit subformula occurring below a temporal node.
std::optional<Formula> stage2_target(const Formula& f)
{
    std::optional<Formula> found;
    std::function<void(const Formula&, bool)> go = [&](const Formula& g, bool under) {
        if (found)
            return;
        const bool t = under || g.is_temporal();
        for (std::size_t i = 0; i < g.arity() && !found; ++i)
            go(g[i], t);
        if (!found && under && g.is_limit() && !has_limit_below(g))
            found = g;
    };
    go(f, false);
    return found;
}

// Common ancestor of all topmost temporal nodes enclosing an occurrence of
// target below a temporal node.
Path stage2_anchor(const Formula& f, const Formula& target)
{
    std::optional<Path> lca;
    Path path;
    std::function<void(const Formula&, std::optional<std::size_t>)> go =
        [&](const Formula& g, std::optional<std::size_t> top) {
            if (top && g == target) {
                Path anchor(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(*top));
                if (!lca) {
                    lca = anchor;
                } else {
                    std::size_t k = 0;
                    while (k < lca->size() && k < anchor.size() && (*lca)[k] == anchor[k])
                        ++k;
                    lca->resize(k);
                }
                return;
            }
            std::optional<std::size_t> t = top;
            if (!t && g.is_temporal())
                t = path.size();
            for (std::size_t i = 0; i < g.arity(); ++i) {
                path.push_back(static_cast<std::uint8_t>(i));
                go(g[i], t);
                path.pop_back();
            }
        };
    go(f, std::nullopt);
    return lca.value_or(Path{});
}

void stage2_step(Rewriter& rw, const Formula& target)
{
    const Path anchor = stage2_anchor(rw.cur, target);
    const Formula chi = at(rw.cur, anchor);
    Formula with_tt = replace(chi, target, Formula::tt());
    Formula with_ff = replace(chi, target, Formula::ff());
    Formula out = Formula::disj(Formula::conj(target, with_tt), with_ff);
    rw.apply(target.op() == Op::GF ? "pull-gf" : "pull-fg", anchor, out, gfba(chi),
             std::max(gfba(with_tt), gfba(with_ff)));
}

// ---------------------------------------------------------------------------
// Stage 3: clear W-like nodes from GF and U-like nodes from FG.

std::optional<Path> stage3_redex(const Formula& f)
{
    Path path;
    std::function<bool(const Formula&)> go = [&](const Formula& g) {
        if (g.is_limit())
            return obstacles(g) > 0;
        for (std::size_t i = 0; i < g.arity(); ++i) {
            path.push_back(static_cast<std::uint8_t>(i));
            if (go(g[i]))
                return true;
            path.pop_back();
        }
        return false;
    };
    if (go(f))
        return path;
    return std::nullopt;
}

void stage3_step(Rewriter& rw, const Path& path, const RewriteOptions& opts)
{
    const Formula lim = at(rw.cur, path);
    const Formula& chi = lim.child();
    const std::uint64_t before = obstacles(lim);
    if (lim.op() == Op::GF) {
        const Formula target =
            at(chi, *find_first(chi, [](const Formula& g) { return is_w_like(g.op()); }, false));
        const bool is_w = target.op() == Op::WeakUntil;
        Pred fam = family(target, opts.generalized_substitution, !is_w);
        Formula strong = Formula::gf(substitute(chi, fam, strengthen, false));
        Formula guard = w_guard(target);
        Formula rest = Formula::gf(substitute(chi, fam, [](const Formula&) { return constant(true); },
                                              false));
        Formula out = Formula::disj(strong, Formula::conj(guard, rest));
        rw.apply(is_w ? "gf-w" : "gf-r", path, out, before,
                 std::max({obstacles(strong), obstacles(guard), obstacles(rest)}));
        return;
    }
    const Formula target =
        at(chi, *find_first(chi, [](const Formula& g) { return is_u_like(g.op()); }, false));
    const bool is_u = target.op() == Op::Until;
    Pred fam = family(target, opts.generalized_substitution, is_u);
    Formula weak = Formula::fg(substitute(chi, fam, weaken, false));
    Formula guard = u_guard(target);
    Formula rest = Formula::fg(substitute(chi, fam, [](const Formula&) { return constant(false); },
                                          false));
    Formula out = Formula::disj(Formula::conj(guard, weak), rest);
    rw.apply(is_u ? "fg-u" : "fg-m", path, out, before,
             std::max({obstacles(weak), obstacles(guard), obstacles(rest)}));
}

}  // namespace

RewriteResult stage1(const Formula& f, const RewriteOptions& opts)
{
    Rewriter rw(f, opts, 1);
    while (auto p = stage1_redex(rw.cur))
        stage1_step(rw, *p, opts);
    return rw.result();
}

RewriteResult stage2(const Formula& f, const RewriteOptions& opts)
{
    if (ubw(f) != 0)
        throw PreconditionError("stage 2 expects a formula in 1-form");
    Rewriter rw(f, opts, 2);
    while (auto t = stage2_target(rw.cur))
        stage2_step(rw, *t);
    return rw.result();
}

RewriteResult stage3(const Formula& f, const RewriteOptions& opts)
{
    if (ubw(f) != 0 || gfba(f) != 0)
        throw PreconditionError("stage 3 expects a formula in 1-2-form");
    Rewriter rw(f, opts, 3);
    while (auto p = stage3_redex(rw.cur))
        stage3_step(rw, *p, opts);
    return rw.result();
}

RewriteResult normalize_rewrite(const Formula& f, const RewriteOptions& opts)
{
    auto tidy = [&](const Formula& g) { return opts.simplify ? simplify(g) : g; };
    RewriteResult r1 = stage1(f, opts);
    RewriteResult r2 = stage2(tidy(r1.formula), opts);
    RewriteResult r3 = stage3(tidy(r2.formula), opts);
    RewriteResult out;
    out.formula = tidy(r3.formula);
    out.trace = r1.trace;
    out.trace.append(r2.trace);
    out.trace.append(r3.trace);
    out.trace.max_raw_nodes = std::max(out.trace.max_raw_nodes, f.size());
    return out;
}

Formula normalize_dual(const Formula& f, const RewriteOptions& opts)
{
    return negate(normalize_rewrite(negate(f), opts).formula);
}

// ---------------------------------------------------------------------------
// The F/G/X fragment.

bool in_fgx_fragment(const Formula& f)
{
    for (auto& g : subformulas(f)) {
        switch (g.op()) {
        case Op::Until:
            if (!g.is_eventually())
                return false;
            break;
        case Op::WeakUntil:
            if (!g.is_globally())
                return false;
            break;
        case Op::Release:
        case Op::StrongRelease:
        case Op::Hole:
            return false;
        default:
            break;
        }
    }
    return true;
}

namespace {

bool is_f(const Formula& g) { return g.is_eventually(); }
bool is_g(const Formula& g) { return g.is_globally(); }

// F nodes reachable from the root without crossing a limit or a G node.
bool reaches_f(const Formula& f, bool through_next_only = false)
{
    std::function<bool(const Formula&, bool)> go = [&](const Formula& g, bool below_x) {
        if (g.is_limit() || is_g(g))
            return false;
        if (is_f(g) && (!through_next_only || below_x))
            return true;
        const bool x = below_x || g.op() == Op::Next;
        for (std::size_t i = 0; i < g.arity(); ++i)
            if (go(g[i], x))
                return true;
        return false;
    };
    return go(f, false);
}

std::optional<Path> fgx_stage1_redex(const Formula& f)
{
    Path path;
    std::optional<Path> found;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (found || g.is_limit())
            return;
        for (std::size_t i = 0; i < g.arity() && !found; ++i) {
            path.push_back(static_cast<std::uint8_t>(i));
            go(g[i]);
            path.pop_back();
        }
        if (!found && is_g(g) && reaches_f(g.left()))
            found = path;
    };
    go(f);
    return found;
}

Formula push_next(const Formula& c)
{
    switch (c.op()) {
    case Op::And:
    case Op::Or:
        return Formula::make(c.op(), push_next(c.left()), push_next(c.right()));
    default:
        break;
    }
    if (is_f(c))
        return Formula::eventually(push_next(c.right()));
    if (is_g(c))
        return Formula::globally(push_next(c.left()));
    return Formula::next(c);
}

Formula xpush(const Formula& g)
{
    if (g.arity() == 0 || g.is_limit())
        return g;
    if (g.op() == Op::Next)
        return push_next(xpush(g.child()));
    return Formula::make(g.op(), xpush(g.left()), g.arity() == 2 ? xpush(g.right()) : Formula());
}

using Clause = std::vector<Formula>;

std::vector<Clause> cnf(const Formula& f)
{
    if (f.op() == Op::And) {
        auto a = cnf(f.left());
        auto b = cnf(f.right());
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    if (f.op() == Op::Or) {
        auto a = cnf(f.left());
        auto b = cnf(f.right());
        std::vector<Clause> out;
        for (auto& ca : a)
            for (auto& cb : b) {
                Clause c = ca;
                for (auto& x : cb)
                    if (std::find(c.begin(), c.end(), x) == c.end())
                        c.push_back(x);
                out.push_back(std::move(c));
            }
        return out;
    }
    return {Clause{f}};
}

bool same_clause(const Clause& a, const Clause& b)
{
    if (a.size() != b.size())
        return false;
    for (auto& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end())
            return false;
    return true;
}

Formula join(Op op, const std::vector<Formula>& parts, const Formula& empty)
{
    if (parts.empty())
        return empty;
    Formula acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = Formula::make(op, acc, parts[i]);
    return acc;
}

void collect(const Formula& f, Op op, std::vector<Formula>& out)
{
    if (f.op() == op) {
        collect(f.left(), op, out);
        collect(f.right(), op, out);
    } else {
        out.push_back(f);
    }
}

bool skeleton_has_and(const Formula& f)
{
    if (f.op() == Op::And)
        return true;
    if (f.op() == Op::Or)
        return skeleton_has_and(f.left()) || skeleton_has_and(f.right());
    return false;
}

void fgx_stage1_step(Rewriter& rw, const Path& path)
{
    const Formula g = at(rw.cur, path);
    const Formula& arg = g.left();
    const std::uint64_t before = rank(g);
    std::vector<Formula> disjuncts;
    if (!skeleton_has_and(arg))
        collect(arg, Op::Or, disjuncts);
    auto f_it = std::find_if(disjuncts.begin(), disjuncts.end(), is_f);

    if (f_it != disjuncts.end()) {
        const Formula fpsi = *f_it;
        const Formula& psi = fpsi.right();
        std::vector<Formula> rest;
        for (auto it = disjuncts.begin(); it != disjuncts.end(); ++it)
            if (it != f_it)
                rest.push_back(*it);
        Formula rest_ff = replace(join(Op::Or, rest, Formula::ff()), fpsi, Formula::ff(), true);
        Formula g_rest = Formula::globally(rest_ff);
        Formula out = Formula::disj(
            Formula::disj(Formula::gf(psi),
                          Formula::eventually(Formula::conj(psi, Formula::next(g_rest)))),
            g_rest);
        rw.apply("fgx-split", path, out, before, rank(g_rest));
        return;
    }
    if (skeleton_has_and(arg)) {
        std::vector<Clause> clauses;
        for (auto& c : cnf(arg))
            if (std::none_of(clauses.begin(), clauses.end(),
                             [&](const Clause& d) { return same_clause(c, d); }))
                clauses.push_back(std::move(c));
        std::vector<Formula> parts;
        for (auto& c : clauses)
            parts.push_back(Formula::globally(join(Op::Or, c, Formula::ff())));
        Formula out = join(Op::And, parts, Formula::tt());
        std::uint64_t after = 0;
        for (auto& p : parts)
            after = std::max(after, rank(p));
        rw.apply("fgx-cnf", path, out, before, after);
        return;
    }
    Formula out = Formula::globally(xpush(arg));
    rw.apply("fgx-xpush", path, out, before, rank(out));
}

std::optional<Path> fgx_stage3_redex(const Formula& f)
{
    Path path;
    std::function<bool(const Formula&)> go = [&](const Formula& g) {
        if (g.is_limit()) {
            auto pred = g.op() == Op::GF ? is_g : is_f;
            return find_first(g.child(), pred, false).has_value();
        }
        for (std::size_t i = 0; i < g.arity(); ++i) {
            path.push_back(static_cast<std::uint8_t>(i));
            if (go(g[i]))
                return true;
            path.pop_back();
        }
        return false;
    };
    if (go(f))
        return path;
    return std::nullopt;
}

void fgx_stage3_step(Rewriter& rw, const Path& path)
{
    const Formula lim = at(rw.cur, path);
    const Formula& chi = lim.child();
    const std::uint64_t before = obstacles(lim);
    if (lim.op() == Op::GF) {
        const Formula target = at(chi, *find_first(chi, is_g, false));
        Formula with_ff = Formula::gf(replace(chi, target, Formula::ff()));
        Formula with_tt = Formula::gf(replace(chi, target, Formula::tt()));
        Formula guard = Formula::fg(target.left());
        Formula out = Formula::disj(with_ff, Formula::conj(guard, with_tt));
        rw.apply("fgx-gf-g", path, out, before,
                 std::max({obstacles(with_ff), obstacles(guard), obstacles(with_tt)}));
        return;
    }
    const Formula target = at(chi, *find_first(chi, is_f, false));
    Formula with_tt = Formula::fg(replace(chi, target, Formula::tt()));
    Formula with_ff = Formula::fg(replace(chi, target, Formula::ff()));
    Formula guard = Formula::gf(target.right());
    Formula out = Formula::disj(Formula::conj(guard, with_tt), with_ff);
    rw.apply("fgx-fg-f", path, out, before,
             std::max({obstacles(with_ff), obstacles(guard), obstacles(with_tt)}));
}

}  // namespace

RewriteResult normalize_fgx(const Formula& f, const RewriteOptions& opts)
{
    if (!in_fgx_fragment(f))
        throw PreconditionError("formula is outside the F/G/X fragment");
    auto tidy = [&](const Formula& g) { return opts.simplify ? simplify(g) : g; };

    Rewriter s1(f, opts, 1);
    while (auto p = fgx_stage1_redex(s1.cur))
        fgx_stage1_step(s1, *p);
    RewriteResult r2 = stage2(tidy(s1.cur), opts);
    Rewriter s3(tidy(r2.formula), opts, 3);
    while (auto p = fgx_stage3_redex(s3.cur))
        fgx_stage3_step(s3, *p);

    RewriteResult out;
    out.formula = tidy(s3.cur);
    out.trace = s1.trace;
    out.trace.append(r2.trace);
    out.trace.append(s3.trace);
    out.trace.max_raw_nodes = std::max(out.trace.max_raw_nodes, f.size());
    return out;
}

}  // namespace ltlnorm

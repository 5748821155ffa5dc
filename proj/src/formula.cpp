#include "ltlnorm/formula.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <set>

namespace ltlnorm {

namespace detail {

struct Node {
    Op op;
    bool positive = true;
    std::string name;
    Formula l, r;
    std::size_t hash = 0;
    std::uint64_t size = 1;
};

}  // namespace detail

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t s = a + b;
    return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

bool is_binary(Op op)
{
    switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
    case Op::StrongRelease:
        return true;
    default:
        return false;
    }
}

bool is_unary(Op op)
{
    return op == Op::Next || op == Op::GF || op == Op::FG;
}

}  // namespace

Formula Formula::tt()
{
    static const Formula t = [] {
        auto n = std::make_shared<detail::Node>();
        n->op = Op::True;
        n->hash = mix(0, static_cast<std::size_t>(Op::True));
        return Formula(n);
    }();
    return t;
}

Formula Formula::ff()
{
    static const Formula f = [] {
        auto n = std::make_shared<detail::Node>();
        n->op = Op::False;
        n->hash = mix(0, static_cast<std::size_t>(Op::False));
        return Formula(n);
    }();
    return f;
}

Formula Formula::hole()
{
    static const Formula h = [] {
        auto n = std::make_shared<detail::Node>();
        n->op = Op::Hole;
        n->hash = mix(0, static_cast<std::size_t>(Op::Hole));
        return Formula(n);
    }();
    return h;
}

Formula Formula::lit(std::string name, bool positive)
{
    if (name.empty())
        throw PreconditionError("proposition name must be nonempty");
    auto n = std::make_shared<detail::Node>();
    n->op = Op::Lit;
    n->positive = positive;
    n->hash = mix(mix(static_cast<std::size_t>(Op::Lit), std::hash<std::string>{}(name)),
                  positive ? 1 : 2);
    n->name = std::move(name);
    return Formula(n);
}

Formula Formula::make(Op op, Formula l, Formula r)
{
    if (!l.valid() || (is_binary(op) && !r.valid()) || !(is_binary(op) || is_unary(op)))
        throw PreconditionError("malformed formula construction");
    auto n = std::make_shared<detail::Node>();
    n->op = op;
    std::size_t h = mix(static_cast<std::size_t>(op) * 31 + 7, l.hash());
    n->size = sat_add(1, l.size());
    if (is_binary(op)) {
        h = mix(h, r.hash());
        n->size = sat_add(n->size, r.size());
    }
    n->hash = h;
    n->l = std::move(l);
    if (is_binary(op))
        n->r = std::move(r);
    return Formula(n);
}

Formula Formula::conj(Formula l, Formula r) { return make(Op::And, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, std::move(l), std::move(r)); }
Formula Formula::next(Formula f) { return make(Op::Next, std::move(f)); }
Formula Formula::until(Formula l, Formula r) { return make(Op::Until, std::move(l), std::move(r)); }
Formula Formula::weak_until(Formula l, Formula r)
{
    return make(Op::WeakUntil, std::move(l), std::move(r));
}
Formula Formula::release(Formula l, Formula r) { return make(Op::Release, std::move(l), std::move(r)); }
Formula Formula::strong_release(Formula l, Formula r)
{
    return make(Op::StrongRelease, std::move(l), std::move(r));
}
Formula Formula::gf(Formula f) { return make(Op::GF, std::move(f)); }
Formula Formula::fg(Formula f) { return make(Op::FG, std::move(f)); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
bool Formula::positive() const { return node_->positive; }
const Formula& Formula::left() const { return node_->l; }
const Formula& Formula::right() const { return node_->r; }

std::size_t Formula::arity() const
{
    Op o = op();
    return is_binary(o) ? 2 : is_unary(o) ? 1 : 0;
}

std::size_t Formula::hash() const noexcept { return node_ ? node_->hash : 0; }
std::uint64_t Formula::size() const noexcept { return node_ ? node_->size : 0; }

bool Formula::is_temporal() const
{
    switch (op()) {
    case Op::Next:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release:
    case Op::StrongRelease:
    case Op::GF:
    case Op::FG:
        return true;
    default:
        return false;
    }
}

bool Formula::is_eventually() const { return op() == Op::Until && left().op() == Op::True; }
bool Formula::is_globally() const { return op() == Op::WeakUntil && right().op() == Op::False; }

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (!a.node_ || !b.node_)
        return false;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size)
        return false;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.op != y.op || x.positive != y.positive || x.name != y.name)
        return false;
    return x.l == y.l && x.r == y.r;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
      position_(position)
{}

// ---------------------------------------------------------------------------
// Dualization and constant folding

Formula negate(const Formula& f)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula out;
        switch (g.op()) {
        case Op::True: out = Formula::ff(); break;
        case Op::False: out = Formula::tt(); break;
        case Op::Lit: out = Formula::lit(g.name(), !g.positive()); break;
        case Op::And: out = Formula::disj(go(g.left()), go(g.right())); break;
        case Op::Or: out = Formula::conj(go(g.left()), go(g.right())); break;
        case Op::Next: out = Formula::next(go(g.child())); break;
        case Op::Until: out = Formula::release(go(g.left()), go(g.right())); break;
        case Op::Release: out = Formula::until(go(g.left()), go(g.right())); break;
        case Op::WeakUntil: out = Formula::strong_release(go(g.left()), go(g.right())); break;
        case Op::StrongRelease: out = Formula::weak_until(go(g.left()), go(g.right())); break;
        case Op::GF: out = Formula::fg(go(g.child())); break;
        case Op::FG: out = Formula::gf(go(g.child())); break;
        case Op::Hole: throw PreconditionError("cannot negate a hole");
        }
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

namespace {

void collect_operands(const Formula& f, Op op, std::vector<Formula>& out)
{
    if (f.op() == op) {
        collect_operands(f.left(), op, out);
        collect_operands(f.right(), op, out);
    } else {
        out.push_back(f);
    }
}

// Folds an already simplified And/Or chain: drops neutral elements,
// short-circuits absorbing ones and removes duplicate operands.
Formula fold_chain(Op op, const Formula& l, const Formula& r)
{
    const Op neutral = op == Op::And ? Op::True : Op::False;
    const Op absorbing = op == Op::And ? Op::False : Op::True;
    std::vector<Formula> ops;
    collect_operands(l, op, ops);
    collect_operands(r, op, ops);
    std::vector<Formula> kept;
    FormulaSet seen;
    for (auto& o : ops) {
        if (o.op() == absorbing)
            return o;
        if (o.op() == neutral)
            continue;
        if (seen.insert(o).second)
            kept.push_back(o);
    }
    if (kept.empty())
        return op == Op::And ? Formula::tt() : Formula::ff();
    Formula acc = kept[0];
    for (std::size_t i = 1; i < kept.size(); ++i)
        acc = Formula::make(op, acc, kept[i]);
    return acc;
}

}  // namespace

Formula simplify(const Formula& f)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (g.arity() == 0)
            return g;
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula l = go(g.left());
        Formula r = g.arity() == 2 ? go(g.right()) : Formula();
        const Op lo = l.op();
        const Op ro = r.valid() ? r.op() : Op::Hole;
        Formula out;
        switch (g.op()) {
        case Op::And:
        case Op::Or:
            out = fold_chain(g.op(), l, r);
            break;
        case Op::Next:
            out = l.is_constant() ? l : Formula::next(l);
            break;
        case Op::Until:
            if (ro == Op::False || ro == Op::True)
                out = r;
            else
                out = Formula::until(l, r);
            break;
        case Op::WeakUntil:
            if (lo == Op::True || ro == Op::True)
                out = Formula::tt();
            else if (lo == Op::False && ro == Op::False)
                out = Formula::ff();
            else
                out = Formula::weak_until(l, r);
            break;
        case Op::Release:
            if (ro == Op::False || ro == Op::True)
                out = r;
            else
                out = Formula::release(l, r);
            break;
        case Op::StrongRelease:
            if (ro == Op::False || lo == Op::False)
                out = Formula::ff();
            else if (lo == Op::True && ro == Op::True)
                out = Formula::tt();
            else
                out = Formula::strong_release(l, r);
            break;
        case Op::GF:
        case Op::FG:
            out = l.is_constant() ? l : Formula::make(g.op(), l);
            break;
        default:
            out = g;
        }
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

// ---------------------------------------------------------------------------
// Traversals

std::vector<Formula> subformulas(const Formula& f)
{
    std::vector<Formula> out;
    FormulaSet seen;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (seen.count(g))
            return;
        for (std::size_t i = 0; i < g.arity(); ++i)
            go(g[i]);
        seen.insert(g);
        out.push_back(g);
    };
    go(f);
    return out;
}

std::vector<Formula> proper_subformulas(const Formula& f)
{
    std::vector<Formula> out;
    for (auto& g : subformulas(f))
        if (!g.is_constant() && !g.is_boolean() && g.op() != Op::Hole)
            out.push_back(g);
    return out;
}

std::vector<std::string> propositions(const Formula& f)
{
    std::set<std::string> names;
    for (auto& g : subformulas(f))
        if (g.op() == Op::Lit)
            names.insert(g.name());
    return {names.begin(), names.end()};
}

bool contains_subformula(const Formula& haystack, const Formula& needle)
{
    if (haystack == needle)
        return true;
    if (haystack.size() <= needle.size())
        return false;
    for (std::size_t i = 0; i < haystack.arity(); ++i)
        if (contains_subformula(haystack[i], needle))
            return true;
    return false;
}

bool contains_op(const Formula& f, Op op)
{
    for (auto& g : subformulas(f))
        if (g.op() == op)
            return true;
    return false;
}

Formula replace_if(const Formula& f, const std::function<Formula(const Formula&)>& map,
                   bool skip_limits)
{
    FormulaMap<Formula> memo;
    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (Formula m = map(g); m.valid())
            return m;
        if (g.arity() == 0 || (skip_limits && g.is_limit()))
            return g;
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula l = go(g.left());
        Formula r = g.arity() == 2 ? go(g.right()) : Formula();
        Formula out;
        if (l.identity() == g.left().identity() &&
            (g.arity() == 1 || r.identity() == g.right().identity()))
            out = g;
        else
            out = Formula::make(g.op(), l, r);
        memo.emplace(g, out);
        return out;
    };
    return go(f);
}

Formula replace(const Formula& f, const Formula& target, const Formula& replacement,
                bool skip_limits)
{
    return replace_if(
        f,
        [&](const Formula& g) {
            return g.size() == target.size() && g == target ? replacement : Formula();
        },
        skip_limits);
}

Formula expand_limits(const Formula& f)
{
    return replace_if(f, [](const Formula& g) -> Formula {
        if (g.op() == Op::GF)
            return Formula::globally(Formula::eventually(expand_limits(g.child())));
        if (g.op() == Op::FG)
            return Formula::eventually(Formula::globally(expand_limits(g.child())));
        return Formula();
    });
}

const Formula& at(const Formula& f, const Path& path)
{
    const Formula* cur = &f;
    for (auto i : path) {
        if (i >= cur->arity())
            throw PreconditionError("path leaves the formula");
        cur = &(*cur)[i];
    }
    return *cur;
}

Formula replace_at(const Formula& f, const Path& path, const Formula& replacement)
{
    std::function<Formula(const Formula&, std::size_t)> go = [&](const Formula& g,
                                                                std::size_t depth) {
        if (depth == path.size())
            return replacement;
        const auto i = path[depth];
        if (i >= g.arity())
            throw PreconditionError("path leaves the formula");
        Formula l = i == 0 ? go(g.left(), depth + 1) : g.left();
        Formula r = g.arity() == 2 ? (i == 1 ? go(g.right(), depth + 1) : g.right()) : Formula();
        return Formula::make(g.op(), l, r);
    };
    return go(f, 0);
}

std::string path_to_string(const Path& path)
{
    if (path.empty())
        return ".";
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i)
            s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

FormulaWithHole::FormulaWithHole(Formula body) : body_(std::move(body))
{
    std::function<void(const Formula&, bool)> count = [&](const Formula& g, bool) {
        if (g.op() == Op::Hole)
            ++holes_;
        for (std::size_t i = 0; i < g.arity(); ++i)
            count(g[i], true);
    };
    count(body_, true);
}

Formula FormulaWithHole::fill(const Formula& f) const
{
    return replace(body_, Formula::hole(), f);
}

}  // namespace ltlnorm

#include "ltlnorm/deterministic.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "ltlnorm/contextual.hpp"

namespace ltlnorm {

std::string to_string(AcceptanceKind k)
{
    switch (k) {
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::CoBuchi: return "co-buchi";
    case AcceptanceKind::Rabin: return "rabin";
    case AcceptanceKind::TerminalAccepting: return "terminal-accepting";
    case AcceptanceKind::TerminalRejecting: return "terminal-rejecting";
    default: return "weak";
    }
}

std::vector<RabinPair> rabin_pairs(const DeterministicAutomaton& d)
{
    const std::size_t n = d.size();
    const Acceptance& acc = d.acceptance;
    const StateFlags none(n, 0), all(n, 1);
    auto complement = [&](const StateFlags& s) {
        StateFlags c(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = !s[i];
        return c;
    };
    StateFlags sink(n, 0);
    if (acc.kind == AcceptanceKind::TerminalAccepting || acc.kind == AcceptanceKind::TerminalRejecting)
        sink[acc.sink] = 1;
    switch (acc.kind) {
    case AcceptanceKind::Buchi: return {{none, acc.set}};
    case AcceptanceKind::CoBuchi: return {{acc.set, all}};
    case AcceptanceKind::Rabin: return acc.pairs;
    case AcceptanceKind::TerminalAccepting: return {{complement(sink), all}};
    case AcceptanceKind::TerminalRejecting: return {{sink, all}};
    case AcceptanceKind::Weak: return {{complement(acc.set), all}};
    }
    return {};
}

std::size_t DeterministicAutomaton::pair_count() const
{
    return acceptance.kind == AcceptanceKind::Rabin ? acceptance.pairs.size() : 1;
}

namespace {

// Breadth-first exploration of a deterministic transition structure given
// by an initial value and a successor function on values.
template <class S, class Hash, class Step, class Label>
DeterministicAutomaton explore(std::vector<std::string> ap, const S& init, Step step, Label label,
                               std::vector<S>* values = nullptr)
{
    DeterministicAutomaton d;
    d.ap = std::move(ap);
    const std::size_t letters = d.alphabet_size();
    std::vector<S> seen{init};
    std::unordered_map<S, StateId, Hash> index{{init, 0}};
    for (std::size_t q = 0; q < seen.size(); ++q) {
        std::vector<StateId> row(letters);
        for (std::size_t a = 0; a < letters; ++a) {
            S next = step(seen[q], static_cast<Letter>(a));
            auto [it, fresh] = index.emplace(next, static_cast<StateId>(seen.size()));
            if (fresh)
                seen.push_back(std::move(next));
            row[a] = it->second;
        }
        d.delta.push_back(std::move(row));
    }
    for (auto& s : seen)
        d.labels.push_back(label(s));
    d.initial = 0;
    if (values)
        *values = std::move(seen);
    return d;
}

struct Breakpoint {
    PosBool levels;
    PosBool promising;
    bool operator==(const Breakpoint& o) const
    {
        return levels == o.levels && promising == o.promising;
    }
};

struct BreakpointHash {
    std::size_t operator()(const Breakpoint& b) const noexcept
    {
        return b.levels.hash() * 0x9e3779b97f4a7c15ull ^ b.promising.hash();
    }
};

struct PosBoolKeyHash {
    std::size_t operator()(const PosBool& p) const noexcept { return p.hash(); }
};

PosBool lift(const AlternatingAutomaton& a, const PosBool& theta, Letter l)
{
    return theta.substitute([&](StateId q) { return a.delta[q][l]; });
}

StateSet reachable(const std::vector<StateSet>& graph, const PosBool& from)
{
    std::vector<char> seen(graph.size(), 0);
    StateSet order = from.variables();
    for (auto q : order)
        seen[q] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto r : graph[order[i]])
            if (!seen[r]) {
                seen[r] = 1;
                order.push_back(r);
            }
    return order;
}

// Accepting states reachable from θ must only lead to accepting states.
void require_accepting_closed(const AlternatingAutomaton& a, const std::vector<StateSet>& graph,
                              const PosBool& theta, const char* what)
{
    for (auto q : reachable(graph, theta))
        if (a.accepting(q))
            for (auto r : graph[q])
                if (!a.accepting(r))
                    throw PreconditionError(std::string(what) +
                                            ": an accepting state reaches a rejecting one "
                                            "(expected AWW[2] with the matching polarity)");
}

std::string label_of(const AlternatingAutomaton& a, const Breakpoint& b)
{
    (void)a;
    return "(" + b.levels.to_string() + ", " + b.promising.to_string() + ")";
}

DeterministicAutomaton cobuchi_unchecked(const AlternatingAutomaton& a, const PosBool& init)
{
    auto non_accepting = [&](StateId q) { return !a.accepting(q); };
    auto step = [&](const Breakpoint& s, Letter l) {
        Breakpoint n;
        n.levels = lift(a, s.levels, l);
        n.promising = s.promising.is_false() ? n.levels.without(non_accepting)
                                             : lift(a, s.promising, l);
        return n;
    };
    std::vector<Breakpoint> values;
    DeterministicAutomaton d = explore<Breakpoint, BreakpointHash>(
        a.ap, Breakpoint{init, PosBool::ff()}, step,
        [&](const Breakpoint& b) { return label_of(a, b); }, &values);
    d.acceptance.kind = AcceptanceKind::CoBuchi;
    d.acceptance.set.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        d.acceptance.set[i] = values[i].promising.is_false();
    return d;
}

void require_weak(const AlternatingAutomaton& a)
{
    alternation_height(a);  // throws NotWeakError
}

// The tuple product of several deterministic automata over the same ap.
DeterministicAutomaton tuple_product(const std::vector<const DeterministicAutomaton*>& ds,
                                     std::vector<std::string> ap,
                                     std::vector<std::vector<StateId>>& tuples)
{
    for (auto* d : ds)
        if (d->ap != ap)
            throw PreconditionError("alphabet mismatch between automata");
    struct VecHash {
        std::size_t operator()(const std::vector<StateId>& v) const noexcept
        {
            std::size_t h = v.size();
            for (auto x : v)
                h = h * 0x100000001b3ull ^ x;
            return h;
        }
    };
    std::vector<StateId> init;
    for (auto* d : ds)
        init.push_back(d->initial);
    auto step = [&](const std::vector<StateId>& t, Letter l) {
        std::vector<StateId> n(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            n[i] = ds[i]->step(t[i], l);
        return n;
    };
    auto label = [&](const std::vector<StateId>& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    };
    return explore<std::vector<StateId>, VecHash>(std::move(ap), init, step, label, &tuples);
}

}  // namespace

DeterministicAutomaton breakpoint_cobuchi(const AlternatingAutomaton& a)
{
    a.validate();
    require_weak(a);
    require_accepting_closed(a, successor_graph(a), a.initial, "breakpoint_cobuchi");
    return cobuchi_unchecked(a, a.initial);
}

DeterministicAutomaton breakpoint_buchi(const AlternatingAutomaton& a)
{
    a.validate();
    require_weak(a);
    const AlternatingAutomaton d = dualize(a);
    require_accepting_closed(d, successor_graph(d), d.initial, "breakpoint_buchi");
    DeterministicAutomaton out = cobuchi_unchecked(d, d.initial);
    out.acceptance.kind = AcceptanceKind::Buchi;
    return out;
}

namespace {

DeterministicAutomaton pair_unchecked(const AlternatingAutomaton& a, const AlternatingAutomaton& dual,
                                      const PosBool& theta_r, const PosBool& theta_a)
{
    DeterministicAutomaton dcw = cobuchi_unchecked(a, theta_r);
    DeterministicAutomaton dbw = cobuchi_unchecked(dual, theta_a.dual());
    dbw.acceptance.kind = AcceptanceKind::Buchi;
    return product(dcw, dbw, ProductMode::Intersect);
}

}  // namespace

DeterministicAutomaton breakpoint_rabin_pair(const AlternatingAutomaton& a, const PosBool& theta_r,
                                             const PosBool& theta_a)
{
    a.validate();
    require_weak(a);
    const AlternatingAutomaton dual = dualize(a);
    require_accepting_closed(a, successor_graph(a), theta_r, "breakpoint_rabin_pair");
    require_accepting_closed(dual, successor_graph(dual), theta_a.dual(), "breakpoint_rabin_pair");
    return pair_unchecked(a, dual, theta_r, theta_a);
}

DeterministicAutomaton aww2_to_drw(const AlternatingAutomaton& a)
{
    a.validate();
    if (alternation_height(a) > 2)
        throw PreconditionError("aww2_to_drw expects height at most 2");
    const AlternatingAutomaton dual = dualize(a);
    std::vector<DeterministicAutomaton> parts;
    for (auto& model : a.initial.models()) {
        PosBool r = PosBool::tt(), acc = PosBool::tt();
        for (auto q : model)
            (a.accepting(q) ? acc : r) = (a.accepting(q) ? acc : r) & PosBool::var(q);
        parts.push_back(breakpoint_rabin_pair(a, r, acc));
    }
    return union_all(parts, a.ap);
}

DeterministicAutomaton ltl_to_drw(const Formula& f, std::vector<std::string> ap, DrwInfo* info)
{
    if (ap.empty())
        ap = propositions(f);
    const ClosedForm cf = closed_form(f);
    A1WBuilder builder(ap);
    std::vector<std::pair<PosBool, PosBool>> inits;
    for (auto& d : cf.disjuncts) {
        // The Σ2 side (flatten and the FG conjuncts) feeds the co-Büchi
        // half of the pair, the Π2 side (the GF conjuncts) the Büchi half.
        builder.set_preference(KindPreference::Sigma);
        PosBool r = builder.mark(expand_limits(simplify(d.flat)), HierarchyClass::sigma(2));
        for (auto& g : d.fg_parts)
            r = r & builder.mark(expand_limits(simplify(g)), HierarchyClass::sigma(2));
        builder.set_preference(KindPreference::Pi);
        PosBool acc = PosBool::tt();
        for (auto& g : d.gf_parts)
            acc = acc & builder.mark(expand_limits(simplify(g)), HierarchyClass::pi(2));
        inits.emplace_back(std::move(r), std::move(acc));
    }
    const AlternatingAutomaton a = builder.finish(PosBool::ff());
    const AlternatingAutomaton dual = dualize(a);
    std::vector<DeterministicAutomaton> parts;
    for (auto& [r, acc] : inits)
        parts.push_back(pair_unchecked(a, dual, r, acc));
    if (info) {
        info->contexts = cf.disjuncts.size();
        info->a1w_states = a.size();
    }
    return union_all(parts, ap);
}

// ---------------------------------------------------------------------------

namespace {

DeterministicAutomaton levels_automaton(const AlternatingAutomaton& a, const PosBool& init,
                                        bool accept_sink)
{
    const PosBool sink_value = accept_sink ? PosBool::tt() : PosBool::ff();
    std::vector<PosBool> values;
    DeterministicAutomaton d = explore<PosBool, PosBoolKeyHash>(
        a.ap, init, [&](const PosBool& l, Letter x) { return lift(a, l, x); },
        [](const PosBool& l) { return l.to_string(); }, &values);
    auto it = std::find(values.begin(), values.end(), sink_value);
    StateId sink;
    if (it == values.end()) {
        // The sink is unreachable; add it so the shape is still terminal.
        sink = static_cast<StateId>(d.size());
        d.delta.emplace_back(d.alphabet_size(), sink);
        d.labels.push_back(sink_value.to_string());
    } else {
        sink = static_cast<StateId>(it - values.begin());
    }
    d.acceptance.kind =
        accept_sink ? AcceptanceKind::TerminalAccepting : AcceptanceKind::TerminalRejecting;
    d.acceptance.sink = sink;
    return d;
}

}  // namespace

DeterministicAutomaton determinize_aww1(const AlternatingAutomaton& a)
{
    a.validate();
    if (alternation_height(a) > 1)
        throw PreconditionError("determinize_aww1 expects height at most 1");
    const Polarity pol = polarity(a, a.initial);
    if (pol == Polarity::R)
        return levels_automaton(a, a.initial, true);
    if (pol == Polarity::A)
        return levels_automaton(a, a.initial, false);

    // Mixed: per minimal model, the rejecting part must reach tt and the
    // accepting part must avoid ff.
    std::vector<DeterministicAutomaton> parts;
    std::vector<std::pair<StateId, StateId>> sinks;
    for (auto& model : a.initial.models()) {
        PosBool r = PosBool::tt(), acc = PosBool::tt();
        for (auto q : model)
            (a.accepting(q) ? acc : r) = (a.accepting(q) ? acc : r) & PosBool::var(q);
        parts.push_back(levels_automaton(a, r, true));
        parts.push_back(levels_automaton(a, acc, false));
    }
    std::vector<const DeterministicAutomaton*> ptrs;
    for (auto& p : parts)
        ptrs.push_back(&p);
    std::vector<std::vector<StateId>> tuples;
    DeterministicAutomaton d = tuple_product(ptrs, a.ap, tuples);
    d.acceptance.kind = AcceptanceKind::Weak;
    d.acceptance.set.assign(d.size(), 0);
    for (std::size_t s = 0; s < tuples.size(); ++s)
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
            if (tuples[s][i] == parts[i].acceptance.sink &&
                tuples[s][i + 1] != parts[i + 1].acceptance.sink)
                d.acceptance.set[s] = 1;
    return d;
}

// ---------------------------------------------------------------------------

namespace {

StateFlags lift_flags(const StateFlags& f, const std::vector<std::vector<StateId>>& tuples,
                      std::size_t component)
{
    StateFlags out(tuples.size(), 0);
    for (std::size_t s = 0; s < tuples.size(); ++s)
        out[s] = f[tuples[s][component]];
    return out;
}

bool is_all(const StateFlags& f)
{
    return std::all_of(f.begin(), f.end(), [](char c) { return c != 0; });
}

}  // namespace

DeterministicAutomaton product(const DeterministicAutomaton& d1, const DeterministicAutomaton& d2,
                               ProductMode mode)
{
    if (d1.ap != d2.ap)
        throw PreconditionError("alphabet mismatch between automata");
    if (mode == ProductMode::Union)
        return union_all({d1, d2}, d1.ap);

    auto p1 = rabin_pairs(d1), p2 = rabin_pairs(d2);
    bool swap = false;
    if (!(p2.size() == 1 && is_all(p2[0].inf))) {
        if (p1.size() == 1 && is_all(p1[0].inf))
            swap = true;
        else
            throw PreconditionError(
                "intersection needs one operand with a single co-Büchi-shaped pair");
    }
    std::vector<std::vector<StateId>> tuples;
    DeterministicAutomaton d = tuple_product({&d1, &d2}, d1.ap, tuples);
    const auto& general = swap ? p2 : p1;
    const auto& cob = swap ? p1[0] : p2[0];
    const std::size_t gi = swap ? 1 : 0, ci = swap ? 0 : 1;
    const StateFlags cfin = lift_flags(cob.fin, tuples, ci);
    d.acceptance.kind = AcceptanceKind::Rabin;
    for (auto& p : general) {
        RabinPair q{lift_flags(p.fin, tuples, gi), lift_flags(p.inf, tuples, gi)};
        for (std::size_t s = 0; s < tuples.size(); ++s)
            q.fin[s] = q.fin[s] || cfin[s];
        d.acceptance.pairs.push_back(std::move(q));
    }
    return d;
}

DeterministicAutomaton union_all(const std::vector<DeterministicAutomaton>& ds,
                                 std::vector<std::string> ap)
{
    if (ds.empty())
        return empty_automaton(std::move(ap));
    std::vector<const DeterministicAutomaton*> ptrs;
    for (auto& d : ds)
        ptrs.push_back(&d);
    std::vector<std::vector<StateId>> tuples;
    DeterministicAutomaton d = tuple_product(ptrs, std::move(ap), tuples);
    d.acceptance.kind = AcceptanceKind::Rabin;
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (auto& p : rabin_pairs(ds[i]))
            d.acceptance.pairs.push_back({lift_flags(p.fin, tuples, i), lift_flags(p.inf, tuples, i)});
    return d;
}

DeterministicAutomaton universal_automaton(std::vector<std::string> ap)
{
    DeterministicAutomaton d;
    d.ap = std::move(ap);
    d.delta.emplace_back(d.alphabet_size(), 0);
    d.labels.push_back("tt");
    d.acceptance.kind = AcceptanceKind::TerminalAccepting;
    d.acceptance.sink = 0;
    return d;
}

DeterministicAutomaton empty_automaton(std::vector<std::string> ap)
{
    DeterministicAutomaton d;
    d.ap = std::move(ap);
    d.delta.emplace_back(d.alphabet_size(), 0);
    d.labels.push_back("ff");
    d.acceptance.kind = AcceptanceKind::Rabin;
    return d;
}

// ---------------------------------------------------------------------------

namespace {

// Maps a letter of w onto the automaton's proposition order.
std::vector<int> letter_map(const DeterministicAutomaton& d, const LassoWord& w)
{
    if (w.ap.size() != d.ap.size())
        throw PreconditionError("alphabet mismatch between word and automaton");
    std::vector<int> map(w.ap.size());
    for (std::size_t i = 0; i < w.ap.size(); ++i) {
        auto it = std::find(d.ap.begin(), d.ap.end(), w.ap[i]);
        if (it == d.ap.end())
            throw PreconditionError("alphabet mismatch between word and automaton");
        map[i] = static_cast<int>(it - d.ap.begin());
    }
    return map;
}

}  // namespace

StateSet lasso_cycle(const DeterministicAutomaton& d, const LassoWord& w)
{
    if (w.loop.empty())
        throw PreconditionError("lasso loop must be nonempty");
    const auto map = letter_map(d, w);
    auto conv = [&](Letter l) {
        Letter out = 0;
        for (std::size_t i = 0; i < map.size(); ++i)
            if (l >> i & 1)
                out |= Letter(1) << map[i];
        return out;
    };
    StateId s = d.initial;
    for (auto l : w.prefix)
        s = d.step(s, conv(l));
    // Iterate whole loop periods until the state at the loop start repeats.
    std::unordered_map<StateId, std::size_t> first_seen;
    std::vector<StateId> starts;
    while (first_seen.emplace(s, starts.size()).second) {
        starts.push_back(s);
        for (auto l : w.loop)
            s = d.step(s, conv(l));
    }
    StateSet cycle;
    StateId t = s;
    for (std::size_t k = first_seen[s]; k < starts.size(); ++k)
        for (auto l : w.loop) {
            cycle.push_back(t);
            t = d.step(t, conv(l));
        }
    std::sort(cycle.begin(), cycle.end());
    cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
    return cycle;
}

bool drw_accepts_lasso(const DeterministicAutomaton& d, const LassoWord& w)
{
    const StateSet cycle = lasso_cycle(d, w);
    auto hits = [&](const StateFlags& f) {
        return std::any_of(cycle.begin(), cycle.end(), [&](StateId q) { return f[q] != 0; });
    };
    const Acceptance& acc = d.acceptance;
    switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::Weak: return hits(acc.set);
    case AcceptanceKind::CoBuchi: return !hits(acc.set);
    case AcceptanceKind::TerminalAccepting:
        return std::find(cycle.begin(), cycle.end(), acc.sink) != cycle.end();
    case AcceptanceKind::TerminalRejecting:
        return std::find(cycle.begin(), cycle.end(), acc.sink) == cycle.end();
    case AcceptanceKind::Rabin:
        return std::any_of(acc.pairs.begin(), acc.pairs.end(),
                           [&](const RabinPair& p) { return !hits(p.fin) && hits(p.inf); });
    }
    return false;
}

}  // namespace ltlnorm

#include "ltlnorm/alternating.hpp"

#include <algorithm>
#include <functional>
#include <array>
#include <map>
#include <unordered_map>

namespace ltlnorm {

void AlternatingAutomaton::validate() const
{
    if (ap.size() > kMaxPropositions)
        throw PreconditionError("at most 16 propositions are supported");
    if (delta.size() != states.size())
        throw PreconditionError("transition table does not cover every state");
    auto check = [&](const PosBool& p) {
        for (auto q : p.variables())
            if (q >= states.size())
                throw PreconditionError("transition mentions unknown state " + std::to_string(q));
    };
    check(initial);
    for (auto& row : delta) {
        if (row.size() != alphabet_size())
            throw PreconditionError("transition table does not cover every letter");
        for (auto& p : row)
            check(p);
    }
}

// ---------------------------------------------------------------------------

namespace {

struct AtomKey {
    Formula formula;
    ClassKind kind;
    unsigned level;
    bool accepting;
    bool operator==(const AtomKey& o) const
    {
        return kind == o.kind && level == o.level && accepting == o.accepting &&
               formula == o.formula;
    }
};

struct AtomKeyHash {
    std::size_t operator()(const AtomKey& k) const noexcept
    {
        return k.formula.hash() * 31 + static_cast<std::size_t>(k.kind) * 7 + k.level * 2 +
               (k.accepting ? 1 : 0);
    }
};

}  // namespace

struct A1WBuilder::Impl {
    std::vector<std::string> ap;
    KindPreference prefer;
    std::vector<AlternatingState> states;
    std::vector<AtomKey> keys;
    std::unordered_map<AtomKey, StateId, AtomKeyHash> index;
    FormulaMap<std::vector<HierarchyClass>> class_cache;

    const std::vector<HierarchyClass>& classes(const Formula& f)
    {
        auto it = class_cache.find(f);
        if (it == class_cache.end())
            it = class_cache.emplace(f, classify(f)).first;
        return it->second;
    }

    // Minimal classes of a proper formula that fit below gamma.
    std::vector<HierarchyClass> candidates(const Formula& f, const HierarchyClass& gamma)
    {
        std::vector<HierarchyClass> out;
        for (auto& c : classes(f))
            if (subclass(c, gamma))
                out.push_back(c);
        if (out.empty())
            throw PreconditionError("class mismatch: " + to_string(f) + " is not in " +
                                    to_string(gamma));
        if (out.size() == 2 && prefer != KindPreference::None) {
            const ClassKind want =
                prefer == KindPreference::Sigma ? ClassKind::Sigma : ClassKind::Pi;
            out.erase(std::remove_if(out.begin(), out.end(),
                                     [&](const HierarchyClass& c) { return c.kind != want; }),
                      out.end());
        }
        return out;
    }

    StateId atom(const Formula& f, const HierarchyClass& c, const HierarchyClass& gamma)
    {
        // Level-0 atoms belong to every class; they take the polarity of
        // the context that marks them so that α stays closed under
        // successors.
        const bool acc = c.level == 0 ? (gamma.kind == ClassKind::Pi && gamma.level > 0)
                                      : c.kind == ClassKind::Pi;
        AtomKey key{f, c.level == 0 ? ClassKind::Delta : c.kind, c.level, acc};
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        const StateId id = static_cast<StateId>(states.size());
        AlternatingState s;
        s.label = to_string(f) + " @ " + to_string(c) + (c.level == 0 && acc ? "+" : "");
        s.accepting = acc;
        s.atom = Atom{f, c};
        states.push_back(std::move(s));
        keys.push_back(key);
        index.emplace(std::move(key), id);
        return id;
    }

    PosBool mark(const Formula& f, const HierarchyClass& gamma)
    {
        switch (f.op()) {
        case Op::True: return PosBool::tt();
        case Op::False: return PosBool::ff();
        case Op::And: return mark(f.left(), gamma) & mark(f.right(), gamma);
        case Op::Or: return mark(f.left(), gamma) | mark(f.right(), gamma);
        case Op::GF:
        case Op::FG: throw PreconditionError("expand limit operators before marking");
        case Op::Hole: throw PreconditionError("cannot mark a formula with holes");
        default: break;
        }
        PosBool out;
        for (auto& c : candidates(f, gamma))
            out = out | PosBool::var(atom(f, c, gamma));
        return out;
    }

    // δ(φ_Γ, σ) for an arbitrary formula.
    PosBool delta_mark(const Formula& f, const HierarchyClass& gamma, Letter a)
    {
        switch (f.op()) {
        case Op::True: return PosBool::tt();
        case Op::False: return PosBool::ff();
        case Op::And: return delta_mark(f.left(), gamma, a) & delta_mark(f.right(), gamma, a);
        case Op::Or: return delta_mark(f.left(), gamma, a) | delta_mark(f.right(), gamma, a);
        default: break;
        }
        PosBool out;
        for (auto& c : candidates(f, gamma))
            out = out | delta_atom(f, c, gamma, a);
        return out;
    }

    // δ(⟨φ, Γ⟩, σ) for a proper formula.
    PosBool delta_atom(const Formula& f, const HierarchyClass& c, const HierarchyClass& gamma,
                       Letter a)
    {
        switch (f.op()) {
        case Op::Lit: {
            auto it = std::find(ap.begin(), ap.end(), f.name());
            if (it == ap.end())
                throw PreconditionError("proposition '" + f.name() + "' is not in ap");
            const bool in = (a >> (it - ap.begin())) & 1;
            return in == f.positive() ? PosBool::tt() : PosBool::ff();
        }
        case Op::Next: return mark(f.child(), c);
        case Op::Until:
        case Op::WeakUntil:
            return delta_mark(f.right(), c, a) |
                   (delta_mark(f.left(), c, a) & PosBool::var(atom(f, c, gamma)));
        case Op::Release:
        case Op::StrongRelease:
            return delta_mark(f.right(), c, a) &
                   (delta_mark(f.left(), c, a) | PosBool::var(atom(f, c, gamma)));
        default: throw PreconditionError("unexpected node in automaton construction");
        }
    }

    AlternatingAutomaton finish(const PosBool& initial)
    {
        const std::size_t letters = std::size_t(1) << ap.size();
        std::vector<std::vector<PosBool>> delta;
        // Computing δ may create atoms; iterate until the pool is closed.
        for (std::size_t q = 0; q < states.size(); ++q) {
            const AtomKey key = keys[q];
            const HierarchyClass c{key.kind, key.level};
            const HierarchyClass ctx =
                key.level == 0 && key.accepting ? HierarchyClass::pi(1) : c;
            std::vector<PosBool> row;
            row.reserve(letters);
            for (std::size_t a = 0; a < letters; ++a)
                row.push_back(delta_atom(key.formula, c, ctx, static_cast<Letter>(a)));
            delta.push_back(std::move(row));
        }
        AlternatingAutomaton out;
        out.ap = ap;
        out.states = states;
        out.initial = initial;
        out.delta = std::move(delta);
        return out;
    }
};

A1WBuilder::A1WBuilder(std::vector<std::string> ap, KindPreference prefer)
    : impl_(new Impl{std::move(ap), prefer, {}, {}, {}, {}})
{
    if (impl_->ap.size() > kMaxPropositions) {
        delete impl_;
        throw PreconditionError("at most 16 propositions are supported");
    }
}

A1WBuilder::~A1WBuilder()
{
    delete impl_;
}

void A1WBuilder::set_preference(KindPreference prefer)
{
    impl_->prefer = prefer;
}

PosBool A1WBuilder::mark(const Formula& f, const HierarchyClass& gamma)
{
    return impl_->mark(f, gamma);
}

AlternatingAutomaton A1WBuilder::finish(const PosBool& initial)
{
    return impl_->finish(initial);
}

AlternatingAutomaton ltl_to_a1w(const Formula& f, const HierarchyClass& gamma,
                                std::vector<std::string> ap, KindPreference prefer)
{
    const Formula g = expand_limits(f);
    if (!member(g, gamma))
        throw PreconditionError("class mismatch: formula is not in " + to_string(gamma));
    if (ap.empty())
        ap = propositions(g);
    A1WBuilder b(std::move(ap), prefer);
    return b.finish(b.mark(g, gamma));
}

AlternatingAutomaton ltl_to_a1w(const Formula& f, std::vector<std::string> ap,
                                KindPreference prefer)
{
    const Formula g = expand_limits(f);
    return ltl_to_a1w(g, HierarchyClass::delta(levels(g).delta), std::move(ap), prefer);
}

// ---------------------------------------------------------------------------

std::vector<StateSet> successor_graph(const AlternatingAutomaton& a)
{
    std::vector<StateSet> g(a.size());
    for (StateId q = 0; q < a.size(); ++q) {
        StateSet succ;
        for (auto& p : a.delta[q])
            for (auto& m : p.models())
                succ.insert(succ.end(), m.begin(), m.end());
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        g[q] = std::move(succ);
    }
    return g;
}

std::vector<StateSet> strongly_connected_components(const std::vector<StateSet>& graph)
{
    // Iterative Tarjan.
    const std::size_t n = graph.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::vector<StateSet> out;
    int counter = 0;
    struct Frame {
        StateId v;
        std::size_t next;
    };
    for (StateId root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& fr = call.back();
            const StateId v = fr.v;
            if (fr.next < graph[v].size()) {
                const StateId w = graph[v][fr.next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                StateSet comp;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return out;
}

NotWeakError::NotWeakError(StateSet witness)
    : PreconditionError("automaton is not weak: a component mixes accepting and rejecting states"),
      witness_(std::move(witness))
{}

std::string to_string(Polarity p)
{
    switch (p) {
    case Polarity::A: return "A";
    case Polarity::R: return "R";
    default: return "mixed";
    }
}

namespace {

struct Condensation {
    std::vector<StateSet> comps;
    std::vector<std::size_t> comp_of;
    std::vector<char> cyclic;  // has an internal edge
    std::vector<StateSet> succ;
};

Condensation condense(const AlternatingAutomaton& a)
{
    Condensation c;
    auto g = successor_graph(a);
    c.comps = strongly_connected_components(g);
    c.comp_of.assign(a.size(), 0);
    for (std::size_t i = 0; i < c.comps.size(); ++i)
        for (auto q : c.comps[i])
            c.comp_of[q] = i;
    c.cyclic.assign(c.comps.size(), 0);
    c.succ.assign(c.comps.size(), {});
    for (StateId q = 0; q < a.size(); ++q)
        for (auto r : g[q]) {
            const std::size_t cq = c.comp_of[q], cr = c.comp_of[r];
            if (cq == cr)
                c.cyclic[cq] = 1;
            else
                c.succ[cq].push_back(static_cast<StateId>(cr));
        }
    return c;
}

}  // namespace

unsigned alternation_height(const AlternatingAutomaton& a)
{
    if (a.size() == 0)
        return 0;
    Condensation c = condense(a);
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        if (!c.cyclic[i])
            continue;
        const bool acc = a.accepting(c.comps[i].front());
        for (auto q : c.comps[i])
            if (a.accepting(q) != acc)
                throw NotWeakError(c.comps[i]);
    }
    // best[i][p]: most alternations on a path starting in component i when
    // the last polarized component seen had polarity p (0 none, 1 rejecting,
    // 2 accepting). Components come sinks first, so successors are ready.
    std::vector<std::array<unsigned, 3>> best(c.comps.size());
    unsigned most = 0;
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const int own = c.cyclic[i] ? (a.accepting(c.comps[i].front()) ? 2 : 1) : 0;
        for (int p = 0; p < 3; ++p) {
            const int now = own ? own : p;
            unsigned step = (own && p && p != own) ? 1 : 0;
            unsigned tail = 0;
            for (auto s : c.succ[i])
                tail = std::max(tail, best[s][now]);
            best[i][p] = step + tail;
        }
        most = std::max(most, best[i][0]);
    }
    return most + 1;
}

Polarity polarity(const AlternatingAutomaton& a, const PosBool& theta)
{
    bool any_acc = false, any_rej = false;
    for (auto q : theta.variables())
        (a.accepting(q) ? any_acc : any_rej) = true;
    if (any_acc && any_rej)
        return Polarity::Mixed;
    return any_acc ? Polarity::A : Polarity::R;
}

AutomatonClass automaton_class(const AlternatingAutomaton& a)
{
    AutomatonClass out;
    out.initial_polarity = polarity(a, a.initial);
    try {
        out.height = alternation_height(a);
        out.weak = true;
    } catch (const NotWeakError&) {
        out.weak = false;
    }
    auto comps = strongly_connected_components(successor_graph(a));
    out.very_weak = std::all_of(comps.begin(), comps.end(),
                                [](const StateSet& s) { return s.size() == 1; });
    return out;
}

AlternatingAutomaton dualize(const AlternatingAutomaton& a)
{
    AlternatingAutomaton d = a;
    d.initial = a.initial.dual();
    for (auto& s : d.states)
        s.accepting = !s.accepting;
    for (auto& row : d.delta)
        for (auto& p : row)
            p = p.dual();
    return d;
}

AlternatingAutomaton with_initial(const AlternatingAutomaton& a, const PosBool& initial)
{
    AlternatingAutomaton out = a;
    out.initial = initial;
    return out;
}

}  // namespace ltlnorm

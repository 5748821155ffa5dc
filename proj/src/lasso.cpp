#include "ltlnorm/lasso.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ltlnorm {

Letter LassoWord::letter(std::size_t i) const
{
    if (i < prefix.size())
        return prefix[i];
    return loop[(i - prefix.size()) % loop.size()];
}

namespace {

std::vector<std::vector<std::string>> split_letters(std::string_view part, std::size_t offset)
{
    std::vector<std::vector<std::string>> letters;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i])))
            ++i;
    };
    skip_ws();
    while (i < part.size()) {
        if (part[i] != '{')
            throw ParseError(offset + i, "expected '{'");
        const std::size_t close = part.find('}', i);
        if (close == std::string_view::npos)
            throw ParseError(offset + i, "unterminated letter");
        std::vector<std::string> props;
        std::string_view body = part.substr(i + 1, close - i - 1);
        std::size_t j = 0;
        while (j <= body.size()) {
            std::size_t comma = body.find(',', j);
            if (comma == std::string_view::npos)
                comma = body.size();
            std::string name;
            for (char c : body.substr(j, comma - j))
                if (!std::isspace(static_cast<unsigned char>(c)))
                    name += c;
            if (!name.empty())
                props.push_back(name);
            j = comma + 1;
        }
        letters.push_back(std::move(props));
        i = close + 1;
        skip_ws();
        if (i < part.size()) {
            if (part[i] != ',')
                throw ParseError(offset + i, "expected ','");
            ++i;
            skip_ws();
        }
    }
    return letters;
}

}  // namespace

LassoWord parse_lasso(std::string_view text, std::vector<std::string> ap)
{
    const std::size_t semi = text.find(';');
    if (semi == std::string_view::npos)
        throw ParseError(text.size(), "lasso needs a ';' between prefix and loop");
    auto pre = split_letters(text.substr(0, semi), 0);
    auto loop = split_letters(text.substr(semi + 1), semi + 1);
    if (loop.empty())
        throw ParseError(semi + 1, "loop must be nonempty");
    if (ap.empty()) {
        std::set<std::string> names;
        for (auto* part : {&pre, &loop})
            for (auto& l : *part)
                names.insert(l.begin(), l.end());
        ap.assign(names.begin(), names.end());
    }
    if (ap.size() > 32)
        throw PreconditionError("at most 32 propositions per word");
    LassoWord w;
    w.ap = ap;
    auto encode = [&](const std::vector<std::string>& props) {
        Letter l = 0;
        for (auto& p : props) {
            auto it = std::find(ap.begin(), ap.end(), p);
            if (it == ap.end())
                throw PreconditionError("unknown proposition '" + p + "' in lasso");
            l |= Letter(1) << (it - ap.begin());
        }
        return l;
    };
    for (auto& l : pre)
        w.prefix.push_back(encode(l));
    for (auto& l : loop)
        w.loop.push_back(encode(l));
    return w;
}

std::string to_string(const LassoWord& w)
{
    auto letter = [&](Letter l) {
        std::string s = "{";
        bool first = true;
        for (std::size_t i = 0; i < w.ap.size(); ++i)
            if (l >> i & 1) {
                if (!first)
                    s += ',';
                s += w.ap[i];
                first = false;
            }
        return s + "}";
    };
    std::string out;
    for (std::size_t i = 0; i < w.prefix.size(); ++i)
        out += (i ? "," : "") + letter(w.prefix[i]);
    out += ';';
    for (std::size_t i = 0; i < w.loop.size(); ++i)
        out += (i ? "," : "") + letter(w.loop[i]);
    return out;
}

namespace {

using Row = std::vector<char>;

// Solves val[i] = base[i] || (step[i] && val[succ(i)]) as a least (or, with
// greatest set, a greatest) fixpoint. The loop part is iterated to
// stability first; the prefix is then a single backward pass.
Row fixpoint(const LassoWord& w, const Row& now, const Row& guard, bool greatest, bool conj)
{
    const std::size_t n = w.positions();
    const std::size_t p = w.prefix.size();
    Row val(n, greatest ? 1 : 0);
    auto update = [&](std::size_t i) {
        const char nxt = val[w.succ(i)];
        return conj ? char(now[i] && (guard[i] || nxt)) : char(now[i] || (guard[i] && nxt));
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = n; k-- > p;) {
            const char v = update(k);
            if (v != val[k]) {
                val[k] = v;
                changed = true;
            }
        }
    }
    for (std::size_t k = p; k-- > 0;)
        val[k] = update(k);
    return val;
}

}  // namespace

bool eval_lasso(const Formula& f, const LassoWord& w)
{
    if (w.loop.empty())
        throw PreconditionError("lasso loop must be nonempty");
    const std::size_t n = w.positions();
    const std::size_t p = w.prefix.size();
    FormulaMap<Row> rows;
    for (auto& g : subformulas(f)) {
        Row r(n, 0);
        switch (g.op()) {
        case Op::True: std::fill(r.begin(), r.end(), 1); break;
        case Op::False: break;
        case Op::Hole: throw PreconditionError("cannot evaluate a formula with holes");
        case Op::Lit: {
            auto it = std::find(w.ap.begin(), w.ap.end(), g.name());
            if (it == w.ap.end())
                throw PreconditionError("unknown proposition '" + g.name() + "'");
            const auto bit = static_cast<unsigned>(it - w.ap.begin());
            for (std::size_t i = 0; i < n; ++i)
                r[i] = char(((w.letter(i) >> bit) & 1) == (g.positive() ? 1u : 0u));
            break;
        }
        case Op::And:
        case Op::Or: {
            const Row& a = rows.at(g.left());
            const Row& b = rows.at(g.right());
            for (std::size_t i = 0; i < n; ++i)
                r[i] = g.op() == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
            break;
        }
        case Op::Next: {
            const Row& a = rows.at(g.child());
            for (std::size_t i = 0; i < n; ++i)
                r[i] = a[w.succ(i)];
            break;
        }
        // ψ1 U ψ2 = ψ2 ∨ (ψ1 ∧ X ·), W the same with greatest fixpoint;
        // ψ1 R ψ2 = ψ2 ∧ (ψ1 ∨ X ·), M the same with least fixpoint.
        case Op::Until:
            r = fixpoint(w, rows.at(g.right()), rows.at(g.left()), false, false);
            break;
        case Op::WeakUntil:
            r = fixpoint(w, rows.at(g.right()), rows.at(g.left()), true, false);
            break;
        case Op::Release:
            r = fixpoint(w, rows.at(g.right()), rows.at(g.left()), true, true);
            break;
        case Op::StrongRelease:
            r = fixpoint(w, rows.at(g.right()), rows.at(g.left()), false, true);
            break;
        case Op::GF:
        case Op::FG: {
            const Row& a = rows.at(g.child());
            bool any = false, all = true;
            for (std::size_t i = p; i < n; ++i) {
                any = any || a[i];
                all = all && a[i];
            }
            std::fill(r.begin(), r.end(), g.op() == Op::GF ? any : all);
            break;
        }
        }
        rows.emplace(g, std::move(r));
    }
    return rows.at(f)[0];
}

}  // namespace ltlnorm

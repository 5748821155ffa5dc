#include "ltlnorm/posbool.hpp"

#include <algorithm>
#include <set>

namespace ltlnorm {

namespace {

bool subset(const StateSet& a, const StateSet& b)
{
    return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

StateSet set_union(const StateSet& a, const StateSet& b)
{
    StateSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Sorts by (size, lexicographic) and removes non-minimal and duplicate sets.
std::vector<StateSet> minimize(std::vector<StateSet> models)
{
    std::sort(models.begin(), models.end(), [](const StateSet& a, const StateSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    models.erase(std::unique(models.begin(), models.end()), models.end());
    std::vector<StateSet> out;
    for (auto& m : models) {
        bool dominated = false;
        for (auto& k : out)
            if (subset(k, m)) {
                dominated = true;
                break;
            }
        if (!dominated)
            out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PosBool PosBool::tt()
{
    PosBool p;
    p.models_.push_back({});
    p.rehash();
    return p;
}

PosBool PosBool::var(StateId q)
{
    PosBool p;
    p.models_.push_back({q});
    p.rehash();
    return p;
}

PosBool PosBool::from_models(std::vector<StateSet> models)
{
    for (auto& m : models) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
    }
    PosBool p;
    p.models_ = minimize(std::move(models));
    p.rehash();
    return p;
}

void PosBool::rehash()
{
    // ff keeps hash 0 so that it matches a default-constructed value.
    if (models_.empty()) {
        hash_ = 0;
        return;
    }
    std::size_t h = 0x9e3779b97f4a7c15ull ^ models_.size();
    for (auto& m : models_) {
        std::size_t hm = m.size();
        for (auto q : m)
            hm = hm * 1000003u ^ q;
        h = (h ^ hm) * 0x100000001b3ull;
    }
    hash_ = h;
}

PosBool operator&(const PosBool& a, const PosBool& b)
{
    if (a.is_false() || b.is_true())
        return a;
    if (b.is_false() || a.is_true())
        return b;
    std::vector<StateSet> out;
    out.reserve(a.models_.size() * b.models_.size());
    for (auto& x : a.models_)
        for (auto& y : b.models_)
            out.push_back(set_union(x, y));
    PosBool p;
    p.models_ = minimize(std::move(out));
    p.rehash();
    return p;
}

PosBool operator|(const PosBool& a, const PosBool& b)
{
    if (a.is_true() || b.is_false())
        return a;
    if (b.is_true() || a.is_false())
        return b;
    std::vector<StateSet> out = a.models_;
    out.insert(out.end(), b.models_.begin(), b.models_.end());
    PosBool p;
    p.models_ = minimize(std::move(out));
    p.rehash();
    return p;
}

PosBool PosBool::without(const std::function<bool(StateId)>& drop) const
{
    PosBool p;
    for (auto& m : models_)
        if (std::none_of(m.begin(), m.end(), drop))
            p.models_.push_back(m);
    p.rehash();
    return p;
}

PosBool PosBool::dual() const
{
    PosBool out = tt();
    for (auto& m : models_) {
        PosBool clause;
        for (auto q : m)
            clause = clause | var(q);
        out = out & clause;
        if (out.is_false())
            break;
    }
    return out;
}

PosBool PosBool::substitute(const std::function<PosBool(StateId)>& sub) const
{
    PosBool out;
    for (auto& m : models_) {
        PosBool term = tt();
        for (auto q : m) {
            term = term & sub(q);
            if (term.is_false())
                break;
        }
        out = out | term;
        if (out.is_true())
            break;
    }
    return out;
}

bool PosBool::satisfied_by(const std::function<bool(StateId)>& holds) const
{
    return std::any_of(models_.begin(), models_.end(),
                       [&](const StateSet& m) { return std::all_of(m.begin(), m.end(), holds); });
}

StateSet PosBool::variables() const
{
    std::set<StateId> vs;
    for (auto& m : models_)
        vs.insert(m.begin(), m.end());
    return {vs.begin(), vs.end()};
}

std::string PosBool::to_string(const std::function<std::string(StateId)>& name) const
{
    if (is_false())
        return "ff";
    if (is_true())
        return "tt";
    auto nm = [&](StateId q) { return name ? name(q) : "q" + std::to_string(q); };
    std::string out;
    for (std::size_t i = 0; i < models_.size(); ++i) {
        if (i)
            out += " | ";
        for (std::size_t j = 0; j < models_[i].size(); ++j) {
            if (j)
                out += " & ";
            out += nm(models_[i][j]);
        }
    }
    return out;
}

}  // namespace ltlnorm

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ltlnorm {

using StateId = std::uint32_t;
using StateSet = std::vector<StateId>;  // sorted, duplicate-free

// Positive Boolean formula over state ids, kept as the antichain of its
// minimal models. tt is {∅}, ff is the empty antichain; two values are equal
// iff they denote the same monotone function.
class PosBool {
public:
    PosBool() = default;  // ff

    static PosBool tt();
    static PosBool ff() { return {}; }
    static PosBool var(StateId q);
    // Minimizes an arbitrary family of models.
    static PosBool from_models(std::vector<StateSet> models);

    bool is_true() const { return models_.size() == 1 && models_.front().empty(); }
    bool is_false() const { return models_.empty(); }
    const std::vector<StateSet>& models() const { return models_; }
    std::size_t hash() const { return hash_; }

    friend PosBool operator&(const PosBool& a, const PosBool& b);
    friend PosBool operator|(const PosBool& a, const PosBool& b);
    friend bool operator==(const PosBool& a, const PosBool& b)
    {
        return a.hash_ == b.hash_ && a.models_ == b.models_;
    }
    friend bool operator!=(const PosBool& a, const PosBool& b) { return !(a == b); }

    // θ[ff / {q : drop(q)}].
    PosBool without(const std::function<bool(StateId)>& drop) const;
    // The dual formula (swap ∧ and ∨): its minimal models are the minimal
    // transversals of this antichain.
    PosBool dual() const;
    // Replaces every variable q by sub(q).
    PosBool substitute(const std::function<PosBool(StateId)>& sub) const;
    bool satisfied_by(const std::function<bool(StateId)>& holds) const;
    StateSet variables() const;

    // Or-of-ands text, e.g. "q0 | q1 & q2"; names default to "q<id>".
    std::string to_string(const std::function<std::string(StateId)>& name = nullptr) const;

private:
    void rehash();
    std::vector<StateSet> models_;
    std::size_t hash_ = 0;
};

struct PosBoolHash {
    std::size_t operator()(const PosBool& p) const noexcept { return p.hash(); }
};

// Exact antichain of minimal models (the canonical representation).
inline const std::vector<StateSet>& minimal_models(const PosBool& p)
{
    return p.models();
}

}  // namespace ltlnorm

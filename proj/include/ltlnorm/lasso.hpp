#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltlnorm/formula.hpp"

namespace ltlnorm {

// A letter is a bitmask over the word's proposition list (bit i = ap[i]).
using Letter = std::uint32_t;

// Ultimately periodic word prefix · loop^ω.
struct LassoWord {
    std::vector<std::string> ap;
    std::vector<Letter> prefix;
    std::vector<Letter> loop;

    std::size_t positions() const { return prefix.size() + loop.size(); }
    Letter letter(std::size_t i) const;
    // Successor of a canonical position: the last loop position wraps back.
    std::size_t succ(std::size_t i) const { return i + 1 < positions() ? i + 1 : prefix.size(); }
};

// Text form "prefix;loop", letters like "{a,b}" or "{}" separated by commas.
// When ap is empty the proposition list is inferred (sorted).
LassoWord parse_lasso(std::string_view text, std::vector<std::string> ap = {});
std::string to_string(const LassoWord& w);

// Exact satisfaction w ⊨ φ via per-position fixpoint labelling.
bool eval_lasso(const Formula& f, const LassoWord& w);

}  // namespace ltlnorm

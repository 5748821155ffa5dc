#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ltlnorm {

// Node kinds of the negation-normal-form syntax. F and G are not kinds of
// their own: F x is Until(tt, x) and G x is WeakUntil(x, ff). Hole is the
// placeholder used by the rewrite rules and never appears in parsed input.
enum class Op : std::uint8_t {
    True,
    False,
    Lit,
    And,
    Or,
    Next,
    Until,
    WeakUntil,
    Release,
    StrongRelease,
    GF,
    FG,
    Hole
};

namespace detail {
struct Node;
}

class Formula {
public:
    Formula() = default;

    static Formula tt();
    static Formula ff();
    static Formula lit(std::string name, bool positive = true);
    static Formula hole();
    static Formula conj(Formula l, Formula r);
    static Formula disj(Formula l, Formula r);
    static Formula next(Formula f);
    static Formula until(Formula l, Formula r);
    static Formula weak_until(Formula l, Formula r);
    static Formula release(Formula l, Formula r);
    static Formula strong_release(Formula l, Formula r);
    static Formula gf(Formula f);
    static Formula fg(Formula f);
    static Formula eventually(Formula f) { return until(tt(), std::move(f)); }
    static Formula globally(Formula f) { return weak_until(std::move(f), ff()); }

    // Builds a node of the given binary/unary kind from children.
    static Formula make(Op op, Formula l, Formula r = Formula());

    bool valid() const noexcept { return node_ != nullptr; }
    Op op() const;
    const std::string& name() const;
    bool positive() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& child() const { return left(); }
    std::size_t arity() const;
    const Formula& operator[](std::size_t i) const { return i == 0 ? left() : right(); }

    std::size_t hash() const noexcept;
    // Syntax-tree node count (shared subtrees counted per occurrence),
    // saturating at UINT64_MAX.
    std::uint64_t size() const noexcept;

    bool is_constant() const { return op() == Op::True || op() == Op::False; }
    bool is_boolean() const { return op() == Op::And || op() == Op::Or; }
    bool is_limit() const { return op() == Op::GF || op() == Op::FG; }
    // Temporal nodes: X, U, W, R, M, GF, FG.
    bool is_temporal() const;
    bool is_eventually() const;
    bool is_globally() const;

    const void* identity() const noexcept { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using FormulaSet = std::unordered_set<Formula, FormulaHash>;
template <class V>
using FormulaMap = std::unordered_map<Formula, V, FormulaHash>;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Formula parse(std::string_view text);
std::string to_string(const Formula& f);

// Dual formula: swaps tt/ff, literal polarity, And/Or, U/R, W/M and GF/FG.
Formula negate(const Formula& f);

// Exhaustive constant folding plus deduplication of identical And/Or
// operands. Sound on every lasso; never raises the hierarchy level.
Formula simplify(const Formula& f);

// Distinct subformulas in post-order (children before parents, left first).
std::vector<Formula> subformulas(const Formula& f);
// Distinct proper subformulas as used for automaton atoms: no constants,
// no And/Or nodes.
std::vector<Formula> proper_subformulas(const Formula& f);
// Sorted distinct proposition names.
std::vector<std::string> propositions(const Formula& f);
bool contains_subformula(const Formula& haystack, const Formula& needle);
bool contains_op(const Formula& f, Op op);

// Rewrites GF x to G F x and FG x to F G x.
Formula expand_limits(const Formula& f);

// Replaces every occurrence of target by replacement. With skip_limits,
// occurrences below a GF/FG node are left alone.
Formula replace(const Formula& f, const Formula& target, const Formula& replacement,
                bool skip_limits = false);
// Replaces each subformula s with map(s) when map returns a valid formula;
// descends into s otherwise.
Formula replace_if(const Formula& f, const std::function<Formula(const Formula&)>& map,
                   bool skip_limits = false);

// Subterm addressing by child index; a path is a list of 0/1 indices.
using Path = std::vector<std::uint8_t>;
const Formula& at(const Formula& f, const Path& path);
Formula replace_at(const Formula& f, const Path& path, const Formula& replacement);
std::string path_to_string(const Path& path);

// A formula with placeholder leaves; fill substitutes every hole.
class FormulaWithHole {
public:
    explicit FormulaWithHole(Formula body);
    const Formula& body() const noexcept { return body_; }
    std::size_t hole_count() const noexcept { return holes_; }
    Formula fill(const Formula& f) const;

private:
    Formula body_;
    std::size_t holes_ = 0;
};

}  // namespace ltlnorm

template <>
struct std::hash<ltlnorm::Formula> {
    std::size_t operator()(const ltlnorm::Formula& f) const noexcept { return f.hash(); }
};

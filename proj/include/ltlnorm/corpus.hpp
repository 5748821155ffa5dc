#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ltlnorm/formula.hpp"
#include "ltlnorm/lasso.hpp"

namespace ltlnorm {

// Uniform draw from [0, n) by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n);

struct CorpusSpec {
    std::size_t count = 100;
    std::size_t max_nodes = 18;
    std::size_t ap_count = 3;  // 1..4, propositions a, b, c, d
    std::uint64_t seed = 1;
    // Keys: and, or, next, until, weak_until, release, strong_release,
    // literal. Literals fill exactly the size-1 positions.
    std::map<std::string, unsigned> weights = {
        {"and", 1}, {"or", 1}, {"next", 1}, {"until", 1}, {"weak_until", 1},
        {"release", 1}, {"strong_release", 1}, {"literal", 1}};
};

std::vector<std::string> corpus_propositions(std::size_t ap_count);

// A formula of exactly `nodes` nodes (or the nearest achievable size when
// some weights are zero).
Formula random_formula(std::mt19937_64& rng, std::size_t nodes, const CorpusSpec& spec);
// count formulas with sizes uniform in [1, max_nodes]; deterministic in spec.
std::vector<Formula> generate_corpus(const CorpusSpec& spec);

// |prefix| in [0, 6], |loop| in [1, 6], letters uniform over 2^ap.
LassoWord random_lasso(std::mt19937_64& rng, const std::vector<std::string>& ap,
                       std::size_t max_prefix = 6, std::size_t max_loop = 6);

// (…(((a0 U a1) W a2) U a3) … U an) for n ≥ 2.
Formula phi_family(unsigned n);

struct CheckHooks {
    // Applied to the rewrite normalizer's output; used to test the harness.
    std::function<Formula(const Formula&)> corrupt;
};

struct CheckReport {
    std::size_t lassos = 0;
    std::size_t closed_agree = 0;
    std::size_t rewrite_agree = 0;
    std::size_t drw_agree = 0;
    Formula closed;
    Formula rewritten;
    std::size_t drw_states = 0;
    std::size_t drw_pairs = 0;
    std::optional<LassoWord> witness;
    std::string witness_detail;  // which procedures disagreed
    bool unanimous() const { return !witness.has_value(); }
};

// Compares φ with both normal forms and the DRW on random lassos over the
// propositions of φ (at least one proposition).
CheckReport check_formula(const Formula& f, std::size_t lassos, std::uint64_t seed,
                          const CheckHooks& hooks = {});

struct StatsRow {
    std::string formula;
    std::uint64_t input_nodes = 0;
    std::uint64_t closed_nodes = 0;
    std::uint64_t rewrite_nodes = 0;
    std::size_t rewrite_steps = 0;
    std::uint64_t max_raw_nodes = 0;
    std::size_t a1w_states = 0;
    std::optional<std::size_t> drw_states;  // skipped when too many contexts
    std::optional<std::size_t> rabin_pairs;
};

struct StatsOptions {
    // ltl_to_drw is skipped when the basis has more elements than this.
    std::size_t max_basis_for_drw = 8;
    // ... or when the formula mentions more propositions than this.
    std::size_t max_ap_for_drw = 4;
    unsigned threads = 0;  // 0: hardware concurrency
};

StatsRow stats_row(const Formula& f, const StatsOptions& opts = {});
// Rows in input order; items are processed in parallel.
std::vector<StatsRow> stats_rows(const std::vector<Formula>& fs, const StatsOptions& opts = {});
std::string stats_csv(const std::vector<StatsRow>& rows);

// Runs fn(i) for i in [0, n) on a pool of threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ltlnorm

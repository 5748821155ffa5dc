#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltlnorm/formula.hpp"

namespace ltlnorm {

struct RewriteStep {
    int stage = 0;
    std::string rule;
    Path path;                        // redex position in the formula before
    std::uint64_t before = 0;         // whole-formula nodes before
    std::uint64_t after_raw = 0;      // whole-formula nodes right after the rule
    std::uint64_t after = 0;          // after simplification
    std::uint64_t measure_before = 0; // termination measure of the redex
    std::uint64_t measure_after = 0;  // largest measure among the residual parts
    Formula formula_before;
    Formula formula_after;            // raw, before simplification
};

struct RewriteTrace {
    std::vector<RewriteStep> steps;
    std::uint64_t max_raw_nodes = 0;

    void append(const RewriteTrace& other);
    // One line per step: "rule=<id> path=<p> before=<n> after=<n>", with
    // "# stage <k>" lines marking stage boundaries.
    std::string to_text() const;
};

struct RewriteOptions {
    bool simplify = true;
    // Also substitute ψ U ψ2 for every ψ when ψ1 U ψ2 is replaced (and the
    // analogous families for M, W and R).
    bool generalized_substitution = false;
    std::size_t max_steps = 200000;
};

struct RewriteResult {
    Formula formula;
    RewriteTrace trace;
};

RewriteResult stage1(const Formula& f, const RewriteOptions& opts = {});
RewriteResult stage2(const Formula& f, const RewriteOptions& opts = {});
RewriteResult stage3(const Formula& f, const RewriteOptions& opts = {});
RewriteResult normalize_rewrite(const Formula& f, const RewriteOptions& opts = {});
Formula normalize_dual(const Formula& f, const RewriteOptions& opts = {});

bool in_fgx_fragment(const Formula& f);
RewriteResult normalize_fgx(const Formula& f, const RewriteOptions& opts = {});

// Termination measures used by the stages.
std::uint64_t rank(const Formula& f);
std::uint64_t obstacles(const Formula& limit);

}  // namespace ltlnorm

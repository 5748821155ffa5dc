#include "ltlnorm/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "ltlnorm/alternating.hpp"
#include "ltlnorm/contextual.hpp"
#include "ltlnorm/deterministic.hpp"
#include "ltlnorm/rewrite.hpp"

namespace ltlnorm {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n)
{
    if (n <= 1)
        return 0;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do
        x = rng();
    while (x >= limit);
    return x % n;
}

std::vector<std::string> corpus_propositions(std::size_t ap_count)
{
    if (ap_count < 1 || ap_count > 4)
        throw PreconditionError("ap count must be between 1 and 4");
    std::vector<std::string> ap;
    for (std::size_t i = 0; i < ap_count; ++i)
        ap.push_back(std::string(1, static_cast<char>('a' + i)));
    return ap;
}

namespace {

struct Kind {
    const char* name;
    Op op;
    unsigned arity;
};

constexpr Kind kKinds[] = {
    {"and", Op::And, 2},          {"or", Op::Or, 2},
    {"next", Op::Next, 1},        {"until", Op::Until, 2},
    {"weak_until", Op::WeakUntil, 2}, {"release", Op::Release, 2},
    {"strong_release", Op::StrongRelease, 2},
};

unsigned weight(const CorpusSpec& spec, const char* name)
{
    auto it = spec.weights.find(name);
    return it == spec.weights.end() ? 0 : it->second;
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, std::size_t nodes, const CorpusSpec& spec)
{
    const auto ap = corpus_propositions(spec.ap_count);
    std::vector<const Kind*> fit;
    std::vector<unsigned> w;
    unsigned total = 0;
    if (nodes >= 2)
        for (auto& k : kKinds) {
            const unsigned kw = weight(spec, k.name);
            if (kw > 0 && nodes >= 1 + k.arity) {
                fit.push_back(&k);
                w.push_back(kw);
                total += kw;
            }
        }
    if (total == 0) {
        const auto& name = ap[draw(rng, ap.size())];
        return Formula::lit(name, draw(rng, 2) == 0);
    }
    std::uint64_t r = draw(rng, total);
    std::size_t pick = 0;
    while (r >= w[pick])
        r -= w[pick++];
    const Kind& k = *fit[pick];
    if (k.arity == 1)
        return Formula::make(k.op, random_formula(rng, nodes - 1, spec));
    const std::size_t left = 1 + draw(rng, nodes - 2);
    Formula l = random_formula(rng, left, spec);
    Formula r2 = random_formula(rng, nodes - 1 - left, spec);
    return Formula::make(k.op, l, r2);
}

std::vector<Formula> generate_corpus(const CorpusSpec& spec)
{
    if (spec.max_nodes < 1)
        throw PreconditionError("max_nodes must be positive");
    std::mt19937_64 rng(spec.seed);
    std::vector<Formula> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const std::size_t n = 1 + draw(rng, spec.max_nodes);
        out.push_back(random_formula(rng, n, spec));
    }
    return out;
}

LassoWord random_lasso(std::mt19937_64& rng, const std::vector<std::string>& ap,
                       std::size_t max_prefix, std::size_t max_loop)
{
    LassoWord w;
    w.ap = ap;
    const std::uint64_t letters = std::uint64_t(1) << ap.size();
    const std::size_t p = draw(rng, max_prefix + 1);
    const std::size_t l = 1 + draw(rng, max_loop);
    for (std::size_t i = 0; i < p; ++i)
        w.prefix.push_back(static_cast<Letter>(draw(rng, letters)));
    for (std::size_t i = 0; i < l; ++i)
        w.loop.push_back(static_cast<Letter>(draw(rng, letters)));
    return w;
}

Formula phi_family(unsigned n)
{
    if (n < 2)
        throw PreconditionError("the family starts at n = 2");
    auto a = [](unsigned i) { return Formula::lit("a" + std::to_string(i)); };
    Formula f = Formula::weak_until(Formula::until(a(0), a(1)), a(2));
    for (unsigned i = 3; i <= n; ++i)
        f = Formula::until(f, a(i));
    return f;
}

CheckReport check_formula(const Formula& f, std::size_t lassos, std::uint64_t seed,
                          const CheckHooks& hooks)
{
    if (lassos < 1)
        throw PreconditionError("at least one lasso is required");
    CheckReport rep;
    const auto ap = propositions(f);
    rep.closed = normalize_closed_form(f);
    rep.rewritten = normalize_rewrite(f).formula;
    if (hooks.corrupt)
        rep.rewritten = hooks.corrupt(rep.rewritten);
    const DeterministicAutomaton d = ltl_to_drw(f, ap);
    rep.drw_states = d.size();
    rep.drw_pairs = d.pair_count();
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < lassos; ++i) {
        const LassoWord w = random_lasso(rng, ap);
        const bool expect = eval_lasso(f, w);
        const bool c = eval_lasso(rep.closed, w);
        const bool r = eval_lasso(rep.rewritten, w);
        const bool a = drw_accepts_lasso(d, w);
        rep.closed_agree += c == expect;
        rep.rewrite_agree += r == expect;
        rep.drw_agree += a == expect;
        ++rep.lassos;
        if ((c != expect || r != expect || a != expect) && !rep.witness) {
            rep.witness = w;
            std::string who;
            if (c != expect)
                who += " closed";
            if (r != expect)
                who += " rewrite";
            if (a != expect)
                who += " drw";
            rep.witness_detail = "original=" + std::string(expect ? "true" : "false") +
                                 ", disagreeing:" + who;
        }
    }
    return rep;
}

StatsRow stats_row(const Formula& f, const StatsOptions& opts)
{
    StatsRow row;
    row.formula = to_string(f);
    row.input_nodes = f.size();
    const ClosedForm cf = closed_form(f);
    row.closed_nodes = cf.formula.size();
    const RewriteResult rr = normalize_rewrite(f);
    row.rewrite_nodes = rr.formula.size();
    row.rewrite_steps = rr.trace.steps.size();
    row.max_raw_nodes = rr.trace.max_raw_nodes;
    row.a1w_states = ltl_to_a1w(rr.formula).size();
    if (cf.basis.gf.size() + cf.basis.fg.size() <= opts.max_basis_for_drw &&
        propositions(f).size() <= opts.max_ap_for_drw) {
        const DeterministicAutomaton d = ltl_to_drw(f);
        row.drw_states = d.size();
        row.rabin_pairs = d.pair_count();
    }
    return row;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; !failed && (i = next++) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<StatsRow> stats_rows(const std::vector<Formula>& fs, const StatsOptions& opts)
{
    std::vector<StatsRow> rows(fs.size());
    parallel_for(fs.size(), opts.threads, [&](std::size_t i) { rows[i] = stats_row(fs[i], opts); });
    return rows;
}

std::string stats_csv(const std::vector<StatsRow>& rows)
{
    std::ostringstream out;
    out << "formula,input_nodes,closed_nodes,rewrite_nodes,rewrite_steps,a1w_states,drw_states,"
           "rabin_pairs\n";
    for (auto& r : rows) {
        out << '"' << r.formula << "\"," << r.input_nodes << ',' << r.closed_nodes << ','
            << r.rewrite_nodes << ',' << r.rewrite_steps << ',' << r.a1w_states << ',';
        if (r.drw_states)
            out << *r.drw_states;
        out << ',';
        if (r.rabin_pairs)
            out << *r.rabin_pairs;
        out << '\n';
    }
    return out.str();
}

}  // namespace ltlnorm

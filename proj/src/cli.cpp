#include "ltlnorm/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "ltlnorm/alternating.hpp"
#include "ltlnorm/contextual.hpp"
#include "ltlnorm/deterministic.hpp"
#include "ltlnorm/hierarchy.hpp"
#include "ltlnorm/io.hpp"
#include "ltlnorm/rewrite.hpp"

namespace ltlnorm {

namespace {

struct Options {
    std::string formula;
    std::string method = "rewrite";
    bool trace = false;
    std::string format = "json";
    std::size_t lassos = 500;
    std::uint64_t seed = 1;
    std::size_t count = 100;
    std::size_t max_nodes = 18;
    std::size_t ap = 3;
    std::string family;
    unsigned n_max = 10;
    unsigned threads = 0;
};

int cmd_normalize(const Options& o, std::ostream& out)
{
    const Formula f = parse(o.formula);
    if (o.method == "closed") {
        out << to_string(normalize_closed_form(f)) << "\n";
    } else if (o.method == "dual") {
        out << to_string(normalize_dual(f)) << "\n";
    } else {
        const RewriteResult r = o.method == "fgx" ? normalize_fgx(f) : normalize_rewrite(f);
        out << to_string(r.formula) << "\n";
        if (o.trace)
            out << r.trace.to_text();
    }
    return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out)
{
    const Formula f = parse(o.formula);
    const auto classes = classify(f);
    const Measures m = measures(f);
    out << "classes:";
    for (auto& c : classes)
        out << " " << to_string(c);
    out << "\ndelta2: " << (is_delta2(f) ? "true" : "false") << "\n";
    out << "form: " << to_string(form_status(f)) << "\n";
    out << "nodes: " << m.nodes << "\nubw: " << m.ubw << "\ngfba: " << m.gfba << "\n";
    return kExitOk;
}

int cmd_aww(const Options& o, std::ostream& out)
{
    const Formula f = parse(o.formula);
    const AlternatingAutomaton a = ltl_to_a1w(f);
    if (o.format == "hoa")
        throw PreconditionError("HOA output is only available for deterministic automata");
    out << to_json(a) << "\n";
    return kExitOk;
}

int cmd_drw(const Options& o, std::ostream& out)
{
    const Formula f = parse(o.formula);
    const DeterministicAutomaton d = ltl_to_drw(f);
    if (o.format == "hoa")
        out << to_hoa(d, o.formula);
    else
        out << to_json(d) << "\n";
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, const CheckHooks& hooks)
{
    const Formula f = parse(o.formula);
    if (o.lassos < 1)
        throw PreconditionError("--lassos must be at least 1");
    const CheckReport r = check_formula(f, o.lassos, o.seed, hooks);
    out << "formula: " << to_string(f) << "\n";
    out << "closed: " << to_string(r.closed) << "\n";
    out << "rewrite: " << to_string(r.rewritten) << "\n";
    out << "drw: " << r.drw_states << " states, " << r.drw_pairs << " pairs\n";
    out << "agreement (of " << r.lassos << "): closed " << r.closed_agree << ", rewrite "
        << r.rewrite_agree << ", drw " << r.drw_agree << "\n";
    if (r.unanimous()) {
        out << "result: unanimous\n";
        return kExitOk;
    }
    out << "result: disagreement\nwitness: " << to_string(*r.witness) << " (" << r.witness_detail
        << ")\n";
    return kExitDisagreement;
}

int cmd_stats(const Options& o, std::ostream& out)
{
    std::vector<Formula> fs;
    if (o.family == "phi") {
        for (unsigned n = 3; n <= o.n_max; ++n)
            fs.push_back(phi_family(n));
    } else if (o.family.empty()) {
        CorpusSpec spec;
        spec.count = o.count;
        spec.max_nodes = o.max_nodes;
        spec.ap_count = o.ap;
        spec.seed = o.seed;
        fs = generate_corpus(spec);
    } else {
        throw PreconditionError("unknown family '" + o.family + "'");
    }
    StatsOptions so;
    so.threads = o.threads;
    out << stats_csv(stats_rows(fs, so));
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CheckHooks& hooks)
{
    CLI::App app{"LTL normalization and automata construction"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> methods{"closed", "rewrite", "dual", "fgx"};
    const std::vector<std::string> formats{"json", "hoa"};

    auto* normalize = app.add_subcommand("normalize", "normalize a formula into the Δ2 normal form");
    normalize->add_option("formula", o.formula)->required();
    normalize->add_option("--method", o.method)->check(CLI::IsMember(methods));
    normalize->add_flag("--trace", o.trace, "print the rewrite trace");

    auto* classify_cmd = app.add_subcommand("classify", "hierarchy classes and measures");
    classify_cmd->add_option("formula", o.formula)->required();

    auto* aww = app.add_subcommand("aww", "very weak alternating automaton (JSON)");
    aww->add_option("formula", o.formula)->required();
    aww->add_option("--format", o.format)->check(CLI::IsMember(formats));

    auto* drw = app.add_subcommand("drw", "deterministic Rabin automaton");
    drw->add_option("formula", o.formula)->required();
    drw->add_option("--format", o.format)->check(CLI::IsMember(formats));

    auto* check = app.add_subcommand("check", "compare all procedures on random lassos");
    check->add_option("formula", o.formula)->required();
    check->add_option("--lassos", o.lassos);
    check->add_option("--seed", o.seed);

    auto* stats = app.add_subcommand("stats", "CSV statistics over a random corpus");
    stats->add_option("--count", o.count);
    stats->add_option("--max-nodes", o.max_nodes);
    stats->add_option("--ap", o.ap)->check(CLI::Range(1, 4));
    stats->add_option("--seed", o.seed);
    stats->add_option("--family", o.family, "use a fixed family instead (phi)");
    stats->add_option("--n-max", o.n_max);
    stats->add_option("--threads", o.threads);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitParseError;
    }

    try {
        if (app.got_subcommand(normalize))
            return cmd_normalize(o, out);
        if (app.got_subcommand(classify_cmd))
            return cmd_classify(o, out);
        if (app.got_subcommand(aww))
            return cmd_aww(o, out);
        if (app.got_subcommand(drw))
            return cmd_drw(o, out);
        if (app.got_subcommand(check))
            return cmd_check(o, out, hooks);
        return cmd_stats(o, out);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitParseError;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

}  // namespace ltlnorm

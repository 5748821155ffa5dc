#include "ltlnorm/io.hpp"

#include <json.hpp>
#include <sstream>

namespace ltlnorm {

using nlohmann::json;

std::string letter_bits(Letter a, std::size_t ap_size)
{
    std::string s(ap_size, '0');
    for (std::size_t i = 0; i < ap_size; ++i)
        if (a >> i & 1)
            s[i] = '1';
    return s;
}

Letter parse_letter_bits(const std::string& bits)
{
    Letter a = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            a |= Letter(1) << i;
        else if (bits[i] != '0')
            throw PreconditionError("letter bitstring must contain only 0 and 1");
    }
    return a;
}

namespace {

json posbool_json(const PosBool& p)
{
    if (p.is_false())
        return {{"op", "ff"}};
    if (p.is_true())
        return {{"op", "tt"}};
    auto term = [](const StateSet& m) -> json {
        if (m.size() == 1)
            return {{"op", "var"}, {"id", m[0]}};
        json args = json::array();
        for (auto q : m)
            args.push_back({{"op", "var"}, {"id", q}});
        return {{"op", "and"}, {"args", args}};
    };
    if (p.models().size() == 1)
        return term(p.models()[0]);
    json args = json::array();
    for (auto& m : p.models())
        args.push_back(term(m));
    return {{"op", "or"}, {"args", args}};
}

PosBool posbool_from(const json& j)
{
    const std::string op = j.at("op").get<std::string>();
    if (op == "tt")
        return PosBool::tt();
    if (op == "ff")
        return PosBool::ff();
    if (op == "var")
        return PosBool::var(j.at("id").get<StateId>());
    if (op != "and" && op != "or")
        throw PreconditionError("unknown posbool op '" + op + "'");
    PosBool acc = op == "and" ? PosBool::tt() : PosBool::ff();
    for (auto& arg : j.at("args"))
        acc = op == "and" ? (acc & posbool_from(arg)) : (acc | posbool_from(arg));
    return acc;
}

json flags_list(const StateFlags& f)
{
    json out = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i])
            out.push_back(i);
    return out;
}

}  // namespace

std::string to_json(const AlternatingAutomaton& a, int indent)
{
    json j;
    j["ap"] = a.ap;
    j["states"] = json::array();
    for (std::size_t q = 0; q < a.size(); ++q)
        j["states"].push_back(
            {{"id", q}, {"label", a.states[q].label}, {"accepting", a.states[q].accepting}});
    j["initial"] = posbool_json(a.initial);
    json delta = json::object();
    for (std::size_t q = 0; q < a.size(); ++q) {
        json row = json::object();
        for (std::size_t l = 0; l < a.alphabet_size(); ++l)
            row[letter_bits(static_cast<Letter>(l), a.ap.size())] = posbool_json(a.delta[q][l]);
        delta[std::to_string(q)] = row;
    }
    j["delta"] = delta;
    return j.dump(indent);
}

AlternatingAutomaton alternating_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    AlternatingAutomaton a;
    try {
        a.ap = j.at("ap").get<std::vector<std::string>>();
        if (a.ap.size() > kMaxPropositions)
            throw PreconditionError("at most 16 propositions are supported");
        for (auto& s : j.at("states")) {
            if (s.at("id").get<std::size_t>() != a.states.size())
                throw PreconditionError("state ids must be 0..n-1 in order");
            a.states.push_back({s.value("label", std::string()), s.at("accepting").get<bool>(), {}});
        }
        a.initial = posbool_from(j.at("initial"));
        a.delta.assign(a.size(), std::vector<PosBool>(a.alphabet_size()));
        for (std::size_t q = 0; q < a.size(); ++q) {
            const json& row = j.at("delta").at(std::to_string(q));
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (it.key().size() != a.ap.size())
                    throw PreconditionError("letter bitstring has the wrong length");
                a.delta[q][parse_letter_bits(it.key())] = posbool_from(it.value());
            }
            if (row.size() != a.alphabet_size())
                throw PreconditionError("transition table does not cover every letter");
        }
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("malformed automaton JSON: ") + e.what());
    }
    a.validate();
    return a;
}

std::string to_json(const DeterministicAutomaton& d, int indent)
{
    json j;
    j["ap"] = d.ap;
    j["states"] = json::array();
    for (std::size_t q = 0; q < d.size(); ++q)
        j["states"].push_back({{"id", q}, {"label", q < d.labels.size() ? d.labels[q] : ""}});
    j["initial"] = d.initial;
    json delta = json::object();
    for (std::size_t q = 0; q < d.size(); ++q) {
        json row = json::object();
        for (std::size_t l = 0; l < d.alphabet_size(); ++l)
            row[letter_bits(static_cast<Letter>(l), d.ap.size())] = d.delta[q][l];
        delta[std::to_string(q)] = row;
    }
    j["delta"] = delta;
    const Acceptance& acc = d.acceptance;
    json a = {{"type", to_string(acc.kind)}};
    switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::CoBuchi:
    case AcceptanceKind::Weak: a["set"] = flags_list(acc.set); break;
    case AcceptanceKind::TerminalAccepting:
    case AcceptanceKind::TerminalRejecting: a["sink"] = acc.sink; break;
    case AcceptanceKind::Rabin:
        a["pairs"] = json::array();
        for (auto& p : acc.pairs)
            a["pairs"].push_back({{"fin", flags_list(p.fin)}, {"inf", flags_list(p.inf)}});
        break;
    }
    j["acceptance"] = a;
    return j.dump(indent);
}

std::string to_hoa(const DeterministicAutomaton& d, const std::string& name)
{
    // Terminal and weak conditions are emitted as their Büchi or co-Büchi
    // reading; Rabin pairs use sets 2i (Fin) and 2i+1 (Inf).
    const Acceptance& acc = d.acceptance;
    std::vector<std::vector<unsigned>> marks(d.size());
    std::string acc_name, acc_line;
    auto mark_set = [&](const StateFlags& f, unsigned set) {
        for (std::size_t q = 0; q < f.size(); ++q)
            if (f[q])
                marks[q].push_back(set);
    };
    switch (acc.kind) {
    case AcceptanceKind::Buchi:
    case AcceptanceKind::Weak:
        acc_name = "Buchi";
        acc_line = "1 Inf(0)";
        mark_set(acc.set, 0);
        break;
    case AcceptanceKind::CoBuchi:
        acc_name = "co-Buchi";
        acc_line = "1 Fin(0)";
        mark_set(acc.set, 0);
        break;
    case AcceptanceKind::TerminalAccepting:
        acc_name = "Buchi";
        acc_line = "1 Inf(0)";
        marks[acc.sink].push_back(0);
        break;
    case AcceptanceKind::TerminalRejecting:
        acc_name = "co-Buchi";
        acc_line = "1 Fin(0)";
        marks[acc.sink].push_back(0);
        break;
    case AcceptanceKind::Rabin: {
        const std::size_t k = acc.pairs.size();
        acc_name = "Rabin " + std::to_string(k);
        if (k == 0) {
            acc_line = "0 f";
        } else {
            acc_line = std::to_string(2 * k) + " ";
            for (std::size_t i = 0; i < k; ++i) {
                if (i)
                    acc_line += " | ";
                acc_line += "(Fin(" + std::to_string(2 * i) + ")&Inf(" + std::to_string(2 * i + 1) + "))";
                mark_set(acc.pairs[i].fin, static_cast<unsigned>(2 * i));
                mark_set(acc.pairs[i].inf, static_cast<unsigned>(2 * i + 1));
            }
        }
        break;
    }
    }
    std::ostringstream out;
    out << "HOA: v1\n";
    if (!name.empty())
        out << "name: " << json(name).dump() << "\n";
    out << "States: " << d.size() << "\n";
    out << "Start: " << d.initial << "\n";
    out << "AP: " << d.ap.size();
    for (auto& p : d.ap)
        out << " " << json(p).dump();
    out << "\n";
    out << "acc-name: " << acc_name << "\n";
    out << "Acceptance: " << acc_line << "\n";
    out << "properties: trans-labels explicit-labels state-acc deterministic complete\n";
    out << "--BODY--\n";
    for (std::size_t q = 0; q < d.size(); ++q) {
        out << "State: " << q;
        if (!marks[q].empty()) {
            std::sort(marks[q].begin(), marks[q].end());
            out << " {";
            for (std::size_t i = 0; i < marks[q].size(); ++i)
                out << (i ? " " : "") << marks[q][i];
            out << "}";
        }
        out << "\n";
        for (std::size_t l = 0; l < d.alphabet_size(); ++l) {
            std::string label;
            for (std::size_t i = 0; i < d.ap.size(); ++i) {
                if (i)
                    label += "&";
                if (!(l >> i & 1))
                    label += "!";
                label += std::to_string(i);
            }
            out << "[" << (label.empty() ? "t" : label) << "] " << d.delta[q][l] << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

}  // namespace ltlnorm

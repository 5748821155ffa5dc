#pragma once

#include <string>

#include "ltlnorm/alternating.hpp"
#include "ltlnorm/deterministic.hpp"

namespace ltlnorm {

// Letter as a bitstring: character i is '1' iff ap[i] holds.
std::string letter_bits(Letter a, std::size_t ap_size);
Letter parse_letter_bits(const std::string& bits);

// {"ap", "states": [{"id", "label", "accepting"}], "initial": posbool,
//  "delta": {"<id>": {"<bits>": posbool}}}, posbool being nested
// {"op": "and"|"or"|"var"|"tt"|"ff", ...}.
std::string to_json(const AlternatingAutomaton& a, int indent = 2);
AlternatingAutomaton alternating_from_json(const std::string& text);

// Same layout with single-valued "delta" and a tagged "acceptance" object.
std::string to_json(const DeterministicAutomaton& d, int indent = 2);
// HOA v1 with state-based acceptance and explicit labels over 2^ap.
std::string to_hoa(const DeterministicAutomaton& d, const std::string& name = "");

}  // namespace ltlnorm

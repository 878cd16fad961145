#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include "stopgame/payoff.hpp"

namespace stopgame {

/// A parsed instance file: the space, the optional payoff, and the mapping
/// from caller node labels to internal breadth-first ids.
struct ParsedInstance {
  std::shared_ptr<const FilteredSpace> space;
  std::shared_ptr<const Payoff> payoff;  // null when the file has no payoff
  std::unordered_map<int, int> internal_id_by_original;
};

/// Parses the instance document
///   {"grid": [0, 0.5, 1],
///    "nodes": [{"id":0,"depth":0}, {"id":1,"depth":1,"parent":0,"p":"1/2"}, ...],
///    "payoff": {...}}                // optional
/// Grid entries and probabilities may be JSON numbers (converted exactly from
/// their binary value), "a/b" strings, or decimal strings. Throws
/// ValidationError on malformed documents.
ParsedInstance parse_instance_json(const std::string& text);

/// Parses a payoff document against an existing space. Table node references
/// use the caller's node labels. Kinds:
///   {"kind":"abs_diff_f","f":[0,0,1]}
///   {"kind":"abs_time_diff"}
///   {"kind":"table","entries":[{"s":0,"t":1,"node":2,"v":"1/2"},...]}
///   {"kind":"w_process","W":{"entries":[{"s":0,"t":0,"x":"0","y":"0","v":"0"},...]},
///    "L":"2","f":["0",...],"g":["0",...]}
///   {"kind":"utility_spread","utility":[["-1","-1"],["0","0"],["2","1"]],
///    "f":["0",...],"g":["0",...]}
std::shared_ptr<const Payoff> parse_payoff_json(
    const std::shared_ptr<const FilteredSpace>& space, const std::string& text,
    const std::unordered_map<int, int>& internal_id_by_original);

}  // namespace stopgame

#pragma once

#include <string>
#include <vector>

#include "emu/game.hpp"
#include "emu/solver.hpp"

namespace emu {

/// Game files are JSON objects:
///   { "vars": ["x", "y"], "inputs": ["x"], "rho_e": "true", "rho_s": "true",
///     "weights": [{"guard": "y'", "weight": -1}, {"guard": "true", "weight": 1}],
///     "priorities": [{"guard": "y", "priority": 0}],   (optional)
///     "formula": "nu Z . mu Y . ..." }                   (optional)
/// Missing rho_e/rho_s default to true. Throws ParseError on malformed JSON or
/// missing fields and the usual model errors on inconsistent content.
WeightedGameStructure parse_game(const std::string& json_text);
WeightedGameStructure load_game(const std::string& path);
std::string game_to_json(const WeightedGameStructure& g);

/// Either a JSON list of {guard, priority} objects or an object holding such a
/// list under "priorities".
std::vector<PriorityRule> parse_priorities(const std::string& json_text);
std::vector<PriorityRule> load_priorities(const std::string& path);

/// Replaces the priority annotation of `g`.
WeightedGameStructure with_priorities(const WeightedGameStructure& g, std::vector<PriorityRule> priorities);

std::string read_file(const std::string& path);

/// Versioned ("schema": 1) JSON rendering of a solve report.
std::string report_to_json(const SolveReport& r, const VariableSet& vars, int indent = 2);
/// Inverse of report_to_json. Throws ParseError on schema mismatch.
SolveReport report_from_json(const std::string& json_text);

}  // namespace emu

#pragma once

#include <csplab/problem.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace csplab {

// Problem file format (UTF-8 JSON, fields in this order):
//
//   {"variables": [names],
//    "domains": {name: [values]},
//    "constraints": [{"scope": [names],
//                     "kind": "extensional" | "not_equal" | "letter_equality",
//                     "tuples": [[...]],                  // extensional only
//                     "params": {"posA": 0, "posB": 2}}]} // letter_equality only
//
// Values are JSON integers or strings.

Problem parse_problem(std::string_view json_text);
std::string problem_to_json(const Problem& p, int indent = -1);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& p, const std::filesystem::path& path);

/// Variable order file: one variable name per line; blank lines ignored.
std::vector<VarId> parse_order(const Problem& p, std::string_view text);
std::vector<VarId> load_order(const Problem& p, const std::filesystem::path& path);
std::string order_to_text(const Problem& p, const std::vector<VarId>& order);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace csplab

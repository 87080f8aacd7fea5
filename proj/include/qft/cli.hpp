#pragma once

// Command-line front end and the file formats it speaks.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qft/puzzle.hpp"

namespace qft {

/// {"depth": D, "levels": [[...], ...], "i": {...}, "f": {...}}
nlohmann::json puzzle_to_json(const Puzzle& p);
/// Throws PuzzleError on dangling labels or a malformed document.
Puzzle puzzle_from_json(const nlohmann::json& doc);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::string> inputs;  // path -> hash
  std::map<std::string, std::string> truncation;
  std::string tool_version;

  nlohmann::json to_json() const;
  /// Single-line form used in CSV ("# ") and DOT ("// ") headers.
  std::string line() const;
};

extern const char* const kToolVersion;

/// Exit status: 0 success, 1 input error, 2 precondition violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qft

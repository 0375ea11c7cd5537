#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace qcube {

// Session-wide numeric and execution defaults. Every field maps to one
// config-file key; command-line flags override the file.
struct Settings {
  double rel_tol = 1e-9;
  int grid_per_cell = 64;
  std::uint64_t budget = 10'000'000;
  int workers = 1;
  std::uint64_t seed = 0;
  std::size_t max_equality_report = 256;
};

// Parses "key = value" lines on top of `base`; blank lines and lines
// starting with '#' are ignored. Unknown keys and malformed values throw
// invalid_argument.
Settings parse_settings(const std::string& text, Settings base = Settings{});

void to_json(nlohmann::json& j, const Settings& s);

}  // namespace qcube

#include "qcube/settings.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qcube {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

template <typename T, typename Parse>
T parse_with(const std::string& key, const std::string& value, Parse parse) {
  std::size_t pos = 0;
  T v{};
  try {
    v = parse(value, &pos);
  } catch (const std::exception&) {
    bad("bad value '" + value + "' for " + key);
  }
  if (pos != value.size()) bad("bad value '" + value + "' for " + key);
  return v;
}

}  // namespace

Settings parse_settings(const std::string& text, Settings base) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) bad("expected key = value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "rel_tol") {
      const double v = parse_with<double>(key, value, [](const std::string& s, std::size_t* p) {
        return std::stod(s, p);
      });
      if (!(v > 0)) bad("rel_tol must be positive");
      base.rel_tol = v;
    } else if (key == "grid_per_cell") {
      const int v = parse_with<int>(key, value, [](const std::string& s, std::size_t* p) {
        return std::stoi(s, p);
      });
      if (v < 2) bad("grid_per_cell must be at least 2");
      base.grid_per_cell = v;
    } else if (key == "budget") {
      base.budget = parse_with<std::uint64_t>(key, value, [](const std::string& s, std::size_t* p) {
        return std::stoull(s, p);
      });
    } else if (key == "workers") {
      const int v = parse_with<int>(key, value, [](const std::string& s, std::size_t* p) {
        return std::stoi(s, p);
      });
      if (v < 1) bad("workers must be at least 1");
      base.workers = v;
    } else if (key == "seed") {
      base.seed = parse_with<std::uint64_t>(key, value, [](const std::string& s, std::size_t* p) {
        return std::stoull(s, p);
      });
    } else if (key == "max_equality_report") {
      base.max_equality_report =
          parse_with<std::size_t>(key, value, [](const std::string& s, std::size_t* p) {
            return static_cast<std::size_t>(std::stoull(s, p));
          });
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  return base;
}

void to_json(nlohmann::json& j, const Settings& s) {
  j = nlohmann::json{{"rel_tol", s.rel_tol},
                     {"grid_per_cell", s.grid_per_cell},
                     {"budget", s.budget},
                     {"workers", s.workers},
                     {"seed", s.seed},
                     {"max_equality_report", s.max_equality_report}};
}

}  // namespace qcube

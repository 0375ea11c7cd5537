#include "qcube/io.hpp"

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcube {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Coord parse_int(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    bad(std::string(what) + ": bad integer '" + tok + "'");
  }
  if (pos != tok.size()) bad(std::string(what) + ": bad integer '" + tok + "'");
  return static_cast<Coord>(v);
}

double parse_double(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    bad(std::string(what) + ": bad number '" + tok + "'");
  }
  if (pos != tok.size()) bad(std::string(what) + ": bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

const char* branch_name(TraceBranch b) {
  switch (b) {
    case TraceBranch::base_d1: return "base_d1";
    case TraceBranch::fibering_q1: return "fibering_q1";
    case TraceBranch::foliation_qgt1: return "foliation_qgt1";
  }
  return "unknown";
}

void put_rational(nlohmann::json& j, const std::string& key, const BigRational& r) {
  j[key] = r.str();
  j[key + "_approx"] = r.convert_to<double>();
}

void put_rational_opt(nlohmann::json& j, const std::string& key,
                      const std::optional<BigRational>& r) {
  if (r) {
    put_rational(j, key, *r);
  } else {
    j[key] = nullptr;
    j[key + "_approx"] = nullptr;
  }
}

nlohmann::json table_json(const std::vector<std::pair<Coord, std::size_t>>& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, v] : t) arr.push_back(nlohmann::json::array({k, v}));
  return arr;
}

}  // namespace

PointSet parse_point_set_text(const std::string& text, int expect_dim) {
  std::vector<Point> pts;
  std::size_t dim = expect_dim > 0 ? static_cast<std::size_t>(expect_dim) : 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string tok;
    Point p;
    while (ls >> tok) p.push_back(parse_int(tok, "point set"));
    if (dim == 0) dim = p.size();
    if (p.size() != dim)
      bad("point set: expected " + std::to_string(dim) + " coordinates, got " +
          std::to_string(p.size()));
    pts.push_back(std::move(p));
  }
  if (dim == 0) bad("point set: empty input and no dimension given");
  return PointSet(static_cast<int>(dim), std::move(pts));
}

PointSet parse_point_set_json(const nlohmann::json& j, int expect_dim) {
  if (!j.is_array()) bad("point set: expected a JSON array of points");
  std::vector<Point> pts;
  std::size_t dim = expect_dim > 0 ? static_cast<std::size_t>(expect_dim) : 0;
  for (const auto& e : j) {
    if (!e.is_array()) bad("point set: each point must be an array of integers");
    Point p;
    for (const auto& c : e) {
      if (!c.is_number_integer()) bad("point set: coordinates must be integers");
      p.push_back(c.get<Coord>());
    }
    if (dim == 0) dim = p.size();
    if (p.size() != dim)
      bad("point set: expected " + std::to_string(dim) + " coordinates, got " +
          std::to_string(p.size()));
    pts.push_back(std::move(p));
  }
  if (dim == 0) bad("point set: empty input and no dimension given");
  return PointSet(static_cast<int>(dim), std::move(pts));
}

PointSet parse_point_set(const std::string& text, int expect_dim) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const std::exception& e) {
      bad(std::string("point set: invalid JSON: ") + e.what());
    }
    return parse_point_set_json(j, expect_dim);
  }
  return parse_point_set_text(text, expect_dim);
}

std::string format_point_set_text(const PointSet& s) {
  std::ostringstream out;
  for (const auto& p : s.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << p[i];
    }
    out << '\n';
  }
  return out.str();
}

WeightFn parse_weight_fn_inline(const std::string& spec) {
  const std::string t = trim(spec);
  if (t.empty()) bad("weight fn: empty spec");
  std::map<Coord, double> entries;
  for (const std::string& part : split(t, ',')) {
    const std::string e = trim(part);
    const std::size_t colon = e.find(':');
    if (colon == std::string::npos)
      bad("weight fn: entry '" + e + "' is not of the form n:value");
    const Coord n = parse_int(trim(e.substr(0, colon)), "weight fn");
    const double v = parse_double(trim(e.substr(colon + 1)), "weight fn");
    if (!entries.emplace(n, v).second)
      bad("weight fn: duplicate support point " + std::to_string(n));
  }
  return WeightFn(entries);
}

WeightFn parse_weight_fn_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("weight fn: expected a JSON object {\"n\": value}");
  std::map<Coord, double> entries;
  for (const auto& [key, val] : j.items()) {
    const Coord n = parse_int(key, "weight fn");
    if (!val.is_number()) bad("weight fn: value for '" + key + "' must be a number");
    if (!entries.emplace(n, val.get<double>()).second)
      bad("weight fn: duplicate support point " + std::to_string(n));
  }
  return WeightFn(entries);
}

WeightFn parse_weight_fn(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const std::exception& e) {
      bad(std::string("weight fn: invalid JSON: ") + e.what());
    }
    return parse_weight_fn_json(j);
  }
  return parse_weight_fn_inline(text);
}

QuasicubeWitness witness_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("x0") || !j.contains("x1"))
    bad("witness: expected an object with x0 and x1");
  if (!j["x0"].is_number_integer() || !j["x1"].is_number_integer())
    bad("witness: x0 and x1 must be integers");
  const Coord x0 = j["x0"].get<Coord>();
  const Coord x1 = j["x1"].get<Coord>();
  const bool has0 = j.contains("child0");
  const bool has1 = j.contains("child1");
  if (has0 != has1) bad("witness: child0 and child1 must appear together");
  if (!has0) return QuasicubeWitness(x0, x1);
  auto c0 = std::make_shared<QuasicubeWitness>(witness_from_json(j["child0"]));
  auto c1 = std::make_shared<QuasicubeWitness>(witness_from_json(j["child1"]));
  const int dim = c0->dim() + 1;
  return QuasicubeWitness(dim, x0, x1, std::move(c0), std::move(c1));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void to_json(nlohmann::json& j, const PointSet& s) {
  j = nlohmann::json::array();
  for (const auto& p : s.points()) {
    nlohmann::json pt = nlohmann::json::array();
    for (Coord c : p) pt.push_back(c);
    j.push_back(std::move(pt));
  }
}

void to_json(nlohmann::json& j, const WeightFn& f) {
  j = nlohmann::json::object();
  for (const auto& [n, v] : f.values()) j[std::to_string(n)] = v;
}

void to_json(nlohmann::json& j, const QuasicubeWitness& w) {
  j = nlohmann::json::object();
  j["x0"] = w.x0();
  j["x1"] = w.x1();
  if (w.dim() > 1) {
    j["child0"] = w.child0();
    j["child1"] = w.child1();
  }
}

void to_json(nlohmann::json& j, const PLReport& r) {
  j = nlohmann::json{{"lhs", r.lhs},     {"rhs", r.rhs}, {"slack", r.slack},
                     {"holds", r.holds}, {"p", r.p},     {"rel_tol", r.rel_tol}};
}

void to_json(nlohmann::json& j, const GridCheckReport& r) {
  j = nlohmann::json{{"holds", r.holds},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"allowance", r.allowance},
                     {"grid_used", r.grid_used},
                     {"refined", r.refined},
                     {"pointwise_checked", r.pointwise_checked},
                     {"pointwise_ok", r.pointwise_ok},
                     {"max_pointwise_excess", r.max_pointwise_excess}};
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json::object();
  j["lhs"] = r.lhs;
  j["lhs_sq"] = r.lhs_sq.str();
  j["rhs_sq"] = r.rhs_sq.str();
  j["holds"] = r.holds;
  j["equality"] = r.equality;
  put_rational_opt(j, "ratio_sq", r.ratio_sq);
}

void to_json(nlohmann::json& j, const TraceStep& s) {
  j = nlohmann::json::object();
  j["name"] = s.name;
  j["exact"] = s.exact;
  j["holds"] = s.holds;
  j["lhs"] = s.lhs;
  j["rhs"] = s.rhs;
  if (!s.note.empty()) j["note"] = s.note;
}

void to_json(nlohmann::json& j, const ProofTrace& t) {
  j = nlohmann::json::object();
  j["dim"] = t.dim;
  j["branch"] = branch_name(t.branch);
  j["q"] = t.q;
  j["label"] = t.label;
  j["a_table"] = table_json(t.a_table);
  j["b_table"] = table_json(t.b_table);
  j["u_table"] = table_json(t.u_table);
  if (t.branch == TraceBranch::foliation_qgt1) {
    j["r_star"] = t.r_star;
    j["s_star"] = t.s_star;
  } else {
    j["p"] = t.p;
    j["a_weights"] = t.a_weights;
    j["b_weights"] = t.b_weights;
    if (t.pl) j["pl"] = *t.pl;
  }
  j["steps"] = t.steps;
  j["children"] = t.children;
  j["lhs_sq"] = t.lhs_sq.str();
  j["bound_sq"] = t.bound_sq.str();
  j["valid"] = t.valid;
}

void to_json(nlohmann::json& j, const ScanInstance& i) {
  j = nlohmann::json::object();
  j["index"] = i.index;
  j["a"] = i.a;
  j["b"] = i.b;
  j["u"] = i.u;
}

void to_json(nlohmann::json& j, const ScanSummary& s) {
  j = nlohmann::json::object();
  j["num_a"] = s.num_a;
  j["num_b"] = s.num_b;
  j["num_u"] = s.num_u;
  j["instances"] = s.instances;
  j["checked"] = s.checked;
  j["violations"] = s.violations;
  j["equalities"] = s.equalities;
  put_rational_opt(j, "min_ratio_sq", s.min_ratio_sq);
  if (s.min_instance)
    j["min_instance"] = *s.min_instance;
  else
    j["min_instance"] = nullptr;
  j["violation_instances"] = s.violation_instances;
  j["equality_instances"] = s.equality_instances;
  j["traces_run"] = s.traces_run;
  j["trace_invalid"] = s.trace_invalid;
  j["trace_bound_violations"] = s.trace_bound_violations;
}

void to_json(nlohmann::json& j, const TrajectoryEntry& e) {
  j = nlohmann::json::object();
  j["step"] = e.step;
  put_rational(j, "ratio_sq", e.ratio_sq);
}

void to_json(nlohmann::json& j, const SearchResult& r) {
  j = nlohmann::json::object();
  j["best"] = r.best;
  j["best_report"] = r.best_report;
  put_rational(j, "best_ratio_sq", r.best_ratio_sq);
  j["trajectory"] = r.trajectory;
  j["proposals"] = r.proposals;
  j["accepted"] = r.accepted;
}

}  // namespace qcube

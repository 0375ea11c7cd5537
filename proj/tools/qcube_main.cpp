// qcube: sumset, max-convolution and quasicube toolbox.
//
// Exit codes: 0 = success and every requested check holds; 2 = a
// mathematical check failed (predicate false, inequality violated, trace
// invalid); 1 = usage or input error (unknown flag, malformed file, budget
// refusal), each with its own message on stderr.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qcube/io.hpp"
#include "qcube/lattice.hpp"
#include "qcube/maxconv.hpp"
#include "qcube/quasicube.hpp"
#include "qcube/scan.hpp"
#include "qcube/settings.hpp"
#include "qcube/verifier.hpp"

namespace {

using namespace qcube;
using nlohmann::json;

// ---------------------------------------------------------------- helpers

[[noreturn]] void usage_error(const std::string& msg) {
  throw std::invalid_argument(msg);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
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

Coord parse_coord_arg(const std::string& tok, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    usage_error(std::string(what) + ": bad integer '" + tok + "'");
  }
  if (pos != tok.size()) usage_error(std::string(what) + ": bad integer '" + tok + "'");
  return static_cast<Coord>(v);
}

// "x0..x1[,y0..y1,...]"; with dim > 0 a single range replicates to a cube.
Box parse_box_spec(const std::string& spec, int dim) {
  std::vector<std::pair<Coord, Coord>> bounds;
  for (const std::string& part : split(spec, ',')) {
    const std::string g = trim(part);
    const std::size_t p = g.find("..");
    if (p == std::string::npos)
      usage_error("box: range '" + g + "' must be of the form lo..hi");
    const Coord lo = parse_coord_arg(trim(g.substr(0, p)), "box");
    const Coord hi = parse_coord_arg(trim(g.substr(p + 2)), "box");
    if (lo > hi) usage_error("box: empty range '" + g + "'");
    bounds.emplace_back(lo, hi);
  }
  if (dim > 0) {
    if (bounds.size() == 1 && dim > 1)
      bounds.assign(static_cast<std::size_t>(dim), bounds[0]);
    else if (static_cast<int>(bounds.size()) != dim)
      usage_error("box: got " + std::to_string(bounds.size()) + " ranges but --dim is " +
                  std::to_string(dim));
  }
  return Box{std::move(bounds)};
}

// --a/--b/--u accept a file path or an inline literal.
std::string load_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_text_file(arg);
  return arg;
}

PointSet point_set_arg(const std::string& arg, int dim) {
  return parse_point_set(load_arg(arg), dim);
}

WeightFn weight_fn_arg(const std::string& arg) { return parse_weight_fn(load_arg(arg)); }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

const char* branch_name(TraceBranch b) {
  switch (b) {
    case TraceBranch::base_d1: return "base_d1";
    case TraceBranch::fibering_q1: return "fibering_q1";
    case TraceBranch::foliation_qgt1: return "foliation_qgt1";
  }
  return "unknown";
}

// Points on one line: "0 0; 0 1; 1 0".
std::string condense(const PointSet& s) {
  std::ostringstream out;
  bool first_pt = true;
  for (const auto& p : s.points()) {
    if (!first_pt) out << "; ";
    first_pt = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << p[i];
    }
  }
  return out.str();
}

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string render_kv(const std::string& title, const Rows& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream out;
  out << title << "\n";
  for (const auto& r : rows)
    out << "  " << std::left << std::setw(static_cast<int>(w)) << r.first << "  " << r.second
        << "\n";
  return out.str();
}

// ------------------------------------------------------------- csv output

bool csv_needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_escape(const std::string& s) {
  if (!csv_needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void flatten_json(const json& j, const std::string& prefix, Rows& out) {
  if (j.is_object()) {
    if (j.empty()) {
      out.emplace_back(prefix, "{}");
      return;
    }
    for (const auto& [k, v] : j.items())
      flatten_json(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    bool structured = false;
    for (const auto& e : j)
      if (e.is_object() || e.is_array()) structured = true;
    if (!structured || j.empty()) {
      out.emplace_back(prefix, j.dump());
    } else {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string render_csv(const json& j) {
  Rows rows;
  flatten_json(j, "", rows);
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [k, v] : rows) out << csv_escape(k) << ',' << csv_escape(v) << "\n";
  return out.str();
}

// ----------------------------------------------------------- emit helpers

struct Output {
  std::string format = "json";  // json | text | csv
  std::string out_path;         // empty = stdout
};

void write_out(const Output& o, const std::string& payload) {
  if (o.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) usage_error("cannot open output file: " + o.out_path);
  f << payload;
}

// Emits `j` (json/csv) or the lazily built text rendering.
template <typename TextFn>
void emit(const Output& o, const json& j, TextFn&& text) {
  if (o.format == "json")
    write_out(o, j.dump(2) + "\n");
  else if (o.format == "csv")
    write_out(o, render_csv(j));
  else
    write_out(o, text());
}

// -------------------------------------------------------- text renderings

std::string pl_text(const PLReport& r) {
  return render_kv("weighted PL check", {{"p", fmt_double(r.p)},
                                         {"lhs", fmt_double(r.lhs)},
                                         {"rhs", fmt_double(r.rhs)},
                                         {"slack", fmt_double(r.slack)},
                                         {"rel_tol", fmt_double(r.rel_tol)},
                                         {"holds", yesno(r.holds)}});
}

std::string grid_text(const std::string& title, const GridCheckReport& r) {
  return render_kv(title, {{"lhs", fmt_double(r.lhs)},
                           {"rhs", fmt_double(r.rhs)},
                           {"allowance", fmt_double(r.allowance)},
                           {"grid_used", std::to_string(r.grid_used)},
                           {"refined", yesno(r.refined)},
                           {"pointwise_checked", std::to_string(r.pointwise_checked)},
                           {"pointwise_ok", yesno(r.pointwise_ok)},
                           {"holds", yesno(r.holds)}});
}

std::string check_text(const CheckReport& r) {
  Rows rows = {{"|A+B+U|", std::to_string(r.lhs)},
               {"lhs_sq", r.lhs_sq.str()},
               {"rhs_sq", r.rhs_sq.str()},
               {"holds", yesno(r.holds)},
               {"equality", yesno(r.equality)}};
  if (r.ratio_sq)
    rows.emplace_back("ratio_sq",
                      r.ratio_sq->str() + " (" + fmt_double(r.ratio_sq->convert_to<double>()) + ")");
  return render_kv("sumset bound check", rows);
}

void trace_text_rec(const ProofTrace& t, int depth, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << t.label << " [" << branch_name(t.branch) << "]";
  if (t.branch != TraceBranch::foliation_qgt1) out << " p=" << fmt_double(t.p);
  out << "\n";
  for (const auto& s : t.steps) {
    out << pad << "  " << (s.holds ? "[ok]  " : "[FAIL]") << ' ' << s.name
        << (s.exact ? " (exact)" : "") << ": " << fmt_double(s.lhs) << " >= " << fmt_double(s.rhs);
    if (!s.note.empty()) out << "   # " << s.note;
    out << "\n";
  }
  for (const auto& c : t.children) trace_text_rec(c, depth + 1, out);
}

std::string trace_text(const ProofTrace& t) {
  std::ostringstream out;
  trace_text_rec(t, 0, out);
  out << "valid: " << yesno(t.valid) << "\n";
  return out.str();
}

std::string scan_text(const ScanSummary& s) {
  Rows rows = {{"candidates A", std::to_string(s.num_a)},
               {"candidates B", std::to_string(s.num_b)},
               {"candidates U", std::to_string(s.num_u)},
               {"instances", std::to_string(s.instances)},
               {"checked", std::to_string(s.checked)},
               {"violations", std::to_string(s.violations)},
               {"equalities", std::to_string(s.equalities)}};
  if (s.min_ratio_sq)
    rows.emplace_back("min ratio_sq", s.min_ratio_sq->str() + " (" +
                                          fmt_double(s.min_ratio_sq->convert_to<double>()) + ")");
  if (s.min_instance) {
    rows.emplace_back("min A", condense(s.min_instance->a));
    rows.emplace_back("min B", condense(s.min_instance->b));
    rows.emplace_back("min U", condense(s.min_instance->u));
  }
  if (s.traces_run) {
    rows.emplace_back("traces run", std::to_string(s.traces_run));
    rows.emplace_back("traces invalid", std::to_string(s.trace_invalid));
    rows.emplace_back("trace bound violations", std::to_string(s.trace_bound_violations));
  }
  return render_kv("scan summary", rows);
}

std::string search_text(const SearchResult& r) {
  Rows rows = {{"best ratio_sq", r.best_ratio_sq.str() + " (" +
                                     fmt_double(r.best_ratio_sq.convert_to<double>()) + ")"},
               {"found at step", std::to_string(r.best.index)},
               {"A", condense(r.best.a)},
               {"B", condense(r.best.b)},
               {"U", condense(r.best.u)},
               {"proposals", std::to_string(r.proposals)},
               {"accepted", std::to_string(r.accepted)},
               {"holds", yesno(r.best_report.holds)}};
  std::string out = render_kv("extremal search", rows);
  out += "trajectory (step, ratio_sq):\n";
  for (const auto& e : r.trajectory)
    out += "  " + std::to_string(e.step) + "  " + e.ratio_sq.str() + "\n";
  return out;
}

std::string point_set_text(const PointSet& s) { return format_point_set_text(s); }

json point_set_report(const PointSet& s) {
  json j;
  j["dim"] = s.dim();
  j["size"] = s.size();
  j["points"] = s;
  return j;
}

// ------------------------------------------------------------ subcommands

struct Cli {
  Settings cfg;
  Output out;
  int dim = 0;  // 0 = infer from input

  std::string a_arg, b_arg, u_arg, set_arg;
  std::string box_arg, u_box_arg;
  double p = 0.5;
  bool lifted = false;
  bool require_quasicube = true;
  bool canonical = false;
  bool count_only = false;
  bool permutations = false;
  bool run_traces = false;
  std::uint64_t steps = 1000;
  std::size_t max_a = SIZE_MAX, max_b = SIZE_MAX, max_u = SIZE_MAX;
  std::size_t search_max_a = 8, search_max_b = 8, search_max_u = 4;
};

int run_sumset(Cli& c) {
  const PointSet a = point_set_arg(c.a_arg, c.dim);
  const PointSet b = point_set_arg(c.b_arg, c.dim);
  PointSet s = sumset(a, b);
  if (!c.u_arg.empty()) s = sumset(s, point_set_arg(c.u_arg, c.dim));
  emit(c.out, point_set_report(s), [&] { return point_set_text(s); });
  return 0;
}

int run_maxconv(Cli& c) {
  const WeightFn a = weight_fn_arg(c.a_arg);
  const WeightFn b = weight_fn_arg(c.b_arg);
  const WeightFn r = max_convolve(a, b);
  json j;
  j["size"] = r.values().size();
  j["values"] = r;
  emit(c.out, j, [&] {
    Rows rows;
    for (const auto& [n, v] : r.values()) rows.emplace_back(std::to_string(n), fmt_double(v));
    return render_kv("max-convolution", rows);
  });
  return 0;
}

int run_check_pl(Cli& c) {
  const WeightFn a = weight_fn_arg(c.a_arg);
  const WeightFn b = weight_fn_arg(c.b_arg);
  const PLReport rep = check_weighted_pl(a, b, c.p, c.cfg.rel_tol);
  bool all_hold = rep.holds;
  json j = rep;
  std::string extra;
  if (c.lifted) {
    const double lambda = lambda_of_p(c.p);
    const GridCheckReport star = verify_lifted_integral_bound(a, b, c.p, c.cfg.grid_per_cell);
    const GridCheckReport cont = verify_continuous_pl(a, b, lambda, c.cfg.grid_per_cell);
    j["lambda"] = lambda;
    j["lifted_integral_bound"] = star;
    j["continuous_pl"] = cont;
    all_hold = all_hold && star.holds && cont.holds;
    extra = grid_text("lifted integral bound", star) + grid_text("continuous PL", cont);
  }
  emit(c.out, j, [&] { return pl_text(rep) + extra; });
  return all_hold ? 0 : 2;
}

int run_check_theorem(Cli& c) {
  const PointSet a = point_set_arg(c.a_arg, c.dim);
  const PointSet b = point_set_arg(c.b_arg, c.dim);
  const PointSet u = point_set_arg(c.u_arg, c.dim);
  const CheckReport rep = check_theorem(a, b, u, c.require_quasicube);
  emit(c.out, json(rep), [&] { return check_text(rep); });
  return rep.holds ? 0 : 2;
}

int run_trace(Cli& c) {
  const PointSet a = point_set_arg(c.a_arg, c.dim);
  const PointSet b = point_set_arg(c.b_arg, c.dim);
  const PointSet u = point_set_arg(c.u_arg, c.dim);
  const ProofTrace tr = proof_trace(a, b, u, c.cfg.rel_tol);
  emit(c.out, json(tr), [&] { return trace_text(tr); });
  return tr.valid ? 0 : 2;
}

int run_scan(Cli& c) {
  ScanOptions opt;
  opt.box = parse_box_spec(c.box_arg, c.dim);
  opt.max_a = c.max_a;
  opt.max_b = c.max_b;
  opt.max_u = c.max_u;
  if (!c.u_arg.empty()) {
    opt.u_source = USource::quasicube_subsets;
    opt.u_quasicube = point_set_arg(c.u_arg, opt.box.dim());
  } else {
    opt.u_source = USource::contained_in_box;
    opt.u_box = c.u_box_arg.empty() ? opt.box : parse_box_spec(c.u_box_arg, opt.box.dim());
  }
  opt.budget = c.cfg.budget;
  opt.workers = c.cfg.workers;
  opt.max_equality_report = c.cfg.max_equality_report;
  opt.run_traces = c.run_traces;
  opt.rel_tol = c.cfg.rel_tol;
  const ScanSummary s = exhaustive_scan(opt);
  emit(c.out, json(s), [&] { return scan_text(s); });
  const bool bad = s.violations > 0 || s.trace_invalid > 0 || s.trace_bound_violations > 0;
  return bad ? 2 : 0;
}

int run_search(Cli& c) {
  SearchOptions opt;
  opt.box = parse_box_spec(c.box_arg, c.dim);
  opt.steps = c.steps;
  opt.seed = c.cfg.seed;
  opt.max_a = c.search_max_a;
  opt.max_b = c.search_max_b;
  opt.max_u = c.search_max_u;
  const SearchResult r = extremal_search(opt);
  emit(c.out, json(r), [&] { return search_text(r); });
  return r.best_report.holds ? 0 : 2;
}

int run_quasicube_is(Cli& c) {
  const PointSet s = point_set_arg(c.set_arg, c.dim);
  const std::optional<QuasicubeWitness> w = is_quasicube(s);
  json j;
  j["is_quasicube"] = w.has_value();
  j["witness"] = w ? json(*w) : json(nullptr);
  emit(c.out, j, [&] { return std::string(w ? "true" : "false") + "\n"; });
  return w ? 0 : 2;
}

int run_quasicube_contains(Cli& c) {
  const PointSet s = point_set_arg(c.set_arg, c.dim);
  json j;
  bool ok = false;
  std::string text;
  if (c.permutations) {
    const auto pc = contained_in_quasicube_permuted(s);
    ok = pc.has_value();
    j["contained"] = ok;
    if (pc) {
      j["permutation"] = pc->permutation;
      j["witness"] = pc->witness;
      j["quasicube"] = materialize(pc->witness);
      text = "true (after permutation)\n" + point_set_text(materialize(pc->witness));
    } else {
      j["permutation"] = nullptr;
      j["witness"] = nullptr;
      j["quasicube"] = nullptr;
      text = "false\n";
    }
  } else {
    const auto w = contained_in_quasicube(s);
    ok = w.has_value();
    j["contained"] = ok;
    j["witness"] = w ? json(*w) : json(nullptr);
    j["quasicube"] = w ? json(materialize(*w)) : json(nullptr);
    text = ok ? "true\n" + point_set_text(materialize(*w)) : "false\n";
  }
  emit(c.out, j, [&] { return text; });
  return ok ? 0 : 2;
}

int run_quasicube_enumerate(Cli& c) {
  const Box box = parse_box_spec(c.box_arg, c.dim);
  if (c.count_only) {
    std::uint64_t n = 0;
    if (c.canonical) {
      enumerate_quasicubes(box, true, [&](const QuasicubeWitness&) {
        ++n;
        return true;
      });
    } else {
      n = count_quasicubes_in_box(box);
    }
    json j;
    j["count"] = n;
    emit(c.out, j, [&] { return "count: " + std::to_string(n) + "\n"; });
    return 0;
  }
  json list = json::array();
  std::vector<std::string> lines;
  enumerate_quasicubes(box, c.canonical, [&](const QuasicubeWitness& w) {
    const PointSet pts = materialize(w);
    list.push_back(pts);
    lines.push_back(condense(pts));
    return true;
  });
  json j;
  j["count"] = list.size();
  j["quasicubes"] = std::move(list);
  emit(c.out, j, [&] {
    std::string out = "count: " + std::to_string(lines.size()) + "\n";
    for (const auto& l : lines) out += l + "\n";
    return out;
  });
  return 0;
}

// ------------------------------------------------------------------ main

int run(int argc, char** argv) {
  Cli c;

  // The config file must be applied before flag binding so flags override it.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc)
      c.cfg = parse_settings(read_text_file(argv[i + 1]), c.cfg);
    else if (arg.rfind("--config=", 0) == 0)
      c.cfg = parse_settings(read_text_file(arg.substr(9)), c.cfg);
  }

  CLI::App app{"sumset bounds, quasicubes and max-convolution toolbox"};
  app.require_subcommand(0, 1);
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_flag("--print-config", print_config, "print effective settings and exit");

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--format", c.out.format, "output format")
        ->check(CLI::IsMember({"json", "text", "csv"}))
        ->capture_default_str();
    sc->add_option("--out", c.out.out_path, "write the report to a file instead of stdout");
  };
  auto add_dim = [&](CLI::App* sc) {
    sc->add_option("--dim", c.dim, "expected dimension (0 = infer)")
        ->check(CLI::Range(0, 64));
  };

  CLI::App* sumset_cmd = app.add_subcommand("sumset", "compute A + B (+ U)");
  sumset_cmd->add_option("--a", c.a_arg, "point set (file or inline)")->required();
  sumset_cmd->add_option("--b", c.b_arg, "point set (file or inline)")->required();
  sumset_cmd->add_option("--u", c.u_arg, "optional third point set");
  add_dim(sumset_cmd);
  add_common(sumset_cmd);

  CLI::App* maxconv_cmd = app.add_subcommand("maxconv", "max-convolution of two weight functions");
  maxconv_cmd->add_option("--a", c.a_arg, "weight fn (file, inline n:v,... or JSON)")->required();
  maxconv_cmd->add_option("--b", c.b_arg, "weight fn (file, inline n:v,... or JSON)")->required();
  add_common(maxconv_cmd);

  CLI::App* checkpl_cmd =
      app.add_subcommand("check-pl", "weighted discrete Prekopa-Leindler check");
  checkpl_cmd->add_option("--a", c.a_arg, "weight fn")->required();
  checkpl_cmd->add_option("--b", c.b_arg, "weight fn")->required();
  checkpl_cmd->add_option("--p", c.p, "weight in [0,1]")->required()->check(CLI::Range(0.0, 1.0));
  checkpl_cmd->add_flag("--lifted", c.lifted,
                        "also run the lifted-class grid verifications (needs 0 < p < 1)");
  checkpl_cmd->add_option("--rel-tol", c.cfg.rel_tol, "relative tolerance")
      ->check(CLI::PositiveNumber);
  checkpl_cmd->add_option("--grid", c.cfg.grid_per_cell, "grid points per unit cell")
      ->check(CLI::Range(2, 1 << 20));
  add_common(checkpl_cmd);

  CLI::App* checkth_cmd = app.add_subcommand("check-theorem", "exact sumset bound check");
  checkth_cmd->add_option("--a", c.a_arg, "point set")->required();
  checkth_cmd->add_option("--b", c.b_arg, "point set")->required();
  checkth_cmd->add_option("--u", c.u_arg, "point set")->required();
  checkth_cmd->add_flag("--require-quasicube,!--no-require-quasicube", c.require_quasicube,
                        "require U to fit inside a quasicube (default on)");
  add_dim(checkth_cmd);
  add_common(checkth_cmd);

  CLI::App* trace_cmd = app.add_subcommand("trace", "structured replay of the inductive proof");
  trace_cmd->add_option("--a", c.a_arg, "point set")->required();
  trace_cmd->add_option("--b", c.b_arg, "point set")->required();
  trace_cmd->add_option("--u", c.u_arg, "point set")->required();
  trace_cmd->add_option("--rel-tol", c.cfg.rel_tol, "tolerance for the floating steps")
      ->check(CLI::PositiveNumber);
  add_dim(trace_cmd);
  add_common(trace_cmd);

  CLI::App* scan_cmd = app.add_subcommand("scan", "exhaustive scan of a candidate space");
  scan_cmd->add_option("--box", c.box_arg, "ambient box x0..x1[,y0..y1,...]")->required();
  scan_cmd->add_option("--max-a", c.max_a, "max |A|");
  scan_cmd->add_option("--max-b", c.max_b, "max |B|");
  scan_cmd->add_option("--max-u", c.max_u, "max |U|");
  scan_cmd->add_option("--u", c.u_arg, "pin U candidates to subsets of this quasicube");
  scan_cmd->add_option("--u-box", c.u_box_arg, "box for U candidates (default: --box)");
  scan_cmd->add_flag("--traces", c.run_traces, "replay the proof trace on every instance");
  scan_cmd->add_option("--budget", c.cfg.budget, "refuse scans above this instance estimate");
  scan_cmd->add_option("--workers", c.cfg.workers, "worker threads")->check(CLI::Range(1, 1024));
  scan_cmd->add_option("--rel-tol", c.cfg.rel_tol, "tolerance for trace replay")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--max-equality-report", c.cfg.max_equality_report,
                       "cap on reported instance lists");
  add_dim(scan_cmd);
  add_common(scan_cmd);

  CLI::App* search_cmd = app.add_subcommand("search", "randomized extremal instance search");
  search_cmd->add_option("--box", c.box_arg, "ambient box x0..x1[,y0..y1,...]")->required();
  search_cmd->add_option("--steps", c.steps, "mutation steps");
  search_cmd->add_option("--seed", c.cfg.seed, "RNG seed (fixed seed => identical output)");
  search_cmd->add_option("--max-a", c.search_max_a, "max |A|")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-b", c.search_max_b, "max |B|")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-u", c.search_max_u, "max |U|")->check(CLI::PositiveNumber);
  add_dim(search_cmd);
  add_common(search_cmd);

  CLI::App* qc_cmd = app.add_subcommand("quasicube", "recognition, containment, enumeration");
  qc_cmd->require_subcommand(1);
  CLI::App* qc_is = qc_cmd->add_subcommand("is", "is the set a quasicube?");
  qc_is->add_option("--set", c.set_arg, "point set")->required();
  add_dim(qc_is);
  add_common(qc_is);
  CLI::App* qc_contains = qc_cmd->add_subcommand("contains", "does some quasicube contain the set?");
  qc_contains->add_option("--set", c.set_arg, "point set")->required();
  qc_contains->add_flag("--permutations", c.permutations,
                        "also try coordinate permutations of the set");
  add_dim(qc_contains);
  add_common(qc_contains);
  CLI::App* qc_enum = qc_cmd->add_subcommand("enumerate", "all quasicubes inside a box");
  qc_enum->add_option("--box", c.box_arg, "box x0..x1[,y0..y1,...]")->required();
  qc_enum->add_flag("--canonical", c.canonical, "one placement per translation class");
  qc_enum->add_flag("--count", c.count_only, "print only the count");
  add_dim(qc_enum);
  add_common(qc_enum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (print_config) {
    write_out(c.out, json(c.cfg).dump(2) + "\n");
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "no subcommand given (see --help)\n";
    return 1;
  }

  if (sumset_cmd->parsed()) return run_sumset(c);
  if (maxconv_cmd->parsed()) return run_maxconv(c);
  if (checkpl_cmd->parsed()) return run_check_pl(c);
  if (checkth_cmd->parsed()) return run_check_theorem(c);
  if (trace_cmd->parsed()) return run_trace(c);
  if (scan_cmd->parsed()) return run_scan(c);
  if (search_cmd->parsed()) return run_search(c);
  if (qc_cmd->parsed()) {
    if (qc_is->parsed()) return run_quasicube_is(c);
    if (qc_contains->parsed()) return run_quasicube_contains(c);
    if (qc_enum->parsed()) return run_quasicube_enumerate(c);
  }
  std::cerr << "no subcommand given (see --help)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "budget refused: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "qcube/maxconv.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcube {

WeightFn::WeightFn(const std::map<Coord, double>& entries) {
  for (const auto& [n, v] : entries) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("WeightFn: values must be finite and >= 0");
    if (v > 0.0) vals_.emplace(n, v);
  }
}

WeightFn WeightFn::delta(Coord n, double value) { return WeightFn({{n, value}}); }

WeightFn WeightFn::sqrt_counts(const std::map<Coord, std::size_t>& counts) {
  std::map<Coord, double> entries;
  for (const auto& [n, c] : counts)
    if (c > 0) entries.emplace(n, std::sqrt(static_cast<double>(c)));
  return WeightFn(entries);
}

double WeightFn::at(Coord n) const {
  auto it = vals_.find(n);
  return it == vals_.end() ? 0.0 : it->second;
}

double WeightFn::max_value() const {
  double m = 0.0;
  for (const auto& [n, v] : vals_) m = std::max(m, v);
  return m;
}

WeightFn WeightFn::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("WeightFn::scaled: factor must be finite and >= 0");
  std::map<Coord, double> entries;
  for (const auto& [n, v] : vals_) entries.emplace(n, c * v);
  return WeightFn(entries);
}

WeightFn WeightFn::shifted(Coord k) const {
  std::map<Coord, double> entries;
  for (const auto& [n, v] : vals_) entries.emplace(n + k, v);
  return WeightFn(entries);
}

namespace {

// Dense view of a WeightFn over its support interval.
struct DenseFn {
  Coord lo = 0;
  std::vector<double> v;  // v[i] = value at lo + i

  explicit DenseFn(const WeightFn& f) {
    if (f.empty()) return;
    lo = f.min_support();
    v.assign(static_cast<std::size_t>(f.max_support() - lo + 1), 0.0);
    for (const auto& [n, val] : f.values()) v[static_cast<std::size_t>(n - lo)] = val;
  }
  double at(Coord n) const {
    if (v.empty() || n < lo || n >= lo + static_cast<Coord>(v.size())) return 0.0;
    return v[static_cast<std::size_t>(n - lo)];
  }
};

}  // namespace

WeightFn max_convolve(const WeightFn& a, const WeightFn& b) {
  if (a.empty() || b.empty()) return WeightFn();
  DenseFn da(a);
  std::map<Coord, double> out;
  const Coord lo = a.min_support() + b.min_support();
  const Coord hi = a.max_support() + b.max_support();
  for (Coord n = lo; n <= hi; ++n) {
    double best = 0.0;
    for (const auto& [m, bv] : b.values()) best = std::max(best, da.at(n - m) * bv);
    if (best > 0.0) out.emplace(n, best);
  }
  return WeightFn(out);
}

double l2_norm(const WeightFn& a) {
  double sq = 0.0;
  for (const auto& [n, v] : a.values()) sq += v * v;
  return std::sqrt(sq);
}

double weighted_pl_sum(const WeightFn& a, const WeightFn& b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("weighted_pl_sum: p outside [0,1]");
  WeightFn c = max_convolve(a, b);
  if (c.empty()) return 0.0;
  double sum = 0.0;
  for (Coord n = c.min_support(); n <= c.max_support() + 1; ++n)
    sum += std::max(p * c.at(n), (1.0 - p) * c.at(n - 1));
  return sum;
}

PLReport check_weighted_pl(const WeightFn& a, const WeightFn& b, double p, double rel_tol) {
  PLReport r;
  r.p = p;
  r.rel_tol = rel_tol;
  r.lhs = weighted_pl_sum(a, b, p);
  r.rhs = l2_norm(a) * l2_norm(b);
  r.slack = r.lhs - r.rhs;
  r.holds = r.lhs >= r.rhs * (1.0 - rel_tol);
  return r;
}

double lambda_of_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lambda_of_p: p must be in (0,1)");
  return std::log(1.0 / p - 1.0);
}

double expm1_over_x(double x) {
  // Guarded series below 1e-4 keeps the lambda -> 0 limit exact.
  if (std::abs(x) < 1e-4) return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0;
  return std::expm1(x) / x;
}

double lifted_l2_sq(const WeightFn& a, double lambda) {
  double sq = 0.0;
  for (const auto& [n, v] : a.values()) sq += v * v;
  return expm1_over_x(2.0 * lambda) * sq;
}

double lifted_l2_sq_quadrature(const WeightFn& a, double lambda, int grid_per_cell) {
  if (grid_per_cell < 2) throw std::invalid_argument("lifted_l2_sq_quadrature: grid too coarse");
  const double g = static_cast<double>(grid_per_cell);
  double cell_factor = 0.0;
  for (int k = 0; k < grid_per_cell; ++k) {
    const double t = (k + 0.5) / g;
    cell_factor += std::exp(2.0 * lambda * t);
  }
  cell_factor /= g;
  double total = 0.0;
  for (const auto& [n, v] : a.values()) total += v * v * cell_factor;
  return total;
}

namespace {

// Grid evaluation of the max-convolution of two lifted functions.
//
// x runs over cell midpoints (k + 1/2)/G. y runs over midpoints of half
// cells, (j + 1/2)/(2G), twice as fine; within every contributing cell
// pair the product f(x-y) g(y) is constant in y, and the finer y grid is
// guaranteed to land inside each such interval, so the sampled value
// equals the true supremum on this function class (up to rounding).
// All positions are kept in integer units of 1/(4G).
struct LiftedGridConv {
  int grid;  // G
  double lambda;
  Coord a_lo = 0, a_hi = -1;  // support cells of a (empty if a_hi < a_lo)
  Coord b_lo = 0, b_hi = -1;
  std::vector<double> ftab;   // f at (a_lo*4G + i)/(4G)
  std::vector<double> gtab;   // g at y = b_lo + (m_off * 2G + j + 1/2)/(2G)

  LiftedGridConv(const WeightFn& a, const WeightFn& b, double lam, int g)
      : grid(g), lambda(lam) {
    const Coord q = 4 * static_cast<Coord>(grid);
    a_lo = a.min_support();
    a_hi = a.max_support();
    b_lo = b.min_support();
    b_hi = b.max_support();
    DenseFn da(a);
    const std::size_t fn = static_cast<std::size_t>((a_hi - a_lo + 1) * q + 1);
    ftab.resize(fn);
    for (std::size_t i = 0; i < fn; ++i) {
      const Coord pos = a_lo * q + static_cast<Coord>(i);
      const Coord cell = pos >= 0 ? pos / q : -((-pos + q - 1) / q);
      const double frac = static_cast<double>(pos - cell * q) / static_cast<double>(q);
      ftab[i] = da.at(cell) * std::exp(lambda * frac);
    }
    DenseFn db(b);
    const int half = 2 * grid;
    gtab.resize(static_cast<std::size_t>(b_hi - b_lo + 1) * static_cast<std::size_t>(half));
    std::size_t idx = 0;
    for (Coord m = b_lo; m <= b_hi; ++m) {
      const double bv = db.at(m);
      for (int j = 0; j < half; ++j)
        gtab[idx++] = bv * std::exp(lambda * (j + 0.5) / static_cast<double>(half));
    }
  }

  // f*g at x = n + (k + 1/2)/G, supremum restricted to the y grid.
  double conv_at(Coord n, int k) const {
    const Coord q = 4 * static_cast<Coord>(grid);
    const Coord x4 = n * q + 4 * static_cast<Coord>(k) + 2;
    const Coord f_base = a_lo * q;
    const Coord f_size = static_cast<Coord>(ftab.size());
    const int half = 2 * grid;
    double best = 0.0;
    std::size_t idx = 0;
    for (Coord m = b_lo; m <= b_hi; ++m) {
      for (int j = 0; j < half; ++j, ++idx) {
        const double gv = gtab[idx];
        if (gv == 0.0) continue;
        const Coord y4 = m * q + 2 * static_cast<Coord>(j) + 1;
        const Coord d = x4 - y4 - f_base;
        if (d < 0 || d >= f_size) continue;
        best = std::max(best, ftab[static_cast<std::size_t>(d)] * gv);
      }
    }
    return best;
  }
};

struct IntegralPieces {
  double integral = 0.0;
  std::size_t points = 0;
  bool pointwise_ok = true;
  double max_excess = 0.0;
};

// Midpoint integral of the grid-sampled f*g over its support cells.
// When `bound` is given, also checks f*g(n + t) <= e^{lambda t} bound(n)
// at every sample.
IntegralPieces integrate_conv(const LiftedGridConv& gc, const DenseFn* bound) {
  IntegralPieces out;
  const Coord lo = gc.a_lo + gc.b_lo;
  const Coord hi = gc.a_hi + gc.b_hi + 1;  // last cell of supp(f)+supp(g)
  const double g = static_cast<double>(gc.grid);
  for (Coord n = lo; n <= hi; ++n) {
    for (int k = 0; k < gc.grid; ++k) {
      const double v = gc.conv_at(n, k);
      out.integral += v / g;
      ++out.points;
      if (bound != nullptr && v > 0.0) {
        const double t = (k + 0.5) / g;
        const double cap = std::exp(gc.lambda * t) * bound->at(n);
        if (v > cap * (1.0 + 1e-9)) {
          out.pointwise_ok = false;
          if (cap > 0.0)
            out.max_excess = std::max(out.max_excess, v / cap - 1.0);
          else
            out.max_excess = std::max(out.max_excess, v);
        }
      }
    }
  }
  return out;
}

// Maximum cell oscillation of the sampled integrand; the grid sup itself is
// exact on this function class, so this headroom only has to cover the
// midpoint rule.
double grid_allowance(const WeightFn& a, const WeightFn& b, double lambda, int grid) {
  const double maxval = std::max(a.max_value(), b.max_value());
  return std::exp(std::abs(lambda)) * maxval * maxval / static_cast<double>(grid);
}

}  // namespace

GridCheckReport verify_lifted_integral_bound(const WeightFn& a, const WeightFn& b, double p,
                                             int grid_per_cell) {
  if (grid_per_cell < 2)
    throw std::invalid_argument("verify_lifted_integral_bound: grid too coarse");
  const double lambda = lambda_of_p(p);
  GridCheckReport r;
  r.grid_used = grid_per_cell;
  if (a.empty() || b.empty()) return r;  // both sides vanish

  const WeightFn c = max_convolve(a, b);
  // Per-cell cap max((a*b)(n), e^lambda (a*b)(n-1)) on the dense range.
  std::map<Coord, double> caps;
  double cap_sum = 0.0;
  for (Coord n = c.min_support(); n <= c.max_support() + 1; ++n) {
    const double cap = std::max(c.at(n), std::exp(lambda) * c.at(n - 1));
    caps[n] = cap;
    cap_sum += cap;
  }
  const WeightFn capfn(caps);
  const DenseFn dcaps(capfn);

  for (int pass = 0; pass < 2; ++pass) {
    const int g = pass == 0 ? grid_per_cell : 4 * grid_per_cell;
    LiftedGridConv gc(a, b, lambda, g);
    IntegralPieces pieces = integrate_conv(gc, &dcaps);
    r.lhs = pieces.integral;
    r.rhs = expm1_over_x(lambda) * cap_sum;
    r.allowance = grid_allowance(a, b, lambda, g);
    r.grid_used = g;
    r.refined = pass > 0;
    r.pointwise_checked = pieces.points;
    r.pointwise_ok = pieces.pointwise_ok;
    r.max_pointwise_excess = pieces.max_excess;
    r.holds = pieces.pointwise_ok && r.lhs <= r.rhs + r.allowance;
    if (r.holds) break;
  }
  return r;
}

GridCheckReport verify_continuous_pl(const WeightFn& a, const WeightFn& b, double lambda,
                                     int grid_per_cell) {
  if (grid_per_cell < 2) throw std::invalid_argument("verify_continuous_pl: grid too coarse");
  GridCheckReport r;
  r.grid_used = grid_per_cell;
  if (a.empty() || b.empty()) return r;  // 0 >= 0

  for (int pass = 0; pass < 2; ++pass) {
    const int g = pass == 0 ? grid_per_cell : 4 * grid_per_cell;
    LiftedGridConv gc(a, b, lambda, g);
    IntegralPieces pieces = integrate_conv(gc, nullptr);
    r.lhs = pieces.integral;
    r.rhs = 2.0 * std::sqrt(lifted_l2_sq(a, lambda) * lifted_l2_sq(b, lambda));
    r.allowance = grid_allowance(a, b, lambda, g);
    r.grid_used = g;
    r.refined = pass > 0;
    r.pointwise_checked = pieces.points;
    r.holds = r.lhs >= r.rhs - r.allowance;
    if (r.holds) break;
  }
  return r;
}

}  // namespace qcube

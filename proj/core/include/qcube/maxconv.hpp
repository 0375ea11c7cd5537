// Max-convolution over Z, L2 norms, the weighted Prekopa-Leindler sum,
// and numeric verification of the continuous-side identities on the
// piecewise-exponential lifted function class f(x) = e^{lambda*frac(x)} a(floor(x)).
#pragma once

#include <map>
#include <optional>

#include "qcube/lattice.hpp"

namespace qcube {

// Finitely supported function Z -> [0, inf). Zeros are dropped on
// construction, so every stored value is strictly positive.
class WeightFn {
 public:
  WeightFn() = default;
  explicit WeightFn(const std::map<Coord, double>& entries);

  static WeightFn delta(Coord n, double value = 1.0);
  // Weights |count|^{1/2}, the form the sumset argument feeds in.
  static WeightFn sqrt_counts(const std::map<Coord, std::size_t>& counts);

  double at(Coord n) const;
  const std::map<Coord, double>& values() const { return vals_; }
  bool empty() const { return vals_.empty(); }
  Coord min_support() const { return vals_.begin()->first; }
  Coord max_support() const { return vals_.rbegin()->first; }
  double max_value() const;

  WeightFn scaled(double c) const;
  WeightFn shifted(Coord k) const;

  friend bool operator==(const WeightFn& a, const WeightFn& b) { return a.vals_ == b.vals_; }

 private:
  std::map<Coord, double> vals_;
};

// (a *(max) b)(n) = max_m a(n - m) b(m).
WeightFn max_convolve(const WeightFn& a, const WeightFn& b);

double l2_norm(const WeightFn& a);

// sum_n max(p * (a*b)(n), (1-p) * (a*b)(n-1)) with * the max-convolution.
// p must lie in [0,1]; the endpoints degenerate to a plain sum.
double weighted_pl_sum(const WeightFn& a, const WeightFn& b, double p);

struct PLReport {
  double lhs = 0;    // weighted_pl_sum
  double rhs = 0;    // ||a||_2 ||b||_2
  double slack = 0;  // lhs - rhs
  bool holds = true;
  double p = 0;
  double rel_tol = 0;
};

// The weighted discrete Prekopa-Leindler inequality: lhs >= rhs for every
// input. holds is checked with relative tolerance; a false report means an
// implementation bug, not a counterexample.
PLReport check_weighted_pl(const WeightFn& a, const WeightFn& b, double p,
                           double rel_tol = 1e-9);

// lambda with p = 1/(e^lambda + 1); requires 0 < p < 1.
double lambda_of_p(double p);

// Closed form of the squared L2 norm of the lifted function:
// (e^{2 lambda} - 1) / (2 lambda) * ||a||_2^2, with the lambda -> 0 limit
// handled by a guarded series.
double lifted_l2_sq(const WeightFn& a, double lambda);

// Midpoint-rule quadrature of the same integral; independent cross-check
// route for the closed form.
double lifted_l2_sq_quadrature(const WeightFn& a, double lambda, int grid_per_cell);

// (e^x - 1) / x with a series guard near zero.
double expm1_over_x(double x);

struct GridCheckReport {
  bool holds = true;
  double lhs = 0;
  double rhs = 0;
  double allowance = 0;
  int grid_used = 0;
  bool refined = false;
  std::size_t pointwise_checked = 0;
  bool pointwise_ok = true;
  double max_pointwise_excess = 0;  // worst relative excess seen
};

// Checks the lifted-class integral bound
//   int f*g <= (e^lambda - 1)/lambda * sum_n max((a*b)(n), e^lambda (a*b)(n-1))
// with lambda = log(1/p - 1), by grid-sampled max-convolution and midpoint
// integration, and spot-checks the pointwise bound
//   f*g(n + t) <= e^{lambda t} max((a*b)(n), e^lambda (a*b)(n-1))
// at every grid point. Requires p in (0,1) and grid_per_cell >= 2.
// A failing check retries once at 4x the grid before reporting.
GridCheckReport verify_lifted_integral_bound(const WeightFn& a, const WeightFn& b,
                                             double p, int grid_per_cell = 64);

// Checks the one-dimensional Prekopa-Leindler inequality
//   int f*g >= 2 ||f||_2 ||g||_2
// for the lifted pair f, g at the given lambda. The y-supremum is restricted
// to grid points, which only weakens the left side, so a pass is sound.
// A failing check retries once at 4x the grid before reporting.
GridCheckReport verify_continuous_pl(const WeightFn& a, const WeightFn& b,
                                     double lambda, int grid_per_cell = 64);

}  // namespace qcube

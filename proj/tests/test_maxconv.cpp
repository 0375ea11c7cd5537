#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "qcube/maxconv.hpp"

using namespace qcube;
using doctest::Approx;

namespace {

WeightFn from_list(Coord start, std::initializer_list<double> vals) {
  std::map<Coord, double> m;
  Coord n = start;
  for (double v : vals) m[n++] = v;
  return WeightFn(m);
}

WeightFn random_fn(std::mt19937_64& rng, Coord lo, Coord hi) {
  std::uniform_int_distribution<int> sq(0, 64);
  std::map<Coord, double> m;
  for (Coord n = lo; n <= hi; ++n) {
    const int k = sq(rng);
    if (k > 0) m[n] = std::sqrt(static_cast<double>(k));
  }
  return WeightFn(m);
}

// Independent quadratic-loop route over the full support rectangle.
WeightFn naive_max_convolve(const WeightFn& a, const WeightFn& b) {
  if (a.empty() || b.empty()) return WeightFn();
  std::map<Coord, double> out;
  for (const auto& [x, av] : a.values())
    for (const auto& [y, bv] : b.values()) {
      double& slot = out[x + y];
      slot = std::max(slot, av * bv);
    }
  return WeightFn(out);
}

}  // namespace

TEST_SUITE("maxconv") {

TEST_CASE("weight functions drop zeros and reject bad values") {
  const WeightFn f(std::map<Coord, double>{{0, 1.0}, {1, 0.0}, {2, 0.5}});
  CHECK(f.values().size() == 2);
  CHECK(f.at(0) == 1.0);
  CHECK(f.at(1) == 0.0);  // outside support
  CHECK(f.at(2) == 0.5);
  CHECK(f.min_support() == 0);
  CHECK(f.max_support() == 2);
  CHECK(f.max_value() == 1.0);
  CHECK_THROWS_AS(WeightFn(std::map<Coord, double>{{0, -1.0}}), std::invalid_argument);
  CHECK(WeightFn().empty());

  const WeightFn d = WeightFn::delta(3, 2.0);
  CHECK(d.at(3) == 2.0);
  CHECK(d.values().size() == 1);

  const WeightFn s = WeightFn::sqrt_counts({{0, 4}, {1, 2}, {2, 0}});
  CHECK(s.at(0) == Approx(2.0));
  CHECK(s.at(1) == Approx(std::sqrt(2.0)));
  CHECK(s.values().size() == 2);
}

TEST_CASE("max_convolve examples") {
  const WeightFn delta0 = WeightFn::delta(0);
  CHECK(max_convolve(delta0, delta0) == delta0);

  const WeightFn ones01 = from_list(0, {1, 1});
  CHECK(max_convolve(ones01, ones01) == from_list(0, {1, 1, 1}));

  CHECK(max_convolve(WeightFn::delta(0, 2.0), WeightFn::delta(5, 3.0)) ==
        WeightFn::delta(5, 6.0));

  CHECK(max_convolve(WeightFn(), ones01).empty());
  CHECK(max_convolve(ones01, WeightFn()).empty());
}

TEST_CASE("max_convolve agrees with the naive double loop") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightFn a = random_fn(rng, -4, 4);
    const WeightFn b = random_fn(rng, -4, 4);
    CHECK(max_convolve(a, b) == naive_max_convolve(a, b));
  }
}

TEST_CASE("max_convolve monotonicity and covariance") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightFn a = random_fn(rng, -3, 3);
    const WeightFn b = random_fn(rng, -3, 3);
    if (a.empty() || b.empty()) continue;

    // Pointwise a <= a' gives (a * b) <= (a' * b).
    WeightFn bigger = a.scaled(1.5);
    const WeightFn c = max_convolve(a, b);
    const WeightFn c2 = max_convolve(bigger, b);
    for (const auto& [n, v] : c.values()) CHECK(c2.at(n) >= v - 1e-12);

    // Shifting a shifts the convolution.
    CHECK(max_convolve(a.shifted(3), b) == max_convolve(a, b).shifted(3));

    // Scaling is multiplicative.
    const WeightFn cs = max_convolve(a.scaled(2.0), b);
    for (const auto& [n, v] : c.values()) CHECK(cs.at(n) == Approx(2.0 * v));
  }
}

TEST_CASE("l2_norm examples") {
  CHECK(l2_norm(WeightFn::delta(0)) == 1.0);
  CHECK(l2_norm(from_list(0, {1, 1})) == Approx(std::sqrt(2.0)));
  CHECK(l2_norm(from_list(2, {3, 4})) == Approx(5.0));
  CHECK(l2_norm(WeightFn()) == 0.0);
}

TEST_CASE("weighted_pl_sum examples") {
  const WeightFn delta0 = WeightFn::delta(0);
  CHECK(weighted_pl_sum(delta0, delta0, 0.3) == Approx(1.0));
  const WeightFn ones01 = from_list(0, {1, 1});
  CHECK(weighted_pl_sum(ones01, ones01, 0.5) == Approx(2.0));
  CHECK(weighted_pl_sum(delta0, delta0, 1.0) == Approx(1.0));
  CHECK(weighted_pl_sum(delta0, delta0, 0.0) == Approx(1.0));
  CHECK_THROWS_AS(weighted_pl_sum(delta0, delta0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(weighted_pl_sum(delta0, delta0, 1.1), std::invalid_argument);
}

TEST_CASE("check_weighted_pl examples") {
  const WeightFn delta0 = WeightFn::delta(0);
  for (double p : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const PLReport r = check_weighted_pl(delta0, delta0, p);
    CHECK(r.lhs == Approx(1.0));
    CHECK(r.rhs == Approx(1.0));
    CHECK(r.slack == Approx(0.0));
    CHECK(r.holds);
  }

  const WeightFn ones01 = from_list(0, {1, 1});
  const PLReport r1 = check_weighted_pl(ones01, ones01, 0.5);
  CHECK(r1.lhs == Approx(2.0));
  CHECK(r1.rhs == Approx(2.0));
  CHECK(r1.holds);

  const PLReport r2 = check_weighted_pl(WeightFn::delta(0), from_list(0, {1, 1}), 0.5);
  CHECK(r2.lhs == Approx(1.5));
  CHECK(r2.rhs == Approx(std::sqrt(2.0)));
  CHECK(r2.holds);
}

TEST_CASE("weighted PL random property") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const WeightFn a = random_fn(rng, -8, 8);
    const WeightFn b = random_fn(rng, -8, 8);
    const double p = 0.1 * static_cast<double>(trial % 11);
    const PLReport r = check_weighted_pl(a, b, p);
    CHECK(r.holds);
    CHECK(r.lhs >= r.rhs * (1 - 1e-9));
  }
}

TEST_CASE("scaling leaves holds invariant") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const WeightFn a = random_fn(rng, -3, 3);
    const WeightFn b = random_fn(rng, -3, 3);
    if (a.empty() || b.empty()) continue;
    const double c = 3.25;
    CHECK(weighted_pl_sum(a.scaled(c), b, 0.3) == Approx(c * weighted_pl_sum(a, b, 0.3)));
    const PLReport r = check_weighted_pl(a, b, 0.3);
    const PLReport rs = check_weighted_pl(a.scaled(c), b, 0.3);
    CHECK(rs.holds == r.holds);
    CHECK(rs.rhs == Approx(c * r.rhs));
  }
}

TEST_CASE("p = 1/2 matches the symmetric max form") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightFn a = random_fn(rng, -4, 4);
    const WeightFn b = random_fn(rng, -4, 4);
    const WeightFn c = max_convolve(a, b);
    double sym = 0;
    if (!c.empty())
      for (Coord n = c.min_support(); n <= c.max_support() + 1; ++n)
        sym += std::max(c.at(n), c.at(n - 1));
    CHECK(weighted_pl_sum(a, b, 0.5) == Approx(0.5 * sym));
  }
}

TEST_CASE("lambda_of_p") {
  CHECK(lambda_of_p(0.5) == Approx(0.0));
  CHECK(lambda_of_p(1.0 / (std::exp(1.0) + 1.0)) == Approx(1.0));
  CHECK(lambda_of_p(0.25) == Approx(std::log(3.0)));
  CHECK_THROWS_AS(lambda_of_p(0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_of_p(1.0), std::invalid_argument);
  // Inverse relation p = 1 / (e^lambda + 1).
  for (double p : {0.1, 0.3, 0.7, 0.9})
    CHECK(1.0 / (std::exp(lambda_of_p(p)) + 1.0) == Approx(p));
}

TEST_CASE("expm1_over_x") {
  CHECK(expm1_over_x(0.0) == 1.0);
  CHECK(expm1_over_x(1.0) == Approx(std::expm1(1.0)));
  // Series and direct paths agree near the guard boundary.
  for (double x : {1e-5, 9.9e-5, 1.1e-4, 1e-3, -1e-5, -1e-3})
    CHECK(expm1_over_x(x) == Approx(std::expm1(x) / x).epsilon(1e-12));
}

TEST_CASE("lifted_l2_sq closed forms") {
  const WeightFn delta0 = WeightFn::delta(0);
  CHECK(lifted_l2_sq(delta0, 0.0) == Approx(1.0));
  CHECK(lifted_l2_sq(delta0, 1.0) == Approx((std::exp(2.0) - 1.0) / 2.0));
  CHECK(lifted_l2_sq(from_list(0, {1, 1}), 1.0) == Approx(std::exp(2.0) - 1.0));
  CHECK(lifted_l2_sq(WeightFn(), 2.0) == 0.0);
}

TEST_CASE("lifted_l2_sq agrees with quadrature") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightFn a = random_fn(rng, -5, 5);
    if (a.empty()) continue;
    const double lambda = lam(rng);
    const double closed = lifted_l2_sq(a, lambda);
    const double quad = lifted_l2_sq_quadrature(a, lambda, 256);
    CHECK(std::abs(closed - quad) <= 1e-4 * closed);
  }
}

TEST_CASE("lifted_l2_sq limit at lambda -> 0") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightFn a = random_fn(rng, -6, 6);
    if (a.empty()) continue;
    const double n2 = l2_norm(a) * l2_norm(a);
    CHECK(std::abs(lifted_l2_sq(a, 1e-8) - n2) <= 1e-6 * n2);
  }
}

TEST_CASE("lifted integral bound examples") {
  const WeightFn delta0 = WeightFn::delta(0);

  // p = 1/2 is handled through the small-lambda guarded path.
  const GridCheckReport r1 = verify_lifted_integral_bound(delta0, delta0, 0.5);
  CHECK(r1.holds);
  CHECK(r1.pointwise_ok);
  CHECK(r1.lhs <= r1.rhs + r1.allowance);

  const GridCheckReport r2 = verify_lifted_integral_bound(delta0, delta0, 0.25, 64);
  CHECK(r2.holds);
  CHECK(r2.pointwise_ok);
  CHECK(r2.pointwise_checked > 0);

  const GridCheckReport r3 = verify_lifted_integral_bound(delta0, WeightFn(), 0.3);
  CHECK(r3.holds);
  CHECK(r3.lhs == 0.0);
  CHECK(r3.rhs == 0.0);

  CHECK_THROWS_AS(verify_lifted_integral_bound(delta0, delta0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_lifted_integral_bound(delta0, delta0, 0.0, 64), std::invalid_argument);
}

TEST_CASE("continuous PL examples") {
  const WeightFn delta0 = WeightFn::delta(0);

  const GridCheckReport r1 = verify_continuous_pl(delta0, delta0, 0.0);
  CHECK(r1.holds);
  CHECK(r1.lhs == Approx(2.0).epsilon(1e-6));
  CHECK(r1.rhs == Approx(2.0));

  const GridCheckReport r2 = verify_continuous_pl(delta0, delta0, 1.0);
  CHECK(r2.holds);
  CHECK(r2.rhs == Approx(std::exp(2.0) - 1.0));

  const GridCheckReport r3 = verify_continuous_pl(delta0, WeightFn(), 1.0);
  CHECK(r3.holds);
  CHECK(r3.lhs == 0.0);
  CHECK(r3.rhs == 0.0);
}

TEST_CASE("grid verifications hold on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const WeightFn a = random_fn(rng, -3, 3);
    const WeightFn b = random_fn(rng, -3, 3);
    const double p = 0.1 + 0.1 * static_cast<double>(trial % 9);
    const GridCheckReport star = verify_lifted_integral_bound(a, b, p, 64);
    CHECK(star.holds);
    CHECK(star.pointwise_ok);
    const GridCheckReport pl = verify_continuous_pl(a, b, lambda_of_p(p), 64);
    CHECK(pl.holds);
  }
}

}  // TEST_SUITE

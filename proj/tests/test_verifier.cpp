#include <cmath>

#include "doctest.h"
#include "qcube/quasicube.hpp"
#include "qcube/verifier.hpp"
#include "test_util.hpp"

using namespace qcube;

namespace {

PointSet cube_set(int dim, Coord lo, Coord hi) {
  const Box b = Box::cube(dim, lo, hi);
  return PointSet(dim, b.cells());
}

bool all_steps_hold(const ProofTrace& t) {
  for (const auto& s : t.steps)
    if (!s.holds) return false;
  for (const auto& c : t.children)
    if (!all_steps_hold(c)) return false;
  return true;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("check_theorem worked examples") {
  const CheckReport r1 = check_theorem(make_set1({0}), make_set1({0}), make_set1({0, 1}));
  CHECK(r1.lhs == 2);
  CHECK(r1.lhs_sq == 4);
  CHECK(r1.rhs_sq == 4);
  CHECK(r1.holds);
  CHECK(r1.equality);
  REQUIRE(r1.ratio_sq.has_value());
  CHECK(*r1.ratio_sq == BigRational(1));

  const PointSet cube2 = cube_set(2, 0, 1);
  const CheckReport r2 = check_theorem(cube2, cube2, cube2);
  CHECK(r2.lhs == 16);
  CHECK(r2.lhs_sq == 256);
  CHECK(r2.rhs_sq == 256);
  CHECK(r2.equality);

  const PointSet origin2 = make_set(2, {{0, 0}});
  const CheckReport r3 = check_theorem(origin2, origin2, example_quasicube_2d());
  CHECK(r3.lhs == 4);
  CHECK(r3.lhs_sq == 16);
  CHECK(r3.rhs_sq == 16);
  CHECK(r3.equality);
}

TEST_CASE("check_theorem empty convention") {
  const CheckReport r = check_theorem(PointSet(1), make_set1({0}), make_set1({0, 1}));
  CHECK(r.lhs == 0);
  CHECK(r.lhs_sq == 0);
  CHECK(r.rhs_sq == 0);
  CHECK(r.holds);
  CHECK(r.equality);
  CHECK(!r.ratio_sq.has_value());
}

TEST_CASE("check_theorem preconditions") {
  CHECK_THROWS_AS(check_theorem(make_set1({0}), make_set(2, {{0, 0}}), make_set1({0})),
                  std::invalid_argument);
  // U with three levels is not contained in any quasicube.
  CHECK_THROWS_AS(check_theorem(make_set1({0}), make_set1({0}), make_set1({0, 1, 2})),
                  PreconditionError);
}

TEST_CASE("exploration mode can exhibit violations for non-quasicube U") {
  const PointSet a = make_set1({0, 1});
  const PointSet u = make_set1({0, 1, 2});
  const CheckReport r = check_theorem(a, a, u, false);
  CHECK(r.lhs == 5);          // {0..4}
  CHECK(r.lhs_sq == 25);
  CHECK(r.rhs_sq == 36);      // 2 * 2 * 9
  CHECK(!r.holds);
  CHECK(!r.equality);
}

TEST_CASE("ratio_sq is exact") {
  const CheckReport r = check_theorem(make_set1({0, 2}), make_set1({0}), make_set1({0, 1}));
  CHECK(r.lhs == 4);  // {0,1,2,3}
  REQUIRE(r.ratio_sq.has_value());
  CHECK(*r.ratio_sq == BigRational(16, 8));
  CHECK(*r.ratio_sq == BigRational(2));
}

TEST_CASE("trace of the base example") {
  const ProofTrace t = proof_trace(make_set1({0}), make_set1({0}), make_set1({0, 1}));
  CHECK(t.valid);
  CHECK(t.dim == 1);
  CHECK(t.branch == TraceBranch::base_d1);
  CHECK(t.q == 1);
  CHECK(t.p == doctest::Approx(0.5));
  REQUIRE(t.pl.has_value());
  CHECK(t.pl->holds);
  CHECK(t.pl->lhs == doctest::Approx(1.0));
  CHECK(t.pl->rhs == doctest::Approx(1.0));  // a = b = delta_0
  CHECK(t.a_weights == WeightFn::delta(0));
  CHECK(t.b_weights == WeightFn::delta(0));
  CHECK(t.lhs_sq == 4);
  CHECK(t.bound_sq == 4);  // final bound 2 = |A+B+U|
  CHECK(t.children.empty());
}

TEST_CASE("trace of the foliation example") {
  const PointSet a = make_set(2, {{0, 0}, {0, 1}});
  const PointSet u = make_set(2, {{0, 0}, {1, 2}});
  const ProofTrace t = proof_trace(a, a, u);
  CHECK(t.valid);
  CHECK(t.branch == TraceBranch::foliation_qgt1);
  CHECK(t.q == 2);
  // Classes mod 2 of A split {(0,0)} / {(0,1)}; the maximum is tied, so the
  // smallest residue wins.
  CHECK(t.r_star == 0);
  CHECK(t.s_star == 0);
  REQUIRE(t.a_table.size() == 2);
  CHECK(t.a_table[0] == std::pair<Coord, std::size_t>{0, 1});
  CHECK(t.a_table[1] == std::pair<Coord, std::size_t>{1, 1});
  CHECK(t.children.size() == 4);  // two classes per family
  for (const auto& c : t.children) {
    CHECK(c.valid);
    CHECK(c.q == 1);
  }
  CHECK(t.lhs_sq == 36);
  CHECK(t.bound_sq == 16);
  CHECK(t.bound_sq <= t.lhs_sq);
}

TEST_CASE("trace of a single point everywhere") {
  const PointSet one = make_set(2, {{0, 0}});
  const ProofTrace t = proof_trace(one, one, one);
  CHECK(t.valid);
  CHECK(t.lhs_sq == 1);
  CHECK(t.bound_sq == 1);
  CHECK(all_steps_hold(t));
}

TEST_CASE("trace preconditions") {
  CHECK_THROWS_AS(proof_trace(PointSet(1), make_set1({0}), make_set1({0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(proof_trace(make_set1({0}), make_set1({0}), make_set1({0, 1, 2})),
                  PreconditionError);
  CHECK_THROWS_AS(proof_trace(make_set1({0}), make_set(2, {{0, 0}}), make_set(2, {{0, 0}})),
                  std::invalid_argument);
}

TEST_CASE("traces on the equality family are tight") {
  for (int d = 1; d <= 3; ++d) {
    for (Coord n = 1; n <= 4; ++n) {
      const PointSet a = cube_set(d, 0, n - 1);
      const PointSet u = cube_set(d, 0, 1);
      const ProofTrace t = proof_trace(a, a, u);
      CHECK(t.valid);
      CHECK(t.lhs_sq == t.bound_sq);
      const CheckReport r = check_theorem(a, a, u);
      CHECK(r.equality);
      const BigInt expected = [&] {
        BigInt e = 1;
        for (int k = 0; k < d; ++k) e *= 2 * n;
        return e;
      }();
      CHECK(BigInt(r.lhs) == expected);
    }
  }
}

TEST_CASE("trace bound never exceeds reality on assorted instances") {
  const PointSet fixtures[] = {
      make_set1({0, 2, 3}),
      make_set1({0, 1, 4}),
      make_set(2, {{0, 0}, {1, 1}, {2, 0}}),
      make_set(2, {{0, 0}, {0, 1}, {1, 0}}),
      example_quasicube_2d(),
  };
  const PointSet us[] = {
      make_set1({0, 3}),
      make_set(2, {{0, 0}, {1, 2}}),
      make_set(2, {{0, 0}, {0, 1}}),
      make_set(2, {{2, 5}}),
  };
  for (const PointSet& a : fixtures)
    for (const PointSet& b : fixtures)
      for (const PointSet& u : us) {
        if (a.dim() != b.dim() || a.dim() != u.dim()) continue;
        const ProofTrace t = proof_trace(a, b, u);
        CHECK(t.valid);
        CHECK(t.bound_sq <= t.lhs_sq);
        const CheckReport r = check_theorem(a, b, u);
        CHECK(t.lhs_sq == r.lhs_sq);
        CHECK(t.bound_sq == r.rhs_sq);
      }
}

TEST_CASE("fibering branch records tables and children") {
  // A two-level U with q = 1 exercises the fiber chain in d = 2.
  const PointSet a = make_set(2, {{0, 0}, {1, 0}, {0, 1}});
  const PointSet u = make_set(2, {{0, 0}, {1, 1}});
  const ProofTrace t = proof_trace(a, a, u);
  CHECK(t.valid);
  CHECK(t.branch == TraceBranch::fibering_q1);
  CHECK(t.q == 1);
  CHECK(t.p == doctest::Approx(0.5));
  CHECK(!t.children.empty());  // one child per sumset fiber
  REQUIRE(t.pl.has_value());
  CHECK(t.pl->holds);
  // Fiber tables record |A_x| keyed by the last coordinate.
  REQUIRE(t.a_table.size() == 2);
  CHECK(t.a_table[0] == std::pair<Coord, std::size_t>{0, 2});
  CHECK(t.a_table[1] == std::pair<Coord, std::size_t>{1, 1});
}

}  // TEST_SUITE

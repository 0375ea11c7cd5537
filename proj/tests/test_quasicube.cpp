#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "qcube/quasicube.hpp"
#include "test_util.hpp"

using namespace qcube;

namespace {

QuasicubeWitness unit_cube_witness(int dim) {
  if (dim == 1) return QuasicubeWitness(0, 1);
  auto child = std::make_shared<QuasicubeWitness>(unit_cube_witness(dim - 1));
  return QuasicubeWitness(dim, 0, 1, child, child);
}

PointSet unit_cube(int dim) { return materialize(unit_cube_witness(dim)); }

bool subset_of(const PointSet& a, const PointSet& b) {
  return std::all_of(a.points().begin(), a.points().end(),
                     [&](const Point& p) { return b.contains(p); });
}

}  // namespace

TEST_SUITE("quasicube") {

TEST_CASE("materialize") {
  CHECK(materialize(QuasicubeWitness(0, 1)) == make_set1({0, 1}));
  CHECK(unit_cube(2) == make_set(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  // The two-level example: levels {0,1} in the last coordinate with fibers
  // {0,1} and {0,2}.
  const QuasicubeWitness w(2, 0, 1, std::make_shared<QuasicubeWitness>(0, 1),
                           std::make_shared<QuasicubeWitness>(0, 2));
  CHECK(materialize(w) == example_quasicube_2d());
}

TEST_CASE("witness leaf count is 2^d") {
  for (int d = 1; d <= 4; ++d) CHECK(unit_cube(d).size() == (std::size_t{1} << d));
}

TEST_CASE("is_quasicube recognizes cubes and the two-level example") {
  CHECK(is_quasicube(unit_cube(3)).has_value());
  CHECK(is_quasicube(example_quasicube_2d()).has_value());
  // In the displayed tuple order the last coordinate takes three values.
  CHECK(!is_quasicube(example_quasicube_2d_printed()).has_value());
  CHECK(!is_quasicube(make_set(2, {{0, 0}, {1, 0}, {0, 1}})).has_value());  // |S| = 3
  CHECK(!is_quasicube(make_set1({0, 1, 2, 3})).has_value());  // 4 points but d = 1
  const auto w = is_quasicube(example_quasicube_2d());
  REQUIRE(w.has_value());
  CHECK(materialize(*w) == example_quasicube_2d());
}

TEST_CASE("containment in dimension one") {
  CHECK(contained_in_quasicube(make_set1({0, 1})).has_value());
  CHECK(contained_in_quasicube(make_set1({4})).has_value());
  CHECK(!contained_in_quasicube(make_set1({0, 1, 2})).has_value());
  CHECK_THROWS_AS(contained_in_quasicube(PointSet(1)), std::invalid_argument);
  // Singleton padding adds u+1.
  const auto w = contained_in_quasicube(make_set1({4}));
  REQUIRE(w.has_value());
  CHECK(materialize(*w) == make_set1({4, 5}));
}

TEST_CASE("containment produces a valid witness superset") {
  const PointSet u = make_set(2, {{0, 0}, {1, 2}});
  const auto w = contained_in_quasicube(u);
  REQUIRE(w.has_value());
  const PointSet sigma = materialize(*w);
  CHECK(is_quasicube(sigma).has_value());
  CHECK(subset_of(u, sigma));
  CHECK(sigma.size() == 4);

  // Single point in dimension 3 pads to a 2^3 box.
  const auto w3 = contained_in_quasicube(make_set(3, {{2, 5, -1}}));
  REQUIRE(w3.has_value());
  const PointSet sigma3 = materialize(*w3);
  CHECK(sigma3.size() == 8);
  CHECK(sigma3.contains(Point{2, 5, -1}));
  CHECK(is_quasicube(sigma3).has_value());
}

TEST_CASE("three last-coordinate values can never be contained") {
  CHECK(!contained_in_quasicube(example_quasicube_2d_printed()).has_value());
  CHECK(!contained_in_quasicube(make_set(2, {{0, 0}, {0, 1}, {0, 2}})).has_value());
}

TEST_CASE("subsets of a quasicube are always contained") {
  std::mt19937_64 rng(13);
  const Box box = Box::cube(2, 0, 2);
  const auto all = enumerate_quasicubes(box);
  REQUIRE(!all.empty());
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const PointSet sigma = materialize(all[pick(rng)]);
    std::vector<Point> pts;
    for (const auto& p : sigma.points())
      if (rng() & 1) pts.push_back(p);
    if (pts.empty()) pts.push_back(sigma.points()[0]);
    const PointSet u(2, std::move(pts));
    const auto w = contained_in_quasicube(u);
    REQUIRE(w.has_value());
    CHECK(subset_of(u, materialize(*w)));
  }
}

TEST_CASE("enumerate small boxes exactly") {
  const auto d1_unit = enumerate_quasicubes(Box::cube(1, 0, 1));
  REQUIRE(d1_unit.size() == 1);
  CHECK(materialize(d1_unit[0]) == make_set1({0, 1}));

  const auto d1_three = enumerate_quasicubes(Box::cube(1, 0, 2));
  REQUIRE(d1_three.size() == 3);
  CHECK(materialize(d1_three[0]) == make_set1({0, 1}));
  CHECK(materialize(d1_three[1]) == make_set1({0, 2}));
  CHECK(materialize(d1_three[2]) == make_set1({1, 2}));

  const auto d2_unit = enumerate_quasicubes(Box::cube(2, 0, 1));
  REQUIRE(d2_unit.size() == 1);
  CHECK(materialize(d2_unit[0]) == unit_cube(2));
}

TEST_CASE("enumeration is deduplicated and in-box") {
  const Box box = Box::cube(2, 0, 2);
  const auto all = enumerate_quasicubes(box);
  CHECK(all.size() == count_quasicubes_in_box(box));
  CHECK(all.size() == 27);  // 3 level pairs x 3 x 3 fiber choices
  std::set<PointSet> seen;
  for (const auto& w : all) {
    const PointSet s = materialize(w);
    CHECK(seen.insert(s).second);
    for (const auto& p : s.points()) CHECK(box.contains(p));
    CHECK(is_quasicube(s).has_value());  // round trip
  }
}

TEST_CASE("canonical enumeration keeps one placement per translation class") {
  const Box box = Box::cube(1, 0, 2);
  const auto canon = enumerate_quasicubes(box, true);
  REQUIRE(canon.size() == 2);  // {0,1} and {0,2}
  CHECK(materialize(canon[0]) == make_set1({0, 1}));
  CHECK(materialize(canon[1]) == make_set1({0, 2}));

  // Every translation class in the full enumeration has exactly one
  // canonical representative.
  const Box box2 = Box::cube(2, 0, 2);
  std::set<PointSet> classes;
  for (const auto& w : enumerate_quasicubes(box2)) classes.insert(canonicalize(materialize(w)));
  std::set<PointSet> canon2;
  for (const auto& w : enumerate_quasicubes(box2, true))
    CHECK(canon2.insert(canonicalize(materialize(w))).second);
  CHECK(classes == canon2);
}

TEST_CASE("early stop from the enumeration visitor") {
  int seen = 0;
  enumerate_quasicubes(Box::cube(2, 0, 2), false, [&](const QuasicubeWitness&) {
    return ++seen < 5;
  });
  CHECK(seen == 5);
}

TEST_CASE("permutation mode recovers rotated containment") {
  // Not contained as-is (three last-coordinate values), contained after
  // swapping the two coordinates.
  const PointSet printed = example_quasicube_2d_printed();
  CHECK(!contained_in_quasicube(printed).has_value());
  const auto pc = contained_in_quasicube_permuted(printed);
  REQUIRE(pc.has_value());
  CHECK(pc->permutation == std::vector<int>{1, 0});
  const PointSet permuted = apply_permutation(printed, pc->permutation);
  CHECK(permuted == example_quasicube_2d());
  CHECK(subset_of(permuted, materialize(pc->witness)));

  // Directly contained sets report the identity permutation.
  const auto pc2 = contained_in_quasicube_permuted(make_set(2, {{0, 0}, {1, 2}}));
  REQUIRE(pc2.has_value());
  CHECK(pc2->permutation == std::vector<int>{0, 1});
}

TEST_CASE("witness equality and normalization") {
  CHECK(QuasicubeWitness(1, 0) == QuasicubeWitness(0, 1));  // x0 < x1 normalized
  CHECK(!(QuasicubeWitness(0, 2) == QuasicubeWitness(0, 1)));
  CHECK_THROWS_AS(QuasicubeWitness(0, 0), std::invalid_argument);
}

}  // TEST_SUITE

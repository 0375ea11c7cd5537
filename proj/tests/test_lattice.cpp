#include <algorithm>
#include <random>

#include "doctest.h"
#include "qcube/lattice.hpp"
#include "test_util.hpp"

using namespace qcube;

namespace {

PointSet random_set(std::mt19937_64& rng, int dim, Coord lo, Coord hi, std::size_t max_size) {
  std::uniform_int_distribution<Coord> coord(lo, hi);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::vector<Point> pts;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    for (int k = 0; k < dim; ++k) p.push_back(coord(rng));
    pts.push_back(std::move(p));
  }
  return PointSet(dim, std::move(pts));
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("point sets sort and deduplicate") {
  const PointSet s(1, {Point{3}, Point{1}, Point{3}, Point{2}});
  CHECK(s.size() == 3);
  CHECK(s.points()[0] == Point{1});
  CHECK(s.points()[2] == Point{3});
  CHECK(s.contains(Point{2}));
  CHECK(!s.contains(Point{0}));
  CHECK_THROWS_AS(PointSet(0), std::invalid_argument);
}

TEST_CASE("sumset basics") {
  CHECK(sumset(make_set1({0}), make_set1({0})) == make_set1({0}));
  CHECK(sumset(make_set1({0, 1}), make_set1({0, 1})) == make_set1({0, 1, 2}));
  CHECK(sumset(make_set(2, {{0, 0}, {1, 2}}), make_set(2, {{1, 1}})) ==
        make_set(2, {{1, 1}, {2, 3}}));
  // An empty operand gives an empty sumset.
  CHECK(sumset(PointSet(1), make_set1({0, 1})).empty());
  CHECK_THROWS_AS(sumset(make_set1({0}), make_set(2, {{0, 0}})), std::invalid_argument);
}

TEST_CASE("translate") {
  CHECK(translate(make_set1({0}), Point{0}) == make_set1({0}));
  CHECK(translate(make_set1({0, 1}), Point{-1}) == make_set1({-1, 0}));
  CHECK(translate(make_set(2, {{0, 0}, {1, 2}}), Point{1, 1}) ==
        make_set(2, {{1, 1}, {2, 3}}));
}

TEST_CASE("project_last") {
  const auto proj = project_last(example_quasicube_2d_printed());
  CHECK(proj == std::vector<Coord>{0, 1, 2});
  CHECK(project_last(make_set1({5})) == std::vector<Coord>{5});
  CHECK(project_last(PointSet(3)).empty());
}

TEST_CASE("fiber and fiber_count") {
  const PointSet s = example_quasicube_2d_printed();
  CHECK(fiber(s, 0) == make_set1({0, 1}));
  CHECK(fiber(s, 2) == make_set1({1}));
  CHECK(fiber(make_set(2, {{0, 0}}), 7).empty());
  CHECK(fiber_count(s, 0) == 2);
  CHECK(fiber_count(s, 1) == 1);
  CHECK(fiber_count(s, 7) == 0);
  CHECK(fiber_count(make_set1({0, 2}), 2) == 1);  // d = 1: membership bit
  CHECK(fiber_count(make_set1({0, 2}), 1) == 0);
}

TEST_CASE("fiber sizes partition the set") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet s = random_set(rng, 3, -3, 3, 12);
    std::size_t total = 0;
    for (Coord n : project_last(s)) total += fiber(s, n).size();
    CHECK(total == s.size());
  }
}

TEST_CASE("foliate") {
  const Foliation f = foliate(make_set1({0, 1, 2, 3}), 2);
  CHECK(f.modulus == 2);
  CHECK(f.classes.size() == 2);
  CHECK(f.classes.at(0) == make_set1({0, 2}));
  CHECK(f.classes.at(1) == make_set1({1, 3}));

  const PointSet a = make_set(2, {{0, 0}, {1, 5}, {2, -1}});
  const Foliation g = foliate(a, 1);
  CHECK(g.classes.size() == 1);
  CHECK(g.classes.at(0) == a);

  CHECK(foliate(PointSet(2), 3).classes.empty());
  CHECK_THROWS_AS(foliate(a, 0), std::invalid_argument);

  // Classes partition the set.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const PointSet s = random_set(rng, 2, -4, 4, 10);
    for (Coord q = 1; q <= 4; ++q) {
      std::size_t total = 0;
      for (const auto& [r, cls] : foliate(s, q).classes) {
        CHECK(r >= 0);
        CHECK(r < q);
        total += cls.size();
        for (const auto& pt : cls.points()) CHECK(nonneg_mod(pt.back(), q) == r);
      }
      CHECK(total == s.size());
    }
  }
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(make_set1({3, 5})) == make_set1({0, 2}));
  CHECK(canonicalize(make_set(2, {{0, 0}})) == make_set(2, {{0, 0}}));
  CHECK(canonicalize(make_set(2, {{-1, 2}, {0, 3}})) == make_set(2, {{0, 0}, {1, 1}}));
  CHECK_THROWS_AS(canonicalize(PointSet(1)), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Coord> shift(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet s = random_set(rng, 2, -4, 4, 8);
    const PointSet c = canonicalize(s);
    CHECK(canonicalize(c) == c);  // idempotent
    const Point v{shift(rng), shift(rng)};
    CHECK(canonicalize(translate(s, v)) == c);  // translation-invariant
  }
}

TEST_CASE("sumset size and covariance properties") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Coord> shift(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet a = random_set(rng, 2, -3, 3, 6);
    const PointSet b = random_set(rng, 2, -3, 3, 6);
    const PointSet s = sumset(a, b);
    CHECK(s.size() >= std::max(a.size(), b.size()));
    const Point v{shift(rng), shift(rng)};
    CHECK(sumset(translate(a, v), b) == translate(s, v));
  }
}

TEST_CASE("boxes") {
  const Box b = Box::cube(2, 0, 1);
  CHECK(b.dim() == 2);
  CHECK(b.side(0) == 2);
  CHECK(b.cell_count() == 4);
  CHECK(b.contains(Point{1, 0}));
  CHECK(!b.contains(Point{2, 0}));
  const auto cells = b.cells();
  REQUIRE(cells.size() == 4);
  CHECK(cells.front() == Point{0, 0});
  CHECK(cells.back() == Point{1, 1});
  CHECK(std::is_sorted(cells.begin(), cells.end()));
}

TEST_CASE("nonneg_mod") {
  CHECK(nonneg_mod(5, 3) == 2);
  CHECK(nonneg_mod(-1, 3) == 2);
  CHECK(nonneg_mod(-6, 3) == 0);
  CHECK(nonneg_mod(0, 7) == 0);
}

}  // TEST_SUITE

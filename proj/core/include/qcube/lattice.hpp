// Exact arithmetic on finite point sets in Z^d: sumsets, projections,
// fibers, foliation mod q, translation canonicalization.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace qcube {

using Coord = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Inline storage covers d <= 4, the scales the scan harness allows.
using Point = boost::container::small_vector<Coord, 4>;

// A finite subset of Z^d. Points are kept sorted (lexicographic) and
// deduplicated, so equality and membership are cheap and iteration order
// is deterministic.
class PointSet {
 public:
  explicit PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  }
  PointSet(int dim, std::vector<Point> pts);

  int dim() const { return dim_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const std::vector<Point>& points() const { return pts_; }

  bool contains(const Point& p) const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.pts_ == b.pts_;
  }
  friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }
  friend bool operator<(const PointSet& a, const PointSet& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return a.pts_ < b.pts_;
  }

 private:
  int dim_;
  std::vector<Point> pts_;
};

// Per-dimension closed integer bounds, lo <= hi in every dimension.
struct Box {
  std::vector<std::pair<Coord, Coord>> bounds;

  int dim() const { return static_cast<int>(bounds.size()); }
  // Number of lattice points per side and in total.
  Coord side(int i) const { return bounds[i].second - bounds[i].first + 1; }
  std::uint64_t cell_count() const;
  bool contains(const Point& p) const;
  std::vector<Point> cells() const;  // all lattice points, lexicographic

  static Box cube(int dim, Coord lo, Coord hi);
};

// Partition of a set by the residue of its last coordinate mod q.
// Empty classes are omitted.
struct Foliation {
  Coord modulus;
  std::map<Coord, PointSet> classes;
};

PointSet sumset(const PointSet& a, const PointSet& b);
PointSet translate(const PointSet& a, const Point& v);

// Values of the final coordinate, sorted and deduplicated.
std::vector<Coord> project_last(const PointSet& a);

// Points of `a` whose last coordinate equals n, with that coordinate
// dropped. Requires dim >= 2; a missing fiber is the empty set.
PointSet fiber(const PointSet& a, Coord n);

// |a ∩ π^{-1}(n)|. Works in every dimension, including d = 1 where a
// fiber is just a membership bit.
std::size_t fiber_count(const PointSet& a, Coord n);

Foliation foliate(const PointSet& a, Coord q);

// The translate of `a` whose coordinatewise minimum is the origin.
// Two sets are translates of one another iff their canonical forms agree.
PointSet canonicalize(const PointSet& a);

Coord nonneg_mod(Coord x, Coord q);

}  // namespace qcube

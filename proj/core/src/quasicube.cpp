#include "qcube/quasicube.hpp"

#include <algorithm>
#include <utility>

namespace qcube {

QuasicubeWitness::QuasicubeWitness(Coord x0, Coord x1) : dim_(1), x0_(x0), x1_(x1) {
  if (x0 == x1) throw std::invalid_argument("QuasicubeWitness: x0 == x1");
  if (x0_ > x1_) std::swap(x0_, x1_);
}

QuasicubeWitness::QuasicubeWitness(int dim, Coord x0, Coord x1,
                                   std::shared_ptr<const QuasicubeWitness> child0,
                                   std::shared_ptr<const QuasicubeWitness> child1)
    : dim_(dim), x0_(x0), x1_(x1), child0_(std::move(child0)), child1_(std::move(child1)) {
  if (dim < 2) throw std::invalid_argument("QuasicubeWitness: node dim must be >= 2");
  if (x0 == x1) throw std::invalid_argument("QuasicubeWitness: x0 == x1");
  if (!child0_ || !child1_) throw std::invalid_argument("QuasicubeWitness: missing child");
  if (child0_->dim() != dim - 1 || child1_->dim() != dim - 1)
    throw std::invalid_argument("QuasicubeWitness: child dimension mismatch");
  if (x0_ > x1_) {
    std::swap(x0_, x1_);
    std::swap(child0_, child1_);
  }
}

bool operator==(const QuasicubeWitness& a, const QuasicubeWitness& b) {
  if (a.dim_ != b.dim_ || a.x0_ != b.x0_ || a.x1_ != b.x1_) return false;
  if (a.dim_ == 1) return true;
  if (a.child0_ != b.child0_ && !(*a.child0_ == *b.child0_)) return false;
  if (a.child1_ != b.child1_ && !(*a.child1_ == *b.child1_)) return false;
  return true;
}

namespace {

void materialize_into(const QuasicubeWitness& w, std::vector<Point>& out) {
  if (w.dim() == 1) {
    out.push_back(Point{w.x0()});
    out.push_back(Point{w.x1()});
    return;
  }
  std::vector<Point> lower;
  materialize_into(w.child0(), lower);
  for (Point& p : lower) {
    p.push_back(w.x0());
    out.push_back(std::move(p));
  }
  lower.clear();
  materialize_into(w.child1(), lower);
  for (Point& p : lower) {
    p.push_back(w.x1());
    out.push_back(std::move(p));
  }
}

}  // namespace

PointSet materialize(const QuasicubeWitness& w) {
  std::vector<Point> pts;
  pts.reserve(std::size_t{1} << w.dim());
  materialize_into(w, pts);
  return PointSet(w.dim(), std::move(pts));
}

std::optional<QuasicubeWitness> is_quasicube(const PointSet& s) {
  const int d = s.dim();
  if (d < 63 && s.size() != (std::size_t{1} << d)) return std::nullopt;
  if (d == 1) {
    return QuasicubeWitness(s.points()[0][0], s.points()[1][0]);
  }
  std::vector<Coord> proj = project_last(s);
  if (proj.size() != 2) return std::nullopt;
  auto w0 = is_quasicube(fiber(s, proj[0]));
  if (!w0) return std::nullopt;
  auto w1 = is_quasicube(fiber(s, proj[1]));
  if (!w1) return std::nullopt;
  return QuasicubeWitness(d, proj[0], proj[1],
                          std::make_shared<const QuasicubeWitness>(std::move(*w0)),
                          std::make_shared<const QuasicubeWitness>(std::move(*w1)));
}

namespace {

// Distinct last-coordinate values, bailing out as soon as a third appears.
// Returns false when there are three or more.
bool last_values_at_most_two(const PointSet& s, Coord vals[2], int& count) {
  count = 0;
  for (const Point& p : s.points()) {
    Coord v = p.back();
    if (count > 0 && vals[0] == v) continue;
    if (count > 1 && vals[1] == v) continue;
    if (count == 2) return false;
    vals[count++] = v;
  }
  if (count == 2 && vals[0] > vals[1]) std::swap(vals[0], vals[1]);
  return true;
}

}  // namespace

std::optional<QuasicubeWitness> contained_in_quasicube(const PointSet& u) {
  if (u.empty()) throw std::invalid_argument("contained_in_quasicube: empty set");
  Coord vals[2];
  int nvals = 0;
  if (!last_values_at_most_two(u, vals, nvals)) return std::nullopt;
  if (u.dim() == 1) {
    if (nvals == 1) return QuasicubeWitness(vals[0], vals[0] + 1);
    return QuasicubeWitness(vals[0], vals[1]);
  }
  auto w0 = contained_in_quasicube(fiber(u, vals[0]));
  if (!w0) return std::nullopt;
  auto c0 = std::make_shared<const QuasicubeWitness>(std::move(*w0));
  if (nvals == 1) {
    // Single occupied level: duplicate the padded fiber at x0 + 1.
    return QuasicubeWitness(u.dim(), vals[0], vals[0] + 1, c0, c0);
  }
  auto w1 = contained_in_quasicube(fiber(u, vals[1]));
  if (!w1) return std::nullopt;
  return QuasicubeWitness(u.dim(), vals[0], vals[1], c0,
                          std::make_shared<const QuasicubeWitness>(std::move(*w1)));
}

PointSet apply_permutation(const PointSet& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.dim())
    throw std::invalid_argument("apply_permutation: permutation size mismatch");
  std::vector<Point> out;
  out.reserve(s.size());
  for (const Point& p : s.points()) {
    Point np(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) np[i] = p[perm[i]];
    out.push_back(std::move(np));
  }
  return PointSet(s.dim(), std::move(out));
}

std::optional<PermutedContainment> contained_in_quasicube_permuted(const PointSet& u) {
  std::vector<int> perm(static_cast<std::size_t>(u.dim()));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    auto w = contained_in_quasicube(apply_permutation(u, perm));
    if (w) return PermutedContainment{perm, std::move(*w)};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

using WitnessPtr = std::shared_ptr<const QuasicubeWitness>;

std::vector<WitnessPtr> enumerate_rec(const Box& box, int d) {
  std::vector<WitnessPtr> out;
  const auto [lo, hi] = box.bounds[static_cast<std::size_t>(d - 1)];
  if (d == 1) {
    for (Coord x0 = lo; x0 <= hi; ++x0)
      for (Coord x1 = x0 + 1; x1 <= hi; ++x1)
        out.push_back(std::make_shared<const QuasicubeWitness>(x0, x1));
    return out;
  }
  std::vector<WitnessPtr> lower = enumerate_rec(box, d - 1);
  for (Coord x0 = lo; x0 <= hi; ++x0)
    for (Coord x1 = x0 + 1; x1 <= hi; ++x1)
      for (const WitnessPtr& c0 : lower)
        for (const WitnessPtr& c1 : lower)
          out.push_back(std::make_shared<const QuasicubeWitness>(d, x0, x1, c0, c1));
  return out;
}

void min_corner(const QuasicubeWitness& w, Point& mins) {
  if (w.dim() == 1) {
    mins[0] = w.x0();
    return;
  }
  Point other(static_cast<std::size_t>(w.dim() - 1));
  min_corner(w.child0(), mins);
  min_corner(w.child1(), other);
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(w.dim()); ++i)
    mins[i] = std::min(mins[i], other[i]);
  mins[static_cast<std::size_t>(w.dim() - 1)] = w.x0();
}

// Canonical = one representative per translation class: the placement whose
// minimum corner sits at the box's low corner.
bool is_canonical(const QuasicubeWitness& w, const Box& box) {
  Point mins(static_cast<std::size_t>(w.dim()));
  min_corner(w, mins);
  for (std::size_t i = 0; i < mins.size(); ++i)
    if (mins[i] != box.bounds[i].first) return false;
  return true;
}

}  // namespace

void enumerate_quasicubes(const Box& box, bool canonical,
                          const std::function<bool(const QuasicubeWitness&)>& visit) {
  const int d = box.dim();
  if (d < 1) throw std::invalid_argument("enumerate_quasicubes: dim must be >= 1");
  for (std::size_t i = 0; i < box.bounds.size(); ++i)
    if (box.bounds[i].first > box.bounds[i].second)
      throw std::invalid_argument("enumerate_quasicubes: box lo > hi");

  // Stream the top level; lower levels are small and get materialized once.
  const auto [lo, hi] = box.bounds[static_cast<std::size_t>(d - 1)];
  if (d == 1) {
    for (Coord x0 = lo; x0 <= hi; ++x0)
      for (Coord x1 = x0 + 1; x1 <= hi; ++x1) {
        QuasicubeWitness w(x0, x1);
        if (canonical && !is_canonical(w, box)) continue;
        if (!visit(w)) return;
      }
    return;
  }
  std::vector<WitnessPtr> lower = enumerate_rec(box, d - 1);
  for (Coord x0 = lo; x0 <= hi; ++x0)
    for (Coord x1 = x0 + 1; x1 <= hi; ++x1)
      for (const WitnessPtr& c0 : lower)
        for (const WitnessPtr& c1 : lower) {
          QuasicubeWitness w(d, x0, x1, c0, c1);
          if (canonical && !is_canonical(w, box)) continue;
          if (!visit(w)) return;
        }
}

std::vector<QuasicubeWitness> enumerate_quasicubes(const Box& box, bool canonical) {
  std::vector<QuasicubeWitness> out;
  enumerate_quasicubes(box, canonical, [&](const QuasicubeWitness& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::uint64_t count_quasicubes_in_box(const Box& box) {
  std::uint64_t n = 1;
  for (int i = 0; i < box.dim(); ++i) {
    const std::uint64_t side = static_cast<std::uint64_t>(box.side(i));
    const std::uint64_t pairs = side * (side - 1) / 2;
    // Each level multiplies by (pairs at that level) and squares what is below.
    n = pairs * n * n;
  }
  return n;
}

}  // namespace qcube

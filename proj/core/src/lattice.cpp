#include "qcube/lattice.hpp"

#include <algorithm>

namespace qcube {

PointSet::PointSet(int dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
  if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  for (const Point& p : pts_) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("PointSet: point dimension mismatch");
  }
  if (!std::is_sorted(pts_.begin(), pts_.end())) std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(pts_.begin(), pts_.end(), p);
}

std::uint64_t Box::cell_count() const {
  std::uint64_t n = 1;
  for (int i = 0; i < dim(); ++i) {
    if (bounds[i].first > bounds[i].second)
      throw std::invalid_argument("Box: lo > hi");
    n *= static_cast<std::uint64_t>(side(i));
  }
  return n;
}

bool Box::contains(const Point& p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (p[i] < bounds[i].first || p[i] > bounds[i].second) return false;
  return true;
}

std::vector<Point> Box::cells() const {
  std::vector<Point> out;
  out.reserve(cell_count());
  Point cur(dim());
  for (int i = 0; i < dim(); ++i) cur[i] = bounds[i].first;
  while (true) {
    out.push_back(cur);
    int i = dim() - 1;
    while (i >= 0 && cur[i] == bounds[i].second) {
      cur[i] = bounds[i].first;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

Box Box::cube(int dim, Coord lo, Coord hi) {
  Box b;
  b.bounds.assign(static_cast<std::size_t>(dim), {lo, hi});
  return b;
}

PointSet sumset(const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sumset: dimension mismatch");
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const Point& pa : a.points()) {
    for (const Point& pb : b.points()) {
      Point s = pa;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += pb[i];
      out.push_back(std::move(s));
    }
  }
  return PointSet(a.dim(), std::move(out));
}

PointSet translate(const PointSet& a, const Point& v) {
  if (static_cast<int>(v.size()) != a.dim())
    throw std::invalid_argument("translate: dimension mismatch");
  std::vector<Point> out;
  out.reserve(a.size());
  for (const Point& p : a.points()) {
    Point t = p;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += v[i];
    out.push_back(std::move(t));
  }
  // Adding a constant vector preserves lexicographic order.
  return PointSet(a.dim(), std::move(out));
}

std::vector<Coord> project_last(const PointSet& a) {
  std::vector<Coord> vals;
  for (const Point& p : a.points()) vals.push_back(p.back());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

PointSet fiber(const PointSet& a, Coord n) {
  if (a.dim() < 2) throw std::invalid_argument("fiber: requires dim >= 2");
  std::vector<Point> out;
  for (const Point& p : a.points()) {
    if (p.back() != n) continue;
    out.emplace_back(p.begin(), p.end() - 1);
  }
  // Restriction to one last-coordinate value keeps prefixes sorted and unique.
  return PointSet(a.dim() - 1, std::move(out));
}

std::size_t fiber_count(const PointSet& a, Coord n) {
  std::size_t count = 0;
  for (const Point& p : a.points())
    if (p.back() == n) ++count;
  return count;
}

Coord nonneg_mod(Coord x, Coord q) {
  Coord r = x % q;
  return r < 0 ? r + q : r;
}

Foliation foliate(const PointSet& a, Coord q) {
  if (q < 1) throw std::invalid_argument("foliate: q must be >= 1");
  Foliation f;
  f.modulus = q;
  std::map<Coord, std::vector<Point>> buckets;
  for (const Point& p : a.points()) buckets[nonneg_mod(p.back(), q)].push_back(p);
  for (auto& [r, pts] : buckets) f.classes.emplace(r, PointSet(a.dim(), std::move(pts)));
  return f;
}

PointSet canonicalize(const PointSet& a) {
  if (a.empty()) throw std::invalid_argument("canonicalize: empty set");
  Point shift(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    Coord m = a.points()[0][static_cast<std::size_t>(i)];
    for (const Point& p : a.points()) m = std::min(m, p[static_cast<std::size_t>(i)]);
    shift[static_cast<std::size_t>(i)] = -m;
  }
  return translate(a, shift);
}

}  // namespace qcube

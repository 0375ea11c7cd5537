#include "qcube/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace qcube {

namespace {

PointSet triple_sum(const PointSet& a, const PointSet& b, const PointSet& u) {
  return sumset(sumset(a, b), u);
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

PointSet shift_last(const PointSet& s, Coord delta) {
  Point off;
  off.resize(static_cast<std::size_t>(s.dim()), 0);
  off.back() = delta;
  return translate(s, off);
}

// Maps each last coordinate v to (v - r) / q; every v must be = r (mod q).
PointSet rescale_last(const PointSet& s, Coord r, Coord q) {
  std::vector<Point> pts;
  pts.reserve(s.size());
  for (const Point& pt : s.points()) {
    Point np = pt;
    np.back() = (pt.back() - r) / q;
    pts.push_back(std::move(np));
  }
  return PointSet(s.dim(), std::move(pts));
}

std::vector<std::pair<Coord, std::size_t>> fiber_table(const PointSet& s) {
  std::vector<std::pair<Coord, std::size_t>> out;
  for (Coord v : project_last(s)) out.emplace_back(v, fiber_count(s, v));
  return out;
}

std::string instance_label(int dim, Coord q, const PointSet& a, const PointSet& b,
                           const PointSet& u) {
  std::ostringstream ss;
  ss << "d=" << dim << " q=" << q << " |A|=" << a.size() << " |B|=" << b.size()
     << " |U|=" << u.size();
  return ss.str();
}

void finish_trace(ProofTrace& tr, const PointSet& a, const PointSet& b, const PointSet& u,
                  std::size_t sumset_size) {
  tr.lhs_sq = BigInt(sumset_size) * BigInt(sumset_size);
  tr.bound_sq = BigInt(a.size()) * BigInt(b.size()) * BigInt(u.size()) * BigInt(u.size());

  TraceStep fin;
  fin.name = "theorem_bound";
  fin.exact = true;
  fin.holds = tr.lhs_sq >= tr.bound_sq;
  fin.lhs = static_cast<double>(sumset_size);
  fin.rhs = std::sqrt(to_double(tr.bound_sq));
  fin.note = "|A+B+U|^2 >= |A| |B| |U|^2";
  tr.steps.push_back(std::move(fin));

  tr.valid = true;
  for (const TraceStep& st : tr.steps)
    if (!st.holds) tr.valid = false;
  for (const ProofTrace& ch : tr.children)
    if (!ch.valid) tr.valid = false;
}

// U has last coordinates in {0, 1}: fiber everything along the last axis,
// bound each fiber of the sumset by the best composition, and tie the fiber
// sums together with the weighted PL inequality.
ProofTrace fibering_trace(const PointSet& a, const PointSet& b, const PointSet& u,
                          double rel_tol) {
  const int dim = a.dim();
  ProofTrace tr;
  tr.dim = dim;
  tr.branch = dim == 1 ? TraceBranch::base_d1 : TraceBranch::fibering_q1;
  tr.q = 1;
  tr.label = instance_label(dim, 1, a, b, u);
  tr.a_table = fiber_table(a);
  tr.b_table = fiber_table(b);
  tr.u_table = fiber_table(u);

  const std::size_t u_at[2] = {fiber_count(u, 0), fiber_count(u, 1)};
  tr.p = static_cast<double>(u_at[0]) / static_cast<double>(u.size());

  std::map<Coord, std::size_t> a_count(tr.a_table.begin(), tr.a_table.end());
  std::map<Coord, std::size_t> b_count(tr.b_table.begin(), tr.b_table.end());

  const PointSet s = triple_sum(a, b, u);

  // Per fiber of the sumset: |S_n|^2 >= |U_i|^2 |A_x| |B_y| for the best
  // split n = x + y + i, checked on exact integers; in dimension >= 2 also
  // replay the witnessing containment A_x + B_y + U_i inside S_n.
  for (Coord n : project_last(s)) {
    bool found = false;
    Coord bx = 0, by = 0, bi = 0;
    BigInt bkey = 0;
    for (const auto& [x, ax] : a_count) {
      for (Coord i = 0; i <= 1; ++i) {
        if (u_at[static_cast<std::size_t>(i)] == 0) continue;
        const Coord y = n - x - i;
        auto it = b_count.find(y);
        if (it == b_count.end()) continue;
        const std::size_t ui = u_at[static_cast<std::size_t>(i)];
        BigInt key = BigInt(ui) * BigInt(ui) * BigInt(ax) * BigInt(it->second);
        const bool better =
            !found || key > bkey ||
            (key == bkey && std::tuple(x, y, i) < std::tuple(bx, by, bi));
        if (better) {
          found = true;
          bx = x;
          by = y;
          bi = i;
          bkey = std::move(key);
        }
      }
    }

    const std::size_t sn = fiber_count(s, n);
    TraceStep st;
    st.name = "fiber_bound";
    st.exact = true;
    st.lhs = static_cast<double>(sn);
    st.rhs = std::sqrt(to_double(bkey));
    bool ok = found && BigInt(sn) * BigInt(sn) >= bkey;
    std::ostringstream note;
    note << "n=" << n << " x=" << bx << " y=" << by << " i=" << bi;

    if (found && dim >= 2) {
      // Every split of n must land inside the fiber of the sumset, not
      // just the best one.
      const PointSet fs = fiber(s, n);
      for (const auto& [x, ax] : a_count) {
        for (Coord i = 0; i <= 1; ++i) {
          if (u_at[static_cast<std::size_t>(i)] == 0) continue;
          const Coord y = n - x - i;
          if (b_count.find(y) == b_count.end()) continue;
          const PointSet t = triple_sum(fiber(a, x), fiber(b, y), fiber(u, i));
          for (const Point& pt : t.points())
            if (!fs.contains(pt)) {
              ok = false;
              note << " (containment failed at x=" << x << " i=" << i << ")";
              break;
            }
        }
      }
      tr.children.push_back(proof_trace(fiber(a, bx), fiber(b, by), fiber(u, bi), rel_tol));
    }
    st.holds = ok;
    st.note = note.str();
    tr.steps.push_back(std::move(st));
  }

  tr.a_weights = WeightFn::sqrt_counts(a_count);
  tr.b_weights = WeightFn::sqrt_counts(b_count);
  tr.pl = check_weighted_pl(tr.a_weights, tr.b_weights, tr.p, rel_tol);

  TraceStep pl_step;
  pl_step.name = "weighted_pl";
  pl_step.exact = false;
  pl_step.holds = tr.pl->holds;
  pl_step.lhs = tr.pl->lhs;
  pl_step.rhs = tr.pl->rhs;
  pl_step.note = "sum_n max(p c(n), (1-p) c(n-1)) >= ||a||_2 ||b||_2";
  tr.steps.push_back(std::move(pl_step));

  TraceStep sum_step;
  sum_step.name = "fiber_sum";
  sum_step.exact = false;
  sum_step.lhs = static_cast<double>(s.size());
  sum_step.rhs = static_cast<double>(u.size()) * tr.pl->rhs;
  sum_step.holds = sum_step.lhs >= sum_step.rhs * (1.0 - rel_tol);
  sum_step.note = "sum_n |(A+B+U)_n| >= |U| ||a||_2 ||b||_2";
  tr.steps.push_back(std::move(sum_step));

  finish_trace(tr, a, b, u, s.size());
  return tr;
}

struct ClassFamily {
  std::vector<std::pair<Coord, std::size_t>> table;
  Coord star = 0;  // residue of the largest class, smallest residue on ties
};

ClassFamily classes_of(const Foliation& f) {
  ClassFamily out;
  std::size_t best = 0;
  for (const auto& [r, cls] : f.classes) {
    out.table.emplace_back(r, cls.size());
    if (cls.size() > best) {
      best = cls.size();
      out.star = r;
    }
  }
  return out;
}

// U has last coordinates {0, q} with q > 1: split A and B into residue
// classes mod q. Fixing the largest class on one side, the sums against the
// classes of the other side are pairwise disjoint inside A+B+U, and each is
// an instance with step 1 after dividing the last coordinate by q.
ProofTrace foliation_trace(const PointSet& a, const PointSet& b, const PointSet& u, Coord q,
                           double rel_tol) {
  const int dim = a.dim();
  ProofTrace tr;
  tr.dim = dim;
  tr.branch = TraceBranch::foliation_qgt1;
  tr.q = q;
  tr.label = instance_label(dim, q, a, b, u);

  const Foliation fa = foliate(a, q);
  const Foliation fb = foliate(b, q);
  const ClassFamily ca = classes_of(fa);
  const ClassFamily cb = classes_of(fb);
  tr.a_table = ca.table;
  tr.b_table = cb.table;
  tr.r_star = ca.star;
  tr.s_star = cb.star;
  tr.u_table = fiber_table(u);
  tr.p = static_cast<double>(fiber_count(u, 0)) / static_cast<double>(u.size());

  const PointSet s = triple_sum(a, b, u);
  const PointSet u_scaled = rescale_last(u, 0, q);

  // One family per side: fix the largest class there, sum over the classes
  // of the other side. Each term is handed to a rescaled child instance.
  for (char side : {'a', 'b'}) {
    const bool fix_a = side == 'a';
    const PointSet& fixed = fix_a ? fa.classes.at(ca.star) : fb.classes.at(cb.star);
    const Coord fixed_res = fix_a ? ca.star : cb.star;
    const Foliation& vary = fix_a ? fb : fa;
    const PointSet fixed_scaled = rescale_last(fixed, fixed_res, q);

    std::vector<Point> merged;
    std::size_t total = 0;
    double sqrt_sum = 0.0;

    for (const auto& [res, cls] : vary.classes) {
      const PointSet t =
          fix_a ? triple_sum(fixed, cls, u) : triple_sum(cls, fixed, u);
      const PointSet cls_scaled = rescale_last(cls, res, q);
      ProofTrace child = fix_a ? proof_trace(fixed_scaled, cls_scaled, u_scaled, rel_tol)
                               : proof_trace(cls_scaled, fixed_scaled, u_scaled, rel_tol);

      TraceStep st;
      st.name = fix_a ? "class_bound_a" : "class_bound_b";
      st.exact = true;
      st.lhs = static_cast<double>(t.size());
      const BigInt class_bound =
          BigInt(fixed.size()) * BigInt(cls.size()) * BigInt(u.size()) * BigInt(u.size());
      st.rhs = std::sqrt(to_double(class_bound));
      st.holds = BigInt(t.size()) * BigInt(t.size()) == child.lhs_sq &&
                 child.lhs_sq >= class_bound;
      std::ostringstream note;
      if (fix_a)
        note << "r*=" << ca.star << " s=" << res;
      else
        note << "r=" << res << " s*=" << cb.star;
      st.note = note.str();
      tr.steps.push_back(std::move(st));
      tr.children.push_back(std::move(child));

      total += t.size();
      sqrt_sum += std::sqrt(static_cast<double>(cls.size()));
      for (const Point& pt : t.points()) merged.push_back(pt);
    }

    std::sort(merged.begin(), merged.end());
    const bool disjoint = std::adjacent_find(merged.begin(), merged.end()) == merged.end();
    bool inside = true;
    for (const Point& pt : merged)
      if (!s.contains(pt)) {
        inside = false;
        break;
      }

    TraceStep cover;
    cover.name = fix_a ? "disjoint_cover_a" : "disjoint_cover_b";
    cover.exact = true;
    cover.lhs = static_cast<double>(s.size());
    cover.rhs = static_cast<double>(total);
    cover.holds = disjoint && inside && s.size() >= total;
    cover.note = fix_a ? "classes A_{r*}+B_s+U are disjoint inside A+B+U"
                       : "classes A_r+B_{s*}+U are disjoint inside A+B+U";
    tr.steps.push_back(std::move(cover));

    TraceStep csum;
    csum.name = fix_a ? "class_sum_a" : "class_sum_b";
    csum.exact = false;
    csum.lhs = static_cast<double>(total);
    csum.rhs = static_cast<double>(u.size()) *
               std::sqrt(static_cast<double>(fixed.size())) * sqrt_sum;
    csum.holds = csum.lhs >= csum.rhs * (1.0 - rel_tol);
    csum.note = fix_a ? "sum_s |A_{r*}+B_s+U| >= |U| sqrt(|A_{r*}|) sum_s sqrt(|B_s|)"
                      : "sum_r |A_r+B_{s*}+U| >= |U| sqrt(|B_{s*}|) sum_r sqrt(|A_r|)";
    tr.steps.push_back(std::move(csum));
  }

  // sqrt of the largest class dominates each sqrt(|class|) term, so the
  // cross products recover |A| and |B|.
  for (char side : {'a', 'b'}) {
    const ClassFamily& fam = side == 'a' ? ca : cb;
    const PointSet& whole = side == 'a' ? a : b;
    double sqrt_sum = 0.0;
    std::size_t star_size = 0;
    for (const auto& [res, sz] : fam.table) {
      sqrt_sum += std::sqrt(static_cast<double>(sz));
      if (res == fam.star) star_size = sz;
    }
    TraceStep st;
    st.name = side == 'a' ? "class_product_a" : "class_product_b";
    st.exact = false;
    st.lhs = std::sqrt(static_cast<double>(star_size)) * sqrt_sum;
    st.rhs = static_cast<double>(whole.size());
    st.holds = st.lhs >= st.rhs * (1.0 - rel_tol);
    st.note = side == 'a' ? "sqrt(|A_{r*}|) sum_r sqrt(|A_r|) >= |A|"
                          : "sqrt(|B_{s*}|) sum_s sqrt(|B_s|) >= |B|";
    tr.steps.push_back(std::move(st));
  }

  finish_trace(tr, a, b, u, s.size());
  return tr;
}

}  // namespace

CheckReport check_theorem(const PointSet& a, const PointSet& b, const PointSet& u,
                          bool require_quasicube) {
  if (a.dim() != b.dim() || a.dim() != u.dim())
    throw std::invalid_argument("check_theorem: dimension mismatch");
  if (require_quasicube && !u.empty() && !contained_in_quasicube(u))
    throw PreconditionError("check_theorem: U is not contained in any quasicube");

  CheckReport r;
  const PointSet s = triple_sum(a, b, u);
  r.lhs = s.size();
  r.lhs_sq = BigInt(r.lhs) * BigInt(r.lhs);
  r.rhs_sq = BigInt(a.size()) * BigInt(b.size()) * BigInt(u.size()) * BigInt(u.size());
  r.holds = r.lhs_sq >= r.rhs_sq;
  r.equality = r.lhs_sq == r.rhs_sq;
  if (r.rhs_sq > 0) r.ratio_sq = BigRational(r.lhs_sq, r.rhs_sq);
  return r;
}

ProofTrace proof_trace(const PointSet& a, const PointSet& b, const PointSet& u,
                       double rel_tol) {
  if (a.dim() != b.dim() || a.dim() != u.dim())
    throw std::invalid_argument("proof_trace: dimension mismatch");
  if (a.empty() || b.empty() || u.empty())
    throw std::invalid_argument("proof_trace: sets must be nonempty");
  const auto w = contained_in_quasicube(u);
  if (!w) throw PreconditionError("proof_trace: U is not contained in any quasicube");

  const Coord q = w->x1() - w->x0();
  const PointSet un = shift_last(u, -w->x0());
  if (q == 1) return fibering_trace(a, b, un, rel_tol);
  return foliation_trace(a, b, un, q, rel_tol);
}

}  // namespace qcube

#include "qcube/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "qcube/quasicube.hpp"

namespace qcube {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();
// Fixed chunk size keeps per-chunk results independent of the worker
// count, so merged summaries are reproducible.
constexpr std::uint64_t kChunkSize = 1024;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kU64Max / b) return kU64Max;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kU64Max - b ? kU64Max : a + b;
}

// sum_{k=1}^{cap} C(n, k), saturating at 2^64 - 1.
std::uint64_t subset_count(std::uint64_t n, std::uint64_t cap) {
  cap = std::min(cap, n);
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    binom = sat_mul(binom, n - k + 1);
    if (binom == kU64Max) return kU64Max;
    binom /= k;
    total = sat_add(total, binom);
    if (total == kU64Max) return kU64Max;
  }
  return total;
}

void check_box_limits(const Box& box, const char* what) {
  if (box.dim() < 1 || box.dim() > 4)
    throw std::invalid_argument(std::string(what) + ": dimension must be between 1 and 4");
  for (int i = 0; i < box.dim(); ++i) {
    if (box.bounds[i].first > box.bounds[i].second)
      throw std::invalid_argument(std::string(what) + ": empty side");
    if (box.side(i) > 6)
      throw std::invalid_argument(std::string(what) + ": more than 6 points per side");
  }
}

// Nonempty subsets of `cells` (sorted) with at most `cap` elements, by
// ascending size, then lexicographic combinations within each size.
template <typename Fn>
void for_each_subset(int dim, const std::vector<Point>& cells, std::size_t cap, Fn&& fn) {
  const std::size_t n = cells.size();
  cap = std::min(cap, n);
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= cap; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Point> pts;
      pts.reserve(k);
      for (std::size_t i : idx) pts.push_back(cells[i]);
      fn(PointSet(dim, std::move(pts)));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::vector<PointSet> canonical_subsets(const Box& box, std::size_t cap) {
  std::vector<PointSet> out;
  const std::vector<Point> cells = box.cells();
  for_each_subset(box.dim(), cells, cap, [&](PointSet s) {
    if (canonicalize(s) == s) out.push_back(std::move(s));
  });
  return out;
}

std::vector<PointSet> u_candidates(const ScanOptions& opt) {
  std::vector<PointSet> out;
  if (opt.u_source == USource::quasicube_subsets) {
    const PointSet& qc = *opt.u_quasicube;
    for_each_subset(qc.dim(), qc.points(), opt.max_u,
                    [&](PointSet s) { out.push_back(std::move(s)); });
  } else {
    const Box ub = opt.u_box.value_or(opt.box);
    for_each_subset(ub.dim(), ub.cells(), opt.max_u, [&](PointSet s) {
      if (contained_in_quasicube(s)) out.push_back(std::move(s));
    });
  }
  return out;
}

std::uint64_t estimate_instances(const ScanOptions& opt) {
  const std::uint64_t ncells = opt.box.cell_count();
  const std::uint64_t ea = subset_count(ncells, opt.max_a);
  const std::uint64_t eb = subset_count(ncells, opt.max_b);
  std::uint64_t un;
  if (opt.u_source == USource::quasicube_subsets)
    un = opt.u_quasicube->size();
  else
    un = opt.u_box.value_or(opt.box).cell_count();
  const std::uint64_t eu = subset_count(un, opt.max_u);
  return sat_mul(sat_mul(ea, eb), eu);
}

struct ChunkResult {
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> violations;  // flat instance indices
  std::vector<std::uint64_t> equalities;
  std::optional<BigRational> min_ratio;
  std::uint64_t min_index = 0;
  std::uint64_t traces_run = 0;
  std::uint64_t trace_invalid = 0;
  std::uint64_t trace_bound_violations = 0;
};

ChunkResult run_chunk(std::uint64_t chunk, std::uint64_t instances,
                      const std::vector<PointSet>& as, const std::vector<PointSet>& bs,
                      const std::vector<PointSet>& us, const ScanOptions& opt) {
  ChunkResult res;
  const std::uint64_t lo = chunk * kChunkSize;
  const std::uint64_t hi = std::min(instances, lo + kChunkSize);
  const std::uint64_t nb = bs.size();
  const std::uint64_t nu = us.size();
  for (std::uint64_t t = lo; t < hi; ++t) {
    const std::uint64_t ia = t / (nb * nu);
    const std::uint64_t ib = (t / nu) % nb;
    const std::uint64_t iu = t % nu;
    // Candidates were screened up front, so the per-instance containment
    // recheck is skipped.
    const CheckReport rep = check_theorem(as[ia], bs[ib], us[iu], false);
    ++res.checked;
    if (!rep.holds) res.violations.push_back(t);
    if (rep.equality) res.equalities.push_back(t);
    if (!res.min_ratio || *rep.ratio_sq < *res.min_ratio) {
      res.min_ratio = *rep.ratio_sq;
      res.min_index = t;
    }
    if (opt.run_traces) {
      const ProofTrace tr = proof_trace(as[ia], bs[ib], us[iu], opt.rel_tol);
      ++res.traces_run;
      if (!tr.valid) ++res.trace_invalid;
      if (tr.bound_sq > tr.lhs_sq || tr.lhs_sq != rep.lhs_sq || tr.bound_sq != rep.rhs_sq)
        ++res.trace_bound_violations;
    }
  }
  return res;
}

}  // namespace

BudgetError::BudgetError(std::uint64_t estimate, std::uint64_t budget)
    : std::runtime_error("scan budget exceeded: estimated " + std::to_string(estimate) +
                         " instances > budget " + std::to_string(budget)),
      estimate_(estimate),
      budget_(budget) {}

ScanSummary exhaustive_scan(const ScanOptions& opt) {
  check_box_limits(opt.box, "scan box");
  if (opt.u_source == USource::quasicube_subsets) {
    if (!opt.u_quasicube)
      throw std::invalid_argument("scan: u_quasicube is required for quasicube_subsets");
    if (opt.u_quasicube->dim() != opt.box.dim())
      throw std::invalid_argument("scan: u_quasicube dimension mismatch");
    if (!is_quasicube(*opt.u_quasicube))
      throw std::invalid_argument("scan: u_quasicube is not a quasicube");
  } else if (opt.u_box) {
    check_box_limits(*opt.u_box, "scan U box");
    if (opt.u_box->dim() != opt.box.dim())
      throw std::invalid_argument("scan: U box dimension mismatch");
  }

  const std::uint64_t estimate = estimate_instances(opt);
  if (estimate > opt.budget) throw BudgetError(estimate, opt.budget);

  const std::vector<PointSet> as = canonical_subsets(opt.box, opt.max_a);
  const std::vector<PointSet> bs = canonical_subsets(opt.box, opt.max_b);
  const std::vector<PointSet> us = u_candidates(opt);

  ScanSummary sum;
  sum.num_a = as.size();
  sum.num_b = bs.size();
  sum.num_u = us.size();
  sum.instances =
      static_cast<std::uint64_t>(sum.num_a) * sum.num_b * static_cast<std::uint64_t>(sum.num_u);
  if (sum.instances == 0) return sum;

  const std::uint64_t nchunks = (sum.instances + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> results(static_cast<std::size_t>(nchunks));
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mx;
  std::exception_ptr err;
  auto work = [&]() {
    try {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        results[static_cast<std::size_t>(c)] = run_chunk(c, sum.instances, as, bs, us, opt);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(err_mx);
      if (!err) err = std::current_exception();
    }
  };
  const int workers = std::max(1, opt.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  const std::uint64_t nb = bs.size();
  const std::uint64_t nu = us.size();
  const auto decode = [&](std::uint64_t t) {
    const std::uint64_t ia = t / (nb * nu);
    const std::uint64_t ib = (t / nu) % nb;
    const std::uint64_t iu = t % nu;
    return ScanInstance{t, as[static_cast<std::size_t>(ia)], bs[static_cast<std::size_t>(ib)],
                        us[static_cast<std::size_t>(iu)]};
  };

  bool have_min = false;
  std::uint64_t min_index = 0;
  for (const ChunkResult& r : results) {
    sum.checked += r.checked;
    sum.violations += r.violations.size();
    for (std::uint64_t t : r.violations)
      if (sum.violation_instances.size() < opt.max_equality_report)
        sum.violation_instances.push_back(decode(t));
    sum.equalities += r.equalities.size();
    for (std::uint64_t t : r.equalities)
      if (sum.equality_instances.size() < opt.max_equality_report)
        sum.equality_instances.push_back(decode(t));
    if (r.min_ratio && (!have_min || *r.min_ratio < *sum.min_ratio_sq)) {
      sum.min_ratio_sq = r.min_ratio;
      min_index = r.min_index;
      have_min = true;
    }
    sum.traces_run += r.traces_run;
    sum.trace_invalid += r.trace_invalid;
    sum.trace_bound_violations += r.trace_bound_violations;
  }
  if (have_min) sum.min_instance = decode(min_index);
  return sum;
}

namespace {

// Unbiased draw from [0, n). Hand rolled because the standard library's
// uniform_int_distribution mapping is implementation-defined; mt19937_64
// itself is pinned by the standard, so this is reproducible everywhere.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= min) return v % n;
  }
}

PointSet random_subset(std::mt19937_64& rng, int dim, const std::vector<Point>& cells,
                       std::size_t size) {
  std::vector<std::size_t> chosen;
  while (chosen.size() < size) {
    const std::size_t c = static_cast<std::size_t>(uniform_below(rng, cells.size()));
    if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
  }
  std::vector<Point> pts;
  pts.reserve(size);
  for (std::size_t c : chosen) pts.push_back(cells[c]);
  return PointSet(dim, std::move(pts));
}

// One-point mutation: 0 adds, 1 removes, 2 moves. Returns nothing when the
// drawn mutation is not applicable.
std::optional<PointSet> mutate(std::mt19937_64& rng, const PointSet& s,
                               const std::vector<Point>& cells, std::size_t cap) {
  const std::uint64_t op = uniform_below(rng, 3);
  std::vector<Point> pts(s.points());
  if (op == 0) {
    if (s.size() >= cap || s.size() >= cells.size()) return std::nullopt;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Point& c = cells[static_cast<std::size_t>(uniform_below(rng, cells.size()))];
      if (!s.contains(c)) {
        pts.push_back(c);
        return PointSet(s.dim(), std::move(pts));
      }
    }
    return std::nullopt;
  }
  if (op == 1) {
    if (s.size() < 2) return std::nullopt;
    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(uniform_below(rng, pts.size())));
    return PointSet(s.dim(), std::move(pts));
  }
  if (s.size() >= cells.size()) return std::nullopt;
  const std::size_t victim = static_cast<std::size_t>(uniform_below(rng, pts.size()));
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Point& c = cells[static_cast<std::size_t>(uniform_below(rng, cells.size()))];
    if (!s.contains(c)) {
      pts[victim] = c;
      return PointSet(s.dim(), std::move(pts));
    }
  }
  return std::nullopt;
}

}  // namespace

SearchResult extremal_search(const SearchOptions& opt) {
  if (opt.box.dim() < 1)
    throw std::invalid_argument("search: box dimension must be >= 1");
  for (int i = 0; i < opt.box.dim(); ++i)
    if (opt.box.bounds[i].first > opt.box.bounds[i].second)
      throw std::invalid_argument("search: empty box side");
  if (opt.max_a == 0 || opt.max_b == 0 || opt.max_u == 0)
    throw std::invalid_argument("search: size caps must be >= 1");

  const int dim = opt.box.dim();
  const std::vector<Point> cells = opt.box.cells();
  std::mt19937_64 rng(opt.seed);

  const std::size_t cap_a = std::min(opt.max_a, cells.size());
  const std::size_t cap_b = std::min(opt.max_b, cells.size());
  const std::size_t cap_u = std::min(opt.max_u, cells.size());

  const PointSet a0 =
      random_subset(rng, dim, cells, 1 + static_cast<std::size_t>(uniform_below(rng, cap_a)));
  const PointSet b0 =
      random_subset(rng, dim, cells, 1 + static_cast<std::size_t>(uniform_below(rng, cap_b)));
  std::optional<PointSet> u0;
  for (int attempt = 0; attempt < 1000 && !u0; ++attempt) {
    PointSet cand =
        random_subset(rng, dim, cells, 1 + static_cast<std::size_t>(uniform_below(rng, cap_u)));
    if (contained_in_quasicube(cand)) u0 = std::move(cand);
  }
  if (!u0) u0 = random_subset(rng, dim, cells, 1);  // a singleton always fits

  SearchResult res{ScanInstance{0, a0, b0, *u0}};
  res.best_report = check_theorem(a0, b0, *u0, false);
  res.best_ratio_sq = *res.best_report.ratio_sq;
  res.trajectory.push_back({0, res.best_ratio_sq});

  for (std::uint64_t step = 1; step <= opt.steps; ++step) {
    ++res.proposals;
    const std::uint64_t which = uniform_below(rng, 3);
    const PointSet& cur = which == 0 ? res.best.a : which == 1 ? res.best.b : res.best.u;
    const std::size_t cap = which == 0 ? cap_a : which == 1 ? cap_b : cap_u;
    std::optional<PointSet> prop = mutate(rng, cur, cells, cap);
    if (!prop) continue;
    if (which == 2 && !contained_in_quasicube(*prop)) continue;

    const PointSet& na = which == 0 ? *prop : res.best.a;
    const PointSet& nb = which == 1 ? *prop : res.best.b;
    const PointSet& nu = which == 2 ? *prop : res.best.u;
    CheckReport rep = check_theorem(na, nb, nu, false);
    if (*rep.ratio_sq < res.best_ratio_sq) {
      ++res.accepted;
      res.best = ScanInstance{step, na, nb, nu};
      res.best_ratio_sq = *rep.ratio_sq;
      res.best_report = std::move(rep);
      res.trajectory.push_back({step, res.best_ratio_sq});
    }
  }
  return res;
}

}  // namespace qcube

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcube/lattice.hpp"
#include "qcube/verifier.hpp"

namespace qcube {

// Where the U candidates of a scan come from.
enum class USource {
  quasicube_subsets,  // nonempty subsets of one pinned quasicube
  contained_in_box    // subsets of a box that fit inside some quasicube
};

struct ScanOptions {
  Box box;  // ambient box for A and B candidates
  // Size caps. Effectively unbounded by default (the box itself bounds
  // subset sizes); a cap of 0 makes that candidate list empty, so the scan
  // is vacuous.
  std::size_t max_a = SIZE_MAX;
  std::size_t max_b = SIZE_MAX;
  std::size_t max_u = SIZE_MAX;
  USource u_source = USource::contained_in_box;
  std::optional<PointSet> u_quasicube;  // required for quasicube_subsets
  std::optional<Box> u_box;             // contained_in_box; defaults to box
  std::uint64_t budget = 10'000'000;    // refuse if the estimate exceeds this
  int workers = 1;
  std::size_t max_equality_report = 256;  // cap on reported instance lists
  bool run_traces = false;                // replay the proof on every instance
  double rel_tol = 1e-9;                  // tolerance for trace replay
};

// Raised before any enumeration when the a-priori instance estimate is
// over budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t estimate, std::uint64_t budget);
  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t budget_;
};

struct ScanInstance {
  std::uint64_t index;  // flat enumeration index (a-major, then b, then u)
  PointSet a, b, u;
};

// Scan outcome. Deterministic for fixed options: independent of the worker
// count, instance lists are reported in enumeration order and capped at
// max_equality_report entries.
struct ScanSummary {
  std::size_t num_a = 0, num_b = 0, num_u = 0;
  std::uint64_t instances = 0;  // num_a * num_b * num_u
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t equalities = 0;
  std::optional<BigRational> min_ratio_sq;  // min over checked instances
  std::optional<ScanInstance> min_instance;
  std::vector<ScanInstance> violation_instances;
  std::vector<ScanInstance> equality_instances;
  std::uint64_t traces_run = 0;
  std::uint64_t trace_invalid = 0;
  std::uint64_t trace_bound_violations = 0;
};

// Checks the sumset bound on every instance of the option-defined space:
// A and B range over canonical (min corner at the origin) nonempty subsets
// of the box, U over the configured source. Refuses with BudgetError when
// the up-front estimate exceeds the budget, and with invalid_argument for
// boxes beyond dimension 4 or more than 6 points per side.
ScanSummary exhaustive_scan(const ScanOptions& opt);

struct SearchOptions {
  Box box;  // ambient box for all three sets
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;
  std::size_t max_a = 8, max_b = 8, max_u = 4;  // size caps
};

struct TrajectoryEntry {
  std::uint64_t step;
  BigRational ratio_sq;
};

struct SearchResult {
  ScanInstance best;  // index is the step that produced it
  CheckReport best_report;
  BigRational best_ratio_sq = 0;
  std::vector<TrajectoryEntry> trajectory;  // strict improvements, step 0 first
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

// Random local search for instances minimizing |A+B+U|^2 / (|A| |B| |U|^2).
// Mutations add, remove or move a single point of one of the three sets;
// U proposals that leave every quasicube are rejected. Fully deterministic
// for a fixed seed, across platforms and standard libraries.
SearchResult extremal_search(const SearchOptions& opt);

}  // namespace qcube

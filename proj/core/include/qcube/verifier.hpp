#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcube/lattice.hpp"
#include "qcube/maxconv.hpp"
#include "qcube/quasicube.hpp"

namespace qcube {

// Thrown when an input fails a structural requirement (e.g. U is required
// to sit inside a quasicube but does not), as opposed to a malformed
// argument. Callers can map this to a distinct exit path.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Outcome of the sumset lower bound |A+B+U| >= |A|^{1/2} |B|^{1/2} |U|,
// evaluated without rounding by comparing squares.
struct CheckReport {
  std::size_t lhs = 0;             // |A+B+U|
  BigInt lhs_sq = 0;               // |A+B+U|^2
  BigInt rhs_sq = 0;               // |A| * |B| * |U|^2
  bool holds = true;
  bool equality = false;
  std::optional<BigRational> ratio_sq;  // lhs_sq / rhs_sq, absent when rhs_sq = 0
};

// Verifies the bound exactly. When require_quasicube is set (the default),
// U must be contained in some quasicube or PreconditionError is thrown;
// pass false to evaluate the inequality on arbitrary U.
CheckReport check_theorem(const PointSet& a, const PointSet& b, const PointSet& u,
                          bool require_quasicube = true);

enum class TraceBranch {
  base_d1,        // d = 1, step 1: weighted PL on indicator weights
  fibering_q1,    // d >= 2, step 1: fiber along the last coordinate
  foliation_qgt1  // step q > 1: split into residue classes mod q
};

struct TraceStep {
  std::string name;
  bool exact = false;  // integer/set comparison vs floating-point at rel_tol
  bool holds = false;
  double lhs = 0;
  double rhs = 0;
  std::string note;
};

// Structured replay of the inductive proof of the bound for one instance.
// Each node records the branch taken, the per-step comparisons, and the
// child instances the induction recurses into. `valid` requires every step
// of this node and every descendant to hold.
struct ProofTrace {
  int dim = 0;
  TraceBranch branch = TraceBranch::base_d1;
  Coord q = 1;    // step of the quasicube witness containing U
  double p = 0;   // fiber weight |U_0| / |U| (q = 1 branches)
  std::string label;

  // q = 1: fiber sizes keyed by last coordinate. q > 1: class sizes keyed
  // by residue mod q for a/b; u_table still holds the two level fibers.
  std::vector<std::pair<Coord, std::size_t>> a_table, b_table, u_table;
  Coord r_star = 0, s_star = 0;  // largest classes (q > 1 branch)

  WeightFn a_weights, b_weights;  // a(x) = |A_x|^{1/2}, b(y) = |B_y|^{1/2} (q = 1)
  std::optional<PLReport> pl;     // weighted PL check (q = 1 branches)
  std::vector<TraceStep> steps;
  std::vector<ProofTrace> children;

  BigInt lhs_sq = 0;    // |A+B+U|^2 at this node
  BigInt bound_sq = 0;  // |A| * |B| * |U|^2 at this node
  bool valid = false;
};

// Builds the proof trace for nonempty A, B and U of equal dimension; U must
// be contained in a quasicube (PreconditionError otherwise). Floating-point
// steps are accepted within rel_tol; integer and set steps are exact.
ProofTrace proof_trace(const PointSet& a, const PointSet& b, const PointSet& u,
                       double rel_tol = 1e-9);

}  // namespace qcube

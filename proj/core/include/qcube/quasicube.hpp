// Quasicube recognition, containment with witnesses, and in-box enumeration.
//
// A quasicube in Z^1 is any two-point set. In Z^d the last-coordinate
// projection must take exactly two values and both fibers must be
// quasicubes of Z^{d-1}, so a quasicube always has exactly 2^d points.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qcube/lattice.hpp"

namespace qcube {

// Recursive certificate for a quasicube: the two last-coordinate values
// plus a child witness per fiber. Children are shared so enumeration can
// reuse subtrees.
class QuasicubeWitness {
 public:
  // d = 1 leaf.
  QuasicubeWitness(Coord x0, Coord x1);
  // d > 1 node; children must both have dimension dim - 1.
  QuasicubeWitness(int dim, Coord x0, Coord x1,
                   std::shared_ptr<const QuasicubeWitness> child0,
                   std::shared_ptr<const QuasicubeWitness> child1);

  int dim() const { return dim_; }
  Coord x0() const { return x0_; }
  Coord x1() const { return x1_; }
  const QuasicubeWitness& child0() const { return *child0_; }
  const QuasicubeWitness& child1() const { return *child1_; }
  std::shared_ptr<const QuasicubeWitness> child0_ptr() const { return child0_; }
  std::shared_ptr<const QuasicubeWitness> child1_ptr() const { return child1_; }

  friend bool operator==(const QuasicubeWitness& a, const QuasicubeWitness& b);

 private:
  int dim_;
  Coord x0_, x1_;  // normalized so x0 < x1
  std::shared_ptr<const QuasicubeWitness> child0_, child1_;
};

// The 2^d-point set a witness denotes.
PointSet materialize(const QuasicubeWitness& w);

// Witness when s is a quasicube, nullopt otherwise.
std::optional<QuasicubeWitness> is_quasicube(const PointSet& s);

// Witness for a quasicube superset of u, nullopt when none exists.
// u must be nonempty. Missing structure is padded deterministically: a
// single last-coordinate value x0 gets a twin level at x0 + 1 carrying a
// copy of the padded fiber, and a d = 1 singleton {u} pads to {u, u+1}.
std::optional<QuasicubeWitness> contained_in_quasicube(const PointSet& u);

// Optional permutation-closure mode: tries every coordinate permutation
// in lexicographic order and returns the first (permutation, witness)
// pair that works. The witness certifies the permuted copy of u.
struct PermutedContainment {
  std::vector<int> permutation;  // new_coords[i] = old_coords[permutation[i]]
  QuasicubeWitness witness;
};
std::optional<PermutedContainment> contained_in_quasicube_permuted(const PointSet& u);

PointSet apply_permutation(const PointSet& s, const std::vector<int>& perm);

// Every quasicube whose points lie in the box, each exactly once, in a
// deterministic order. With canonical = true only one placement per
// translation class is emitted: the one whose coordinatewise minimum sits
// at the box's low corner. The visitor returns false to stop early.
void enumerate_quasicubes(const Box& box, bool canonical,
                          const std::function<bool(const QuasicubeWitness&)>& visit);
std::vector<QuasicubeWitness> enumerate_quasicubes(const Box& box, bool canonical = false);

std::uint64_t count_quasicubes_in_box(const Box& box);

}  // namespace qcube

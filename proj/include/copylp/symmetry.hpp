#pragma once

#include <string>
#include <vector>

#include "copylp/constraint.hpp"
#include "copylp/lp_model.hpp"

namespace copylp {

/// A permutation of variable indices. Indices at or beyond `image.size()`
/// are fixed points.
struct Perm {
  std::vector<int> image;

  static Perm identity(int n);
  /// Product of disjoint or overlapping cycles, applied right to left.
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int operator()(int i) const {
    return i < static_cast<int>(image.size()) ? image[static_cast<std::size_t>(i)] : i;
  }
  int size() const { return static_cast<int>(image.size()); }
  bool is_identity() const;
  /// Throws Error unless `image` is a bijection on 0..size-1.
  void validate() const;
  /// Cycle notation over names, e.g. `(A B)(C D)`; `()` for the identity.
  std::string format(const std::vector<std::string>& names) const;

  friend bool operator==(const Perm& a, const Perm& b);
};

/// (g * h)(i) = g(h(i)).
Perm compose(const Perm& g, const Perm& h);
Perm inverse(const Perm& g);

/// Elementwise image of a variable set.
VarSet act(const Perm& g, VarSet v);

/// A finite permutation group: its generators and the full element list,
/// identity first, in breadth-first order of generator products.
class PermGroup {
 public:
  PermGroup() = default;

  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.empty() ? 1 : elements_.size(); }
  bool trivial() const { return order() == 1; }
  /// Largest permutation length among the generators.
  int degree() const { return degree_; }

  friend PermGroup closure(const std::vector<Perm>& generators);

 private:
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  int degree_ = 0;
};

/// Breadth-first closure of the generators. Throws on a non-bijective input.
PermGroup closure(const std::vector<Perm>& generators);

/// { act(g, v) : g in G }, sorted by mask.
std::vector<VarSet> orbit(const PermGroup& group, VarSet v);
/// Minimal mask in the orbit of v.
VarSet representative(const PermGroup& group, VarSet v);

/// H(V) - H(rep(V)) = 0 for every non-empty V over the first n variables
/// whose orbit representative differs from V; labelled `sym:{V}~{rep}`.
std::vector<Constraint> invariance_equalities(const PermGroup& group, int n,
                                              const std::vector<std::string>& names);

/// Rewrites an LP onto orbit representatives: every coordinate is replaced by
/// its representative, coefficients are summed, rows that become `0 >= b`
/// with b <= 0 or `0 = 0` vanish and duplicate rows merge (the first label
/// wins). The group must preserve the row set and fix the objective; the
/// check names the offending generator and row otherwise. The epigraph column
/// is a fixed point.
LP quotient_reduce(const LP& lp, const PermGroup& group);

}  // namespace copylp

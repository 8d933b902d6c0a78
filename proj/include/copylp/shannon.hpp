#pragma once

#include <vector>

#include "copylp/constraint.hpp"

namespace copylp {

/// The elemental Shannon inequalities over n variables, sorted by label:
///   H(X_i | X_rest) >= 0             labelled `elem:H(i|rest)`
///   I(X_i ; X_j | X_K) >= 0, i < j   labelled `elem:I(i;j|{k1,k2,...})`
/// Indices in labels are 1-based. There are n + C(n,2) 2^(n-2) of them.
std::vector<Constraint> elemental_inequalities(int n);

/// n + C(n,2) 2^(n-2).
long long elemental_count(int n);

/// True iff every elemental inequality holds at `point` up to `slack`.
/// Throws when `point` does not have 2^n - 1 coordinates.
template <class Scalar>
bool is_shannon_feasible(const Profile<Scalar>& point, int n, const Scalar& slack = Scalar(0)) {
  if (n < 1 || n > 20) throw Error("is_shannon_feasible: variable count out of range");
  if (point.size() != coordinate_count(n))
    throw Error("is_shannon_feasible: missing coordinate (expected " +
                std::to_string(coordinate_count(n)) + " values)");
  const VarSet::Mask full = VarSet::prefix(n).mask();
  auto h = [&](VarSet::Mask m) -> Scalar { return m == 0 ? Scalar(0) : point(m - 1); };
  for (int i = 0; i < n; ++i) {
    VarSet::Mask rest = full & ~(VarSet::Mask{1} << i);
    if (h(full) - h(rest) < -slack) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VarSet::Mask others = full & ~((VarSet::Mask{1} << i) | (VarSet::Mask{1} << j));
      // Iterate all subsets K of `others`.
      for (VarSet::Mask k = others;; k = (k - 1) & others) {
        const VarSet::Mask ki = k | (VarSet::Mask{1} << i), kj = k | (VarSet::Mask{1} << j);
        if (h(ki) + h(kj) - h(ki | kj) - h(k) < -slack) return false;
        if (k == 0) break;
      }
    }
  }
  return true;
}

}  // namespace copylp

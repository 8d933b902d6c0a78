#pragma once

#include <string>
#include <vector>

#include "copylp/constraint.hpp"

namespace copylp {

/// One application of the Copy Lemma, `Z' := Y-copy(Z | X)`.
///
/// Each entry of `copied` is a tuple of existing variables that becomes one
/// new (composite) variable named by the matching entry of `new_names`.
/// `over` is X and `context` is Y. The copied tuples and `over` must be
/// pairwise disjoint and `context` must not meet `over`; `context` may repeat
/// copied variables, since I(Z'; Y,Z | X) only sees Y u Z.
struct CopyStep {
  std::vector<VarSet> copied;
  VarSet over;
  VarSet context;
  std::vector<std::string> new_names;

  VarSet originals() const {
    VarSet all;
    for (VarSet z : copied) all |= z;
    return all;
  }
  friend bool operator==(const CopyStep&, const CopyStep&) = default;
};

struct CopyResult {
  std::vector<std::string> variables;  ///< old list followed by the copies
  VarSet copies;                       ///< the new variables
  std::vector<Constraint> constraints; ///< substitution equalities, then independence
};

/// Checks the step against `variables`; throws Error on a name collision,
/// overlap, unknown index or capacity overflow.
void validate_copy_step(const CopyStep& step, const std::vector<std::string>& variables);

/// Appends the copies and emits
///   H(T) = H(sigma(T)) for every T in X u {copies} meeting the copies, where
///   sigma replaces each copy by its original tuple, labelled
///   `<prefix>:{T}~{sigma(T)}`; and
///   I(copies ; Y u Z | X) = 0, labelled `<prefix>:indep`.
/// With m = |X| and k copies there are 2^(m+k) - 2^m substitution equalities.
CopyResult apply_copy_step(const CopyStep& step, const std::vector<std::string>& variables,
                           const std::string& label_prefix);

/// Merges the independence conditions of two steps over the same X, where the
/// second step's context contains the first step's copies, into
///   H(originals, c1, c2 | X) = H(originals | X) + H(c1 | X) + H(c2 | X).
/// `first_copies` and `second_copies` are the variables the steps introduced.
Constraint merged_independence(const CopyStep& first, VarSet first_copies,
                               const CopyStep& second, VarSet second_copies,
                               const std::string& label);

}  // namespace copylp

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "copylp/constraint.hpp"
#include "copylp/extension.hpp"
#include "copylp/symmetry.hpp"

namespace copylp {

struct Objective {
  enum class Kind { kLinear, kMinMax };
  Kind kind = Kind::kLinear;
  /// One form for kLinear; the candidates of the max for kMinMax.
  std::vector<LinearForm> forms;

  friend bool operator==(const Objective&, const Objective&) = default;
};

/// A bound-finding problem: minimize the objective over almost-entropic
/// points satisfying the constraints, extended by the copy steps.
///
/// `variables` lists the ground variables followed by the copies, in the
/// order the copy steps introduce them. Symmetry generators act on variable
/// indices; their invariance equalities range over the first
/// `symmetry_scope` variables (the variables declared before the last
/// `symmetry` statement).
struct Problem {
  std::string name;
  std::vector<std::string> variables;
  int ground_count = 0;
  std::vector<Constraint> constraints;
  std::vector<CopyStep> copy_steps;
  std::vector<Perm> symmetry;
  int symmetry_scope = 0;
  std::optional<Constraint> normalization;  ///< `form - value = 0`, label `norm`
  Objective objective;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Throws Error if names collide, copy steps are inconsistent with the
/// variable list, or any form mentions a variable out of scope.
void validate(const Problem& problem);

/// Ing(A,B,C,D) -> min under H(A,B,C,D) = 1, with the symmetry (A B), (C D)
/// and the copy steps
///   (R,S) := {}-copy(B,D | A,C), T := (D,R)-copy(C | A,B,S),
///   U := D-copy(B | A,C,R,S,T).
Problem builtin_ingleton();

/// Information ratio of the access structure V0 on the Vamos matroid:
/// max(H(S1..S7)) -> min under H(S0) = 1, the access conditions, the
/// symmetry (S2 S3), (S4 S5), (S6 S7), (S2 S4)(S3 S5) and two pair copies of
/// V = (S0,S1), W = (S6,S7) over (S2,S3,S4,S5). With `swap_copies` the
/// symmetry also exchanges the two copy pairs.
Problem builtin_vamos_v0(bool swap_copies = false);

/// Minimal qualified sets of V0 as 1-based share index sets.
std::vector<VarSet> vamos_minimal_qualified();
/// Maximal unqualified sets of V0 as 1-based share index sets.
std::vector<VarSet> vamos_maximal_unqualified();

/// `ingleton` or `vamos-v0`; throws Error for other names.
Problem builtin_problem(const std::string& name);

/// Parses the problem language; errors carry line and column.
Problem parse_problem(std::string_view text);
/// Canonical text; `parse_problem(emit_problem(p)) == p`.
std::string emit_problem(const Problem& problem);

}  // namespace copylp

#pragma once

#include <string>
#include <vector>

#include "copylp/lp_model.hpp"
#include "copylp/problem.hpp"

namespace copylp {

enum class SymmetryMode { kOff, kInvarianceEqs, kQuotient };

std::string to_string(SymmetryMode mode);
/// `off`, `invariance-eqs` or `quotient`.
SymmetryMode parse_symmetry_mode(const std::string& text);
/// Quotient for problems with at least 10 variables, invariance equalities
/// below that, off without a group.
SymmetryMode default_symmetry(const Problem& problem);

struct BuildOptions {
  SymmetryMode symmetry = SymmetryMode::kOff;
  /// Replace the two independence rows of consecutive copy steps over the
  /// same X (the second seeing the first's copies) by one merged row.
  bool merged_independence = false;
  bool copy_steps = true;
  /// 1-based indices of copy steps to leave out.
  std::vector<int> drop_copy_steps;
};

/// One-line summary of the options, used in certificate headers.
std::string describe(const BuildOptions& options);
/// Inverse of describe(). Throws Error on unknown keys or values.
BuildOptions parse_options(const std::string& text);

/// Assembles the LP. Rows come in the order: problem constraints, symmetry
/// equalities, copy constraints (`copy<k>:`), merged independence rows,
/// normalization, elemental inequalities over all variables, epigraph rows
/// (`epi:<k>`). Columns are all 2^n - 1 coordinates by mask, then `t` for a
/// min-max objective. Throws Error when the quotient check fails or a kept
/// copy step depends on a dropped one.
LP build_lp(const Problem& problem, const BuildOptions& options);

/// Plain-text interchange format, see README.
std::string emit_lp(const LP& lp);

// ---------------------------------------------------------------------------
// Solvers

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kFailed };

std::string to_string(SolveStatus status);

/// Result of minimizing an LP. `primal` is indexed by column, `dual` by row.
/// The dual satisfies sum_i dual_i * row_i = objective, with dual_i >= 0 on
/// inequality rows, and value = sum_i dual_i * rhs_i + objective_constant.
template <class Scalar>
struct Solution {
  SolveStatus status = SolveStatus::kFailed;
  Scalar value = Scalar(0);
  Vector<Scalar> primal;
  Vector<Scalar> dual;
  /// Basic variables of the dual program: row indices, or
  /// `row_count + k` for the artificial of column k.
  std::vector<int> basis;
  long iterations = 0;
  std::string message;
};

struct FloatOptions {
  double tolerance = 1e-9;
  /// Equilibrate the rows before solving.
  bool row_scaling = false;
  long max_iterations = 1'000'000;
  int refactor_interval = 64;
  bool verbose = false;
};

struct ExactOptions {
  /// Start from the basis of a floating-point solve.
  bool warm_start = true;
  FloatOptions float_options;
  long max_pivots = 100'000;
  bool verbose = false;
};

Solution<double> solve_float(const LP& lp, const FloatOptions& options = {});
Solution<Rational> solve_exact(const LP& lp, const ExactOptions& options = {});

}  // namespace copylp

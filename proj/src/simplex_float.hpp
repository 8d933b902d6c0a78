#pragma once

#include <string>
#include <vector>

#include "copylp/lp.hpp"
#include "dual_form.hpp"

namespace copylp::detail {

/// Status of the dual program itself.
enum class DualStatus { kOptimal, kInfeasible, kUnbounded, kFailed };

struct FloatRun {
  DualStatus status = DualStatus::kFailed;
  std::vector<int> basis;   ///< basic variable per equation
  Eigen::VectorXd values;   ///< value of every dual variable, unscaled (y')
  Eigen::VectorXd pi;       ///< equation multipliers
  long iterations = 0;
  std::string message;
};

/// Two-phase revised primal simplex on `min f'y, A y = rhs`, followed by a
/// dual simplex cleanup once the rhs perturbation is removed.
FloatRun run_float_simplex(const DualForm& form, const FloatOptions& options, bool zero_rhs = false);

}  // namespace copylp::detail

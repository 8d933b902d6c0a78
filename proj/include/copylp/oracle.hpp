#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "copylp/extension.hpp"
#include "copylp/linear_form.hpp"

namespace copylp {

/// A joint distribution of finitely supported variables. Variable i takes
/// values 0..support[i]-1; outcomes with probability zero are not stored.
struct JointDist {
  std::vector<std::string> variables;
  std::vector<int> support;
  std::map<std::vector<int>, Rational> prob;

  int size() const { return static_cast<int>(variables.size()); }
  /// Throws Error unless supports are positive, outcomes are in range and
  /// the probabilities are nonnegative and sum to exactly 1.
  void validate() const;
};

/// Integer weights in 0..9 on every outcome (at least one positive),
/// normalized. Supports are drawn from 1..max_support.
JointDist random_dist(const std::vector<std::string>& variables, int max_support, std::mt19937_64& rng);

/// Uniform distribution on the listed outcomes.
JointDist uniform_on(const std::vector<std::string>& variables, const std::vector<int>& support,
                     const std::vector<std::vector<int>>& outcomes);

/// H(X_V) in bits for every non-empty V, by mask.
Profile<double> entropy_profile(const JointDist& d);

/// Appends one variable per copied tuple. Given the value of `over`, the
/// copies follow the conditional law of the originals and are independent
/// of everything else. A copied tuple's value is the mixed-radix encoding of
/// its members' values, first member least significant.
JointDist copy_extend(const JointDist& d, const CopyStep& step);

/// Independent joint distribution of the variables of a followed by those of b.
JointDist product(const JointDist& a, const JointDist& b);

}  // namespace copylp

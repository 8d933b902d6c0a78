#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "copylp/lp.hpp"

namespace copylp {

/// A dual certificate: rational multipliers on labelled LP rows whose
/// weighted sum is the target form, so `target >= 0` holds wherever the
/// rows do. The epigraph scalar of a min-max LP appears in the target as
/// `target_t`.
struct Certificate {
  struct Entry {
    std::string label;
    Rational multiplier;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::string problem;
  std::string options;  ///< describe(BuildOptions)
  std::string lp_hash;  ///< fnv1a_hex(emit_lp(lp))
  std::vector<std::string> variables;
  LinearForm target;
  Rational target_t = 0;
  Rational bound = 0;  ///< claimed optimum
  /// Positive factor relating the target to the claim: target equals
  /// scale * (objective - bound) plus a multiple of the normalization row.
  Rational scale = 1;
  std::vector<Entry> entries;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct VerifyReport {
  bool pass = false;
  std::vector<std::string> unknown_labels;
  std::vector<std::string> sign_violations;
  /// Coordinates where sum - target is nonzero, rendered `H(A,B): 3/2`.
  std::vector<std::string> residuals;
  /// The target states `objective >= bound` under the normalization.
  bool claim_ok = false;
  bool hash_matches = true;
  std::size_t entries = 0;
};

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Sums the weighted rows exactly and compares with the target coordinate by
/// coordinate; inequality rows need nonnegative multipliers.
VerifyReport verify(const Certificate& cert, const LP& lp);
std::string format_report(const VerifyReport& report);

/// Nonzero multipliers of an optimal solution, except the normalization
/// row, which is folded into the target:
///   target = objective - value * normalization form   (>= 0).
/// All multipliers and the target are scaled by the least common
/// denominator of the multipliers. Throws on a non-optimal solution.
Certificate from_dual(const Solution<Rational>& solution, const LP& lp, const std::string& options);

/// Rationalizes floating-point multipliers by continued fractions and keeps
/// the first denominator cap whose certificate verifies. Returns false if
/// none does.
bool certify_float(const Solution<double>& solution, const LP& lp, const std::string& options,
                   Certificate& out);

std::string emit_certificate(const Certificate& cert);
/// Errors carry line and column.
Certificate parse_certificate(std::string_view text);

}  // namespace copylp

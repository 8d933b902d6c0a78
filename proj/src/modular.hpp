#pragma once

// Exact solves with a sparse integer basis: LU modulo a word prime plus
// Dixon p-adic lifting and rational reconstruction.

#include <cstdint>
#include <utility>
#include <vector>

#include "copylp/rational.hpp"

namespace copylp::detail {

using IntColumn = std::vector<std::pair<int, Integer>>;

/// LU factorization of a square matrix modulo p, with dynamic pivoting that
/// prefers sparse columns and rows. Rank deficiency is reported rather than
/// thrown.
class ModularLU {
 public:
  ModularLU() = default;

  /// Factors the m x m matrix whose columns are `cols`. Returns false if the
  /// matrix is singular modulo p; `dependent()` then lists the offending
  /// column positions and `uncovered()` the rows left without a pivot.
  bool factor(const std::vector<const IntColumn*>& cols, int m, std::uint32_t p);

  const std::vector<int>& dependent() const { return dependent_; }
  const std::vector<int>& uncovered() const { return uncovered_; }
  std::uint32_t prime() const { return p_; }

  /// In place: b <- B^{-1} b (mod p).
  void solve(std::vector<std::uint64_t>& b) const;
  /// In place: b <- B^{-T} b (mod p).
  void solve_transpose(std::vector<std::uint64_t>& b) const;

 private:
  struct Step {
    int row;
    int col;
    std::uint64_t inv_pivot;
    std::vector<std::pair<int, std::uint64_t>> lower;  ///< (row, multiplier)
    std::vector<std::pair<int, std::uint64_t>> upper;  ///< (col, value), later columns
  };
  int m_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Step> steps_;
  std::vector<int> dependent_;
  std::vector<int> uncovered_;
};

/// Solves B x = r (or B^T x = r) exactly for a nonsingular integer B given by
/// columns. The factorization is computed once and reused.
class ExactSolver {
 public:
  /// Returns false when B is singular modulo every tried prime; the
  /// dependent column positions of the last attempt are kept.
  bool factor(std::vector<const IntColumn*> cols, int m);

  const std::vector<int>& dependent() const { return lu_.dependent(); }
  const std::vector<int>& uncovered() const { return lu_.uncovered(); }

  /// Exact solution with a common denominator: x = num / den.
  struct Result {
    std::vector<Integer> num;
    Integer den;
    Rational at(std::size_t i) const {
      Rational r(num[i], den);
      r.canonicalize();
      return r;
    }
  };
  Result solve(const std::vector<Integer>& rhs) const { return lift(rhs, false); }
  Result solve_transpose(const std::vector<Integer>& rhs) const { return lift(rhs, true); }

 private:
  Result lift(const std::vector<Integer>& rhs, bool transpose) const;
  void multiply(const std::vector<Integer>& x, bool transpose, std::vector<Integer>& out) const;

  std::vector<const IntColumn*> cols_;
  int m_ = 0;
  ModularLU lu_;
};

/// Rational reconstruction of u modulo `modulus` with numerator and
/// denominator bounded by `bound`. Returns false if none exists.
bool reconstruct(const Integer& u, const Integer& modulus, const Integer& bound, Integer& num,
                 Integer& den);

}  // namespace copylp::detail

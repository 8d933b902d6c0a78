#pragma once

// The dual of an LP in the shape both simplex codes work on.
//
// For   min c'x + c0  s.t.  a_i'x >= b_i (i in I), a_i'x = b_i (i in E),  x free
// the dual is   max b'y  s.t.  sum_i y_i a_i = c,  y_I >= 0,  y_E free.
// Rows are scaled to integers (row i by s_i) and c by sigma, so the program
// solved is  min f'y  s.t.  A y = rhs  with integer A, f = -s*b, rhs = sigma*c.
// Every equation k also carries an artificial column art_sign[k] * e_k.
// A recovered y' maps back as y_i = s_i * y'_i / sigma; the LP primal is
// x = -pi where pi are the multipliers of A y = rhs.

#include <utility>
#include <vector>

#include "copylp/lp_model.hpp"

namespace copylp::detail {

struct DualForm {
  int m = 0;  ///< equations (LP columns)
  int n = 0;  ///< structural variables (LP rows)
  std::vector<std::vector<std::pair<int, Integer>>> cols;  ///< column i: scaled LP row i
  std::vector<Integer> rhs;
  std::vector<Integer> cost;
  std::vector<bool> free_var;
  std::vector<Integer> row_scale;
  Integer sigma = 1;
  std::vector<int> art_sign;

  int total() const { return n + m; }
  bool is_artificial(int j) const { return j >= n; }
};

DualForm make_dual_form(const LP& lp);

}  // namespace copylp::detail

#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "copylp/constraint.hpp"

namespace copylp {

/// One LP row: sum(coeffs) relation rhs.
struct LpRow {
  std::string label;
  Relation relation = Relation::kGreaterEqual;
  std::vector<std::pair<int, Rational>> coeffs;  ///< sorted by column index
  Rational rhs = 0;

  friend bool operator==(const LpRow&, const LpRow&) = default;
};

/// A minimization LP over entropy coordinates. Every column is free; the
/// column keyed by the empty VarSet (if any) is the epigraph scalar `t`.
struct LP {
  std::string name;
  std::vector<std::string> variables;  ///< variable names, for rendering
  std::vector<VarSet> columns;
  std::vector<LpRow> rows;
  std::vector<Rational> objective;  ///< dense, one entry per column
  Rational objective_constant = 0;
  int normalization_row = -1;       ///< row fixing the unit, or -1

  int column_count() const { return static_cast<int>(columns.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }

  std::unordered_map<VarSet, int> column_index() const {
    std::unordered_map<VarSet, int> m;
    m.reserve(columns.size());
    for (int j = 0; j < column_count(); ++j) m.emplace(columns[static_cast<std::size_t>(j)], j);
    return m;
  }
  /// Row label -> row index.
  std::unordered_map<std::string, int> row_index() const {
    std::unordered_map<std::string, int> m;
    m.reserve(rows.size());
    for (int i = 0; i < row_count(); ++i) m.emplace(rows[static_cast<std::size_t>(i)].label, i);
    return m;
  }
};

/// Converts a constraint to a row over the given column index
/// (`lhs + c rel 0` becomes `lhs rel -c`). Throws if a coordinate has no column.
LpRow to_row(const Constraint& c, const std::unordered_map<VarSet, int>& columns);

/// Renders the column key: `H(A,B)` or `t`.
std::string column_name(VarSet column, const std::vector<std::string>& names);

}  // namespace copylp

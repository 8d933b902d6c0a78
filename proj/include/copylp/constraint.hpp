#pragma once

#include <string>

#include "copylp/linear_form.hpp"

namespace copylp {

enum class Relation { kGreaterEqual, kEqual };

inline const char* relation_symbol(Relation r) { return r == Relation::kEqual ? "=" : ">="; }

/// `lhs >= 0` or `lhs = 0`, with a stable label used by certificates.
struct Constraint {
  LinearForm lhs;
  Relation relation = Relation::kGreaterEqual;
  std::string label;

  bool is_equality() const { return relation == Relation::kEqual; }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

}  // namespace copylp

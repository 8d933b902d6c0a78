#pragma once

#include <string>
#include <vector>

#include "copylp/linear_form.hpp"
#include "text_cursor.hpp"

namespace copylp::detail {

/// Looks up a variable by name; -1 when unknown.
int find_name(const std::vector<std::string>& names, const std::string& name);

/// Reads a comma-separated name list into a VarSet, stopping before any of
/// `)`, `|` or `;`. Empty lists are allowed.
VarSet read_name_list(TextCursor& in, const std::vector<std::string>& names);

/// Reads a form. When `aux_symbol` is non-empty, a bare identifier equal to it
/// is accepted as an extra scalar unknown whose coefficient lands in `*aux`.
LinearForm read_form(TextCursor& in, const std::vector<std::string>& names,
                     const std::string& aux_symbol = {}, Rational* aux = nullptr);

/// Renders a term list plus an auxiliary scalar (`t`) coefficient.
std::string format_form_with_aux(const LinearForm& form, const Rational& aux,
                                 const std::string& aux_symbol,
                                 const std::vector<std::string>& names);

}  // namespace copylp::detail

#include "copylp/problem.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "form_reader.hpp"

namespace copylp {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !detail::TextCursor::ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), detail::TextCursor::ident_char);
}

void check_form_scope(const LinearForm& f, int n, const std::string& what) {
  if (f.support().highest() >= n) throw Error(what + " references a variable out of scope");
}

}  // namespace

void validate(const Problem& p) {
  std::set<std::string> names;
  for (const auto& v : p.variables) {
    if (!valid_identifier(v)) throw Error("invalid variable name '" + v + "'");
    if (!names.insert(v).second) throw Error("duplicate variable name '" + v + "'");
  }
  if (p.ground_count < 1 || p.ground_count > static_cast<int>(p.variables.size()))
    throw Error("problem declares no ground variables");
  std::vector<std::string> scope(p.variables.begin(), p.variables.begin() + p.ground_count);
  std::vector<int> stages{p.ground_count};
  for (const auto& step : p.copy_steps) {
    validate_copy_step(step, scope);
    for (const auto& name : step.new_names) {
      if (scope.size() >= p.variables.size() || p.variables[scope.size()] != name)
        throw Error("copy step names do not match the variable list");
      scope.push_back(name);
    }
    stages.push_back(static_cast<int>(scope.size()));
  }
  if (scope.size() != p.variables.size()) throw Error("variables not introduced by any statement");
  const int n = static_cast<int>(p.variables.size());
  if (!p.symmetry.empty()) {
    if (std::find(stages.begin(), stages.end(), p.symmetry_scope) == stages.end())
      throw Error("symmetry scope does not match a declaration point");
    for (const auto& g : p.symmetry) {
      g.validate();
      if (g.size() > p.symmetry_scope) throw Error("symmetry acts outside its scope");
    }
  }
  std::set<std::string> labels;
  for (const auto& c : p.constraints) {
    check_form_scope(c.lhs, n, "constraint '" + c.label + "'");
    if (!labels.insert(c.label).second) throw Error("duplicate constraint label '" + c.label + "'");
  }
  if (p.normalization) check_form_scope(p.normalization->lhs, n, "normalization");
  if (p.objective.forms.empty()) throw Error("objective has no forms");
  if (p.objective.kind == Objective::Kind::kLinear && p.objective.forms.size() != 1)
    throw Error("linear objective must have exactly one form");
  for (const auto& f : p.objective.forms) check_form_scope(f, n, "objective");
}

Problem builtin_ingleton() {
  enum { A, B, C, D, R, S, T, U };
  Problem p;
  p.name = "ingleton";
  p.variables = {"A", "B", "C", "D", "R", "S", "T", "U"};
  p.ground_count = 4;
  p.symmetry = {Perm::from_cycles(4, {{A, B}}), Perm::from_cycles(4, {{C, D}})};
  p.symmetry_scope = 4;
  p.copy_steps = {
      {{VarSet::single(B), VarSet::single(D)}, VarSet::of({A, C}), VarSet{}, {"R", "S"}},
      {{VarSet::single(C)}, VarSet::of({A, B, S}), VarSet::of({D, R}), {"T"}},
      {{VarSet::single(B)}, VarSet::of({A, C, R, S, T}), VarSet::of({D}), {"U"}},
  };
  p.normalization = Constraint{coord(VarSet::of({A, B, C, D})) - LinearForm(1), Relation::kEqual, "norm"};
  p.objective = {Objective::Kind::kLinear,
                 {ingleton_form(VarSet::single(A), VarSet::single(B), VarSet::single(C),
                                VarSet::single(D))}};
  validate(p);
  return p;
}

std::vector<VarSet> vamos_minimal_qualified() {
  const VarSet first = VarSet::of({1, 2, 3}), second = VarSet::of({1, 4, 5});
  const VarSet exceptions[] = {VarSet::of({2, 3, 4, 5}), VarSet::of({2, 3, 6, 7}),
                               VarSet::of({4, 5, 6, 7})};
  std::vector<VarSet> out{first, second};
  const VarSet shares = VarSet::prefix(8) - VarSet::single(0);
  for (VarSet::Mask m = 0; m <= shares.mask(); ++m) {
    VarSet v(m);
    if (!v.subset_of(shares) || v.size() != 4) continue;
    if (first.subset_of(v) || second.subset_of(v)) continue;
    if (std::find(std::begin(exceptions), std::end(exceptions), v) != std::end(exceptions)) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<VarSet> vamos_maximal_unqualified() {
  const auto qualified = vamos_minimal_qualified();
  const VarSet shares = VarSet::prefix(8) - VarSet::single(0);
  auto is_qualified = [&](VarSet v) {
    return std::any_of(qualified.begin(), qualified.end(), [v](VarSet q) { return q.subset_of(v); });
  };
  std::vector<VarSet> out;
  for (VarSet::Mask m = 0; m <= shares.mask(); ++m) {
    VarSet v(m);
    if (!v.subset_of(shares) || is_qualified(v)) continue;
    bool maximal = true;
    for (int i = 1; i <= 7 && maximal; ++i)
      if (!v.contains(i) && !is_qualified(v | VarSet::single(i))) maximal = false;
    if (maximal) out.push_back(v);
  }
  return out;
}

Problem builtin_vamos_v0(bool swap_copies) {
  Problem p;
  p.name = swap_copies ? "vamos-v0-swap" : "vamos-v0";
  for (int i = 0; i < 8; ++i) p.variables.push_back("S" + std::to_string(i));
  p.ground_count = 8;
  const VarSet secret = VarSet::single(0);
  for (VarSet q : vamos_minimal_qualified())
    p.constraints.push_back({cond_entropy(secret, q), Relation::kEqual,
                             "qualified:" + format_set(q, p.variables)});
  for (VarSet u : vamos_maximal_unqualified())
    p.constraints.push_back({cond_entropy(secret, u) - coord(secret), Relation::kEqual,
                             "unqualified:" + format_set(u, p.variables)});
  p.symmetry = {Perm::from_cycles(8, {{2, 3}}), Perm::from_cycles(8, {{4, 5}}),
                Perm::from_cycles(8, {{6, 7}}), Perm::from_cycles(8, {{2, 4}, {3, 5}})};
  p.symmetry_scope = 8;
  const VarSet v = VarSet::of({0, 1}), w = VarSet::of({6, 7}), over = VarSet::of({2, 3, 4, 5});
  p.copy_steps = {{{v, w}, over, v | w, {"Vp", "Wp"}},
                  {{v, w}, over, v | w | VarSet::of({8, 9}), {"Vpp", "Wpp"}}};
  for (const auto& name : {"Vp", "Wp", "Vpp", "Wpp"}) p.variables.push_back(name);
  if (swap_copies) {
    for (auto& g : p.symmetry) g = compose(g, Perm::identity(12));
    p.symmetry.push_back(Perm::from_cycles(12, {{8, 10}, {9, 11}}));
    p.symmetry_scope = 12;
  }
  p.normalization = Constraint{coord(secret) - LinearForm(1), Relation::kEqual, "norm"};
  p.objective.kind = Objective::Kind::kMinMax;
  for (int i = 1; i <= 7; ++i) p.objective.forms.push_back(coord(VarSet::single(i)));
  validate(p);
  return p;
}

Problem builtin_problem(const std::string& name) {
  if (name == "ingleton") return builtin_ingleton();
  if (name == "vamos-v0") return builtin_vamos_v0(false);
  if (name == "vamos-v0-swap") return builtin_vamos_v0(true);
  throw Error("unknown builtin problem '" + name + "'");
}

// ---------------------------------------------------------------------------
// Problem language

namespace {

using detail::TextCursor;

int resolve_name(TextCursor& in, const std::vector<std::string>& names) {
  int line = in.line(), col = in.column();
  std::string name = in.identifier();
  int idx = detail::find_name(names, name);
  if (idx < 0) throw ParseError("unknown variable '" + name + "'", line, col);
  return idx;
}

// `(A,B)` or `A`.
VarSet read_tuple(TextCursor& in, const std::vector<std::string>& names) {
  if (in.accept('(')) {
    VarSet v = detail::read_name_list(in, names);
    in.expect(')');
    if (v.empty()) in.fail("empty tuple");
    return v;
  }
  return VarSet::single(resolve_name(in, names));
}

Perm read_cycles(TextCursor& in, const std::vector<std::string>& names) {
  std::vector<std::vector<int>> cycles;
  const int n = static_cast<int>(names.size());
  while (in.peek() == '(') {
    in.expect('(');
    std::vector<int> cycle;
    while (!in.accept(')')) {
      int line = in.line(), col = in.column();
      if (in.at_number()) {
        Rational r = in.number();
        if (r.get_den() != 1 || r < 0 || r >= n)
          throw ParseError("malformed cycle notation: bad variable index", line, col);
        cycle.push_back(static_cast<int>(r.get_num().get_si()));
      } else if (in.at_identifier()) {
        cycle.push_back(resolve_name(in, names));
      } else {
        in.fail("malformed cycle notation");
      }
      in.accept(',');
    }
    if (cycle.empty()) in.fail("malformed cycle notation: empty cycle");
    cycles.push_back(std::move(cycle));
  }
  if (cycles.empty()) in.fail("malformed cycle notation: expected '('");
  try {
    return Perm::from_cycles(n, cycles);
  } catch (const Error& e) {
    in.fail(std::string("malformed cycle notation: ") + e.what());
  }
}

}  // namespace

Problem parse_problem(std::string_view text) {
  TextCursor in(text);
  Problem p;
  bool copies_started = false;
  bool has_objective = false;
  int constraint_count = 0;
  while (!in.at_end()) {
    const int line = in.line(), col = in.column();
    try {
      if (in.accept_keyword("problem")) {
        std::string name = in.until(';');
        const auto first = name.find_first_not_of(" \t\r\n"), last = name.find_last_not_of(" \t\r\n");
        p.name = first == std::string::npos ? "" : name.substr(first, last - first + 1);
      } else if (in.accept_keyword("var")) {
        if (copies_started) in.fail("variables must be declared before copy steps");
        do {
          int l = in.line(), c = in.column();
          std::string name = in.identifier();
          if (detail::find_name(p.variables, name) >= 0)
            throw ParseError("duplicate variable name '" + name + "'", l, c);
          p.variables.push_back(name);
          ++p.ground_count;
        } while (in.accept(','));
        in.expect(';');
      } else if (in.accept_keyword("constraint")) {
        ++constraint_count;
        std::string label = "problem:" + std::to_string(constraint_count);
        if (in.accept('[')) label = in.until(']');
        LinearForm lhs = detail::read_form(in, p.variables);
        Relation rel = Relation::kEqual;
        bool flip = false;
        if (in.accept(">=")) {
          rel = Relation::kGreaterEqual;
        } else if (in.accept("<=")) {
          rel = Relation::kGreaterEqual;
          flip = true;
        } else {
          in.expect('=');
        }
        LinearForm rhs = detail::read_form(in, p.variables);
        in.expect(';');
        p.constraints.push_back({flip ? rhs - lhs : lhs - rhs, rel, label});
      } else if (in.accept_keyword("symmetry")) {
        if (p.variables.empty()) in.fail("symmetry before any variable");
        p.symmetry.push_back(read_cycles(in, p.variables));
        p.symmetry_scope = static_cast<int>(p.variables.size());
        // Earlier generators were built over a smaller scope; widen them.
        for (auto& g : p.symmetry) g = compose(g, Perm::identity(p.symmetry_scope));
        in.expect(';');
      } else if (in.accept_keyword("copy")) {
        copies_started = true;
        CopyStep step;
        auto read_new_name = [&] {
          int l = in.line(), c = in.column();
          std::string name = in.identifier();
          if (detail::find_name(p.variables, name) >= 0 ||
              std::find(step.new_names.begin(), step.new_names.end(), name) != step.new_names.end())
            throw ParseError("duplicate variable name '" + name + "'", l, c);
          step.new_names.push_back(name);
        };
        if (in.accept('(')) {
          do read_new_name();
          while (in.accept(','));
          in.expect(')');
        } else {
          read_new_name();
        }
        in.expect(":=");
        if (!in.accept_keyword("copy")) in.fail("expected 'copy('");
        in.expect('(');
        do step.copied.push_back(read_tuple(in, p.variables));
        while (in.accept(','));
        in.expect('|');
        step.over = detail::read_name_list(in, p.variables);
        in.expect(')');
        if (!in.accept_keyword("given")) in.fail("expected 'given'");
        in.expect('(');
        step.context = detail::read_name_list(in, p.variables);
        in.expect(')');
        in.expect(';');
        validate_copy_step(step, p.variables);
        for (const auto& name : step.new_names) p.variables.push_back(name);
        p.copy_steps.push_back(std::move(step));
      } else if (in.accept_keyword("normalize")) {
        LinearForm f = detail::read_form(in, p.variables);
        in.expect('=');
        Rational value = in.signed_number();
        in.expect(';');
        p.normalization = Constraint{f - LinearForm(value), Relation::kEqual, "norm"};
      } else if (in.accept_keyword("minimize")) {
        if (has_objective) in.fail("objective declared twice");
        has_objective = true;
        if (in.accept_keyword("max")) {
          p.objective.kind = Objective::Kind::kMinMax;
          in.expect('(');
          do p.objective.forms.push_back(detail::read_form(in, p.variables));
          while (in.accept(','));
          in.expect(')');
        } else {
          p.objective.kind = Objective::Kind::kLinear;
          p.objective.forms.push_back(detail::read_form(in, p.variables));
        }
        in.expect(';');
      } else {
        in.fail("unknown statement");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line, col);
    }
  }
  if (!has_objective) throw ParseError("missing 'minimize' statement", in.line(), in.column());
  try {
    validate(p);
  } catch (const Error& e) {
    throw ParseError(e.what(), in.line(), in.column());
  }
  return p;
}

namespace {

std::string names_of(VarSet v, const std::vector<std::string>& names, const char* sep = ", ") {
  std::string out;
  for (int i : v.indices()) {
    if (!out.empty()) out += sep;
    out += names[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

std::string emit_problem(const Problem& p) {
  std::ostringstream out;
  if (!p.name.empty()) out << "problem " << p.name << ";\n";
  out << "var ";
  for (int i = 0; i < p.ground_count; ++i) out << (i ? ", " : "") << p.variables[static_cast<std::size_t>(i)];
  out << ";\n";

  std::vector<bool> emitted(p.constraints.size(), false);
  auto flush = [&](int scope) {
    if (!p.symmetry.empty() && p.symmetry_scope == scope) {
      for (const auto& g : p.symmetry) out << "symmetry " << g.format(p.variables) << ";\n";
    }
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      const auto& c = p.constraints[i];
      if (emitted[i] || c.lhs.support().highest() >= scope) continue;
      emitted[i] = true;
      out << "constraint [" << c.label << "] " << format_form(c.lhs, p.variables) << " "
          << relation_symbol(c.relation) << " 0;\n";
    }
  };

  int scope = p.ground_count;
  flush(scope);
  for (const auto& step : p.copy_steps) {
    out << "copy ";
    if (step.new_names.size() == 1) {
      out << step.new_names[0];
    } else {
      out << "(";
      for (std::size_t i = 0; i < step.new_names.size(); ++i) out << (i ? ", " : "") << step.new_names[i];
      out << ")";
    }
    out << " := copy(";
    for (std::size_t i = 0; i < step.copied.size(); ++i) {
      const VarSet z = step.copied[i];
      out << (i ? ", " : "");
      if (z.size() == 1)
        out << names_of(z, p.variables);
      else
        out << "(" << names_of(z, p.variables) << ")";
    }
    out << " | " << names_of(step.over, p.variables) << ") given (" << names_of(step.context, p.variables)
        << ");\n";
    scope += static_cast<int>(step.new_names.size());
    flush(scope);
  }
  if (p.normalization) {
    LinearForm f = p.normalization->lhs;
    Rational value = -f.constant();
    f.add_constant(value);
    out << "normalize " << format_form(f, p.variables) << " = " << to_string(value) << ";\n";
  }
  out << "minimize ";
  if (p.objective.kind == Objective::Kind::kMinMax) {
    out << "max(";
    for (std::size_t i = 0; i < p.objective.forms.size(); ++i)
      out << (i ? ", " : "") << format_form(p.objective.forms[i], p.variables);
    out << ")";
  } else {
    out << format_form(p.objective.forms.front(), p.variables);
  }
  out << ";\n";
  return out.str();
}

}  // namespace copylp

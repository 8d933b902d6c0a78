#include "copylp/linear_form.hpp"

#include <algorithm>

#include "form_reader.hpp"

namespace copylp {

Rational LinearForm::coefficient(VarSet v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

VarSet LinearForm::support() const {
  VarSet s;
  for (const auto& [v, c] : terms_) s |= v;
  return s;
}

void LinearForm::add_term(VarSet v, const Rational& coef) {
  if (v.empty()) throw Error("empty coordinate");
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(v, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  for (const auto& [v, c] : other.terms_) add_term(v, c);
  constant_ += other.constant_;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  for (const auto& [v, c] : other.terms_) add_term(v, -c);
  constant_ -= other.constant_;
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : terms_) c *= factor;
  constant_ *= factor;
  return *this;
}

LinearForm coord(VarSet v) {
  LinearForm f;
  f.add_term(v, 1);
  return f;
}

LinearForm cond_entropy(VarSet v, VarSet w) {
  if (v.empty()) throw Error("empty coordinate");
  LinearForm f = coord(v | w);
  if (!w.empty()) f.add_term(w, -1);
  return f;
}

LinearForm cond_mutual_info(VarSet v, VarSet w, VarSet u) {
  if (v.empty() || w.empty()) throw Error("empty coordinate");
  LinearForm f;
  f.add_term(u | v, 1);
  f.add_term(u | w, 1);
  f.add_term(u | v | w, -1);
  if (!u.empty()) f.add_term(u, -1);
  return f;
}

LinearForm ingleton_form(VarSet a, VarSet b, VarSet c, VarSet d) {
  const VarSet sets[] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (sets[i].empty()) throw Error("ingleton_form: empty argument");
    for (int j = i + 1; j < 4; ++j)
      if (!sets[i].disjoint(sets[j])) throw Error("ingleton_form: arguments overlap");
  }
  return cond_mutual_info(a, b, c) + cond_mutual_info(a, b, d) + cond_mutual_info(c, d) -
         cond_mutual_info(a, b);
}

std::string format_set(VarSet v, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (int i : v.indices()) {
    if (!first) out += ",";
    first = false;
    out += i < static_cast<int>(names.size()) ? names[i] : "#" + std::to_string(i);
  }
  return out + "}";
}

namespace {

std::string name_list(VarSet v, const std::vector<std::string>& names) {
  std::string s = format_set(v, names);
  return s.substr(1, s.size() - 2);
}

void append_term(std::string& out, const Rational& coef, const std::string& atom) {
  bool negative = coef < 0;
  Rational mag = abs(coef);
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (atom.empty()) {
    out += to_string(mag);
  } else {
    if (mag != 1) out += to_string(mag) + "*";
    out += atom;
  }
}

}  // namespace

std::string format_form(const LinearForm& form, const std::vector<std::string>& names) {
  return detail::format_form_with_aux(form, 0, {}, names);
}

LinearForm parse_form(std::string_view text, const std::vector<std::string>& names) {
  detail::TextCursor in(text);
  LinearForm f = detail::read_form(in, names);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return f;
}

namespace detail {

int find_name(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

VarSet read_name_list(TextCursor& in, const std::vector<std::string>& names) {
  VarSet out;
  char c = in.peek();
  if (c == ')' || c == '|' || c == ';') return out;
  do {
    int line = in.line(), col = in.column();
    std::string name = in.identifier();
    int idx = find_name(names, name);
    if (idx < 0) throw ParseError("unknown variable '" + name + "'", line, col);
    out |= VarSet::single(idx);
  } while (in.accept(','));
  return out;
}

namespace {

// Reads the atom after an optional coefficient: H(...), I(...), or the aux symbol.
LinearForm read_atom(TextCursor& in, const std::vector<std::string>& names,
                     const std::string& aux_symbol, bool& is_aux) {
  is_aux = false;
  int line = in.line(), col = in.column();
  if (in.accept_keyword("H")) {
    in.expect('(');
    VarSet v = read_name_list(in, names);
    VarSet w;
    if (in.accept('|')) w = read_name_list(in, names);
    in.expect(')');
    if (v.empty()) throw ParseError("empty coordinate", line, col);
    return cond_entropy(v, w);
  }
  if (in.accept_keyword("I")) {
    in.expect('(');
    VarSet v = read_name_list(in, names);
    in.expect(';');
    VarSet w = read_name_list(in, names);
    VarSet u;
    if (in.accept('|')) u = read_name_list(in, names);
    in.expect(')');
    if (v.empty() || w.empty()) throw ParseError("empty argument of I(;)", line, col);
    return cond_mutual_info(v, w, u);
  }
  if (!aux_symbol.empty() && in.accept_keyword(aux_symbol)) {
    is_aux = true;
    return {};
  }
  in.fail("expected a term such as H(...) or I(...)");
}

}  // namespace

LinearForm read_form(TextCursor& in, const std::vector<std::string>& names,
                     const std::string& aux_symbol, Rational* aux) {
  LinearForm out;
  bool first = true;
  while (true) {
    Rational sign = 1;
    if (in.accept('-')) {
      sign = -1;
    } else if (in.accept('+')) {
    } else if (!first) {
      break;
    }
    first = false;
    if (in.at_number()) {
      Rational coef = sign * in.number();
      if (in.accept('*')) {
        bool is_aux = false;
        LinearForm atom = read_atom(in, names, aux_symbol, is_aux);
        if (is_aux)
          *aux += coef;
        else
          out += coef * atom;
      } else {
        out.add_constant(coef);
      }
    } else {
      bool is_aux = false;
      LinearForm atom = read_atom(in, names, aux_symbol, is_aux);
      if (is_aux)
        *aux += sign;
      else
        out += sign * atom;
    }
  }
  return out;
}

std::string format_form_with_aux(const LinearForm& form, const Rational& aux,
                                 const std::string& aux_symbol,
                                 const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [v, c] : form.terms()) append_term(out, c, "H(" + name_list(v, names) + ")");
  if (aux != 0) append_term(out, aux, aux_symbol);
  if (form.constant() != 0) append_term(out, form.constant(), "");
  return out.empty() ? "0" : out;
}

}  // namespace detail

}  // namespace copylp

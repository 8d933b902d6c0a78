#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "copylp/error.hpp"
#include "copylp/rational.hpp"
#include "copylp/varset.hpp"

namespace copylp {

/// A point of the entropy-profile space over n variables: entry `mask - 1`
/// holds H(X_V) for the VarSet with that mask.
template <class Scalar>
using Profile = Vector<Scalar>;

template <class Scalar>
const Scalar& at(const Profile<Scalar>& point, VarSet v) {
  return point(static_cast<Eigen::Index>(v.mask()) - 1);
}

/// Exact linear combination of entropy coordinates plus a constant.
/// Zero coefficients are never stored.
class LinearForm {
 public:
  using Terms = std::map<VarSet, Rational>;

  LinearForm() = default;
  explicit LinearForm(Rational constant) : constant_(std::move(constant)) {}

  const Terms& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(VarSet v) const;
  bool is_zero() const { return terms_.empty() && constant_ == 0; }
  /// Union of every variable the form mentions.
  VarSet support() const;

  /// Adds `coef * H(v)`. Throws on an empty VarSet.
  void add_term(VarSet v, const Rational& coef);
  void add_constant(const Rational& c) { constant_ += c; }

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(const Rational& factor);

  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator-(LinearForm a) { return a *= Rational(-1); }
  friend LinearForm operator*(const Rational& f, LinearForm a) { return a *= f; }
  friend LinearForm operator*(LinearForm a, const Rational& f) { return a *= f; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  /// Rewrites every coordinate through `f` (e.g. a permutation or a
  /// substitution); coefficients landing on the same VarSet are merged.
  template <class F>
  LinearForm map_sets(F&& f) const {
    LinearForm out(constant_);
    for (const auto& [v, c] : terms_) out.add_term(f(v), c);
    return out;
  }

  template <class Scalar>
  Scalar evaluate(const Profile<Scalar>& point) const {
    Scalar sum = Scalar(constant_.get_d());
    for (const auto& [v, c] : terms_) sum += Scalar(c.get_d()) * at(point, v);
    return sum;
  }

 private:
  Terms terms_;
  Rational constant_ = 0;
};

template <>
inline Rational LinearForm::evaluate<Rational>(const Profile<Rational>& point) const {
  Rational sum = constant_;
  for (const auto& [v, c] : terms_) sum += c * at(point, v);
  return sum;
}

/// H(V). Throws Error("empty coordinate") for an empty set.
LinearForm coord(VarSet v);
/// H(V|W) = H(V u W) - H(W).
LinearForm cond_entropy(VarSet v, VarSet w);
/// I(V;W|U) = H(U u V) + H(U u W) - H(U u V u W) - H(U); the unconditional
/// form when U is empty.
LinearForm cond_mutual_info(VarSet v, VarSet w, VarSet u = VarSet{});
/// Ing(a,b,c,d) = I(a;b|c) + I(a;b|d) + I(c;d) - I(a;b) for disjoint sets.
LinearForm ingleton_form(VarSet a, VarSet b, VarSet c, VarSet d);

/// Text such as `3/2*H(A,B) - H(C) + 1`; the zero form renders as `0`.
std::string format_form(const LinearForm& form, const std::vector<std::string>& names);
/// `{A,B}` style rendering of a set.
std::string format_set(VarSet v, const std::vector<std::string>& names);

/// Parses the textual form syntax: rational-weighted `H(...)`, `H(.|.)`,
/// `I(.;.)`, `I(.;.|.)` terms and constants. Whitespace-insensitive.
LinearForm parse_form(std::string_view text, const std::vector<std::string>& names);

}  // namespace copylp

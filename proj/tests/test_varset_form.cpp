#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copylp/linear_form.hpp"
#include "support.hpp"

using namespace copylp;

namespace {
const std::vector<std::string> kNames = {"A", "B", "C", "D"};
const VarSet A = VarSet::single(0), B = VarSet::single(1), C = VarSet::single(2), D = VarSet::single(3);
}  // namespace

TEST_CASE("varset basics") {
  VarSet ab = A | B;
  CHECK(ab.size() == 2);
  CHECK(ab.contains(1));
  CHECK_FALSE(ab.contains(2));
  CHECK(A.subset_of(ab));
  CHECK(ab.disjoint(C | D));
  CHECK((ab - A) == B);
  CHECK(ab.indices() == std::vector<int>{0, 1});
  CHECK(VarSet::prefix(4).mask() == 15u);
  CHECK(coordinate_count(8) == 255);
  CHECK(VarSet{}.highest() == -1);
  CHECK((A | D).highest() == 3);
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/19") == Rational(-3, 19));
  CHECK(parse_rational("+2/4") == Rational(1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(to_string(Rational(561, 491)) == "561/491");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(to_decimal(Rational(-3, 19)) == "-0.157894737");
  CHECK(to_decimal(Rational(561, 491)) == "1.14256619");
  CHECK(rationalize(-3.0 / 19.0, Integer(1000)) == Rational(-3, 19));
  CHECK(rationalize(0.3333333, Integer(10)) == Rational(1, 3));
}

TEST_CASE("coord") {
  LinearForm a = coord(A);
  CHECK(a.terms().size() == 1);
  CHECK(a.coefficient(A) == 1);
  CHECK((coord(A | B) + coord(C)).terms().size() == 2);
  LinearForm zero = coord(A) - coord(A);
  CHECK(zero.terms().empty());
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(coord(VarSet{}), Error);
}

TEST_CASE("conditional entropy and mutual information") {
  CHECK(cond_entropy(A, B) == coord(A | B) - coord(B));
  CHECK(cond_entropy(A, VarSet{}) == coord(A));
  CHECK(cond_entropy(A, A).is_zero());
  CHECK(cond_mutual_info(A, B, C) == coord(A | C) + coord(B | C) - coord(A | B | C) - coord(C));
  CHECK(cond_mutual_info(A, B) == coord(A) + coord(B) - coord(A | B));
  CHECK(cond_mutual_info(A, A) == coord(A));
}

TEST_CASE("ingleton expansion") {
  const LinearForm ing = ingleton_form(A, B, C, D);
  CHECK(ing.terms().size() == 10);
  CHECK(ing.coefficient(A) == -1);
  CHECK(ing.coefficient(B) == -1);
  CHECK(ing.coefficient(C | D) == -1);
  CHECK(ing.coefficient(A | B) == 1);
  CHECK(ing.coefficient(A | C) == 1);
  CHECK(ing.coefficient(A | D) == 1);
  CHECK(ing.coefficient(B | C) == 1);
  CHECK(ing.coefficient(B | D) == 1);
  CHECK(ing.coefficient(A | B | C) == -1);
  CHECK(ing.coefficient(A | B | D) == -1);
  CHECK(ing.coefficient(A | B | C | D) == 0);
  // Modular profile H(V) = |V|.
  Profile<Rational> modular(15);
  for (int m = 1; m < 16; ++m) modular(m - 1) = VarSet(static_cast<VarSet::Mask>(m)).size();
  CHECK(ing.evaluate(modular) == 0);
  CHECK(ingleton_form(B, A, C, D) == ing);
}

TEST_CASE("linearity of evaluation") {
  Profile<Rational> p(15);
  for (int m = 1; m < 16; ++m) {
    p(m - 1) = Rational(m * m + 3, 7);
    p(m - 1).canonicalize();
  }
  auto h = [&](VarSet v) { return v.empty() ? Rational(0) : at(p, v); };
  for (int v = 1; v < 16; ++v)
    for (int w = 1; w < 16; ++w)
      for (int u = 0; u < 16; ++u) {
        VarSet V(static_cast<VarSet::Mask>(v)), W(static_cast<VarSet::Mask>(w)), U(static_cast<VarSet::Mask>(u));
        Rational direct = h(U | V) + h(U | W) - h(U | V | W) - h(U);
        REQUIRE(cond_mutual_info(V, W, U).evaluate(p) == direct);
      }
}

TEST_CASE("form text round trip") {
  const LinearForm f = parse_form("3/2*H(A,B) - H(C) + I(A;B|D) - 2", kNames);
  LinearForm expect = Rational(3, 2) * coord(A | B) - coord(C) + cond_mutual_info(A, B, D);
  expect.add_constant(-2);
  CHECK(f == expect);
  CHECK(parse_form(format_form(f, kNames), kNames) == f);
  CHECK(parse_form("H(A|B)", kNames) == cond_entropy(A, B));
  CHECK(parse_form(" H ( A , B ) ", kNames) == coord(A | B));
  CHECK(format_form(LinearForm{}, kNames) == "0");
  CHECK(format_set(A | C, kNames) == "{A,C}");
}

TEST_CASE("form parse errors carry positions") {
  try {
    parse_form("H(A) + H(Q)", kNames);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 10);
  }
  CHECK_THROWS_AS(parse_form("H()", kNames), ParseError);
  CHECK_THROWS_AS(parse_form("H(A) +", kNames), ParseError);
  CHECK_THROWS_AS(parse_form("H(a)", kNames), ParseError);
}

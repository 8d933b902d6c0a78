#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "copylp/problem.hpp"
#include "support.hpp"

using namespace copylp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("builtin ingleton") {
  const Problem p = builtin_ingleton();
  CHECK(p.name == "ingleton");
  CHECK(p.ground_count == 4);
  CHECK(p.variables == std::vector<std::string>{"A", "B", "C", "D", "R", "S", "T", "U"});
  CHECK(coordinate_count(static_cast<int>(p.variables.size())) == 255);
  CHECK(p.copy_steps.size() == 3);
  REQUIRE(p.objective.forms.size() == 1);
  CHECK(p.objective.forms[0] ==
        ingleton_form(VarSet::single(0), VarSet::single(1), VarSet::single(2), VarSet::single(3)));
  REQUIRE(p.normalization);
  CHECK(p.normalization->lhs == coord(VarSet::prefix(4)) + LinearForm(-1));
  CHECK(p.symmetry.size() == 2);
  CHECK(p.symmetry_scope == 4);
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("vamos access structure") {
  const auto qualified = vamos_minimal_qualified();
  CHECK(qualified.size() == 26);
  CHECK(std::count(qualified.begin(), qualified.end(), VarSet::of({1, 2, 3})) == 1);
  CHECK(std::count(qualified.begin(), qualified.end(), VarSet::of({1, 4, 5})) == 1);
  for (VarSet q : qualified) CHECK(!q.contains(0));
  const auto unqualified = vamos_maximal_unqualified();
  CHECK(std::count(unqualified.begin(), unqualified.end(), VarSet::of({2, 3, 4, 5})) == 1);
  // Every maximal unqualified set contains no minimal qualified set.
  for (VarSet u : unqualified)
    for (VarSet q : qualified) CHECK_FALSE(q.subset_of(u));
}

TEST_CASE("builtin vamos") {
  const Problem p = builtin_vamos_v0();
  CHECK(p.variables.size() == 12);
  CHECK(coordinate_count(12) == 4095);
  CHECK(p.objective.kind == Objective::Kind::kMinMax);
  CHECK(p.objective.forms.size() == 7);
  CHECK(p.copy_steps.size() == 2);
  CHECK(p.symmetry.size() == 4);
  // H(S0 | S2,S3,S4,S5) = H(S0) among the unqualified rows.
  const LinearForm expect = coord(VarSet::of({0, 2, 3, 4, 5})) - coord(VarSet::of({2, 3, 4, 5})) -
                            coord(VarSet::single(0));
  bool found = false;
  for (const auto& c : p.constraints) found |= c.is_equality() && (c.lhs == expect || c.lhs == -expect);
  CHECK(found);
  CHECK(builtin_vamos_v0(true).symmetry.size() == 5);
  CHECK_THROWS_AS(builtin_problem("fano"), Error);
}

TEST_CASE("shipped problem files match the builtins") {
  CHECK(parse_problem(slurp(testing::data("ingleton.ent"))) == builtin_ingleton());
  CHECK(parse_problem(slurp(testing::data("vamos-v0.ent"))) == builtin_vamos_v0());
}

TEST_CASE("emit and parse round trip") {
  for (const Problem& p : {builtin_ingleton(), builtin_vamos_v0(), builtin_vamos_v0(true)}) {
    const std::string text = emit_problem(p);
    CHECK(parse_problem(text) == p);
    CHECK(emit_problem(parse_problem(text)) == text);
  }
}

TEST_CASE("conditional constraint") {
  const Problem p = parse_problem("var A, B, C; constraint H(A|B,C) = 0; minimize H(A);");
  REQUIRE(p.constraints.size() == 1);
  CHECK(p.constraints[0].is_equality());
  CHECK(p.constraints[0].lhs == coord(VarSet::of({0, 1, 2})) - coord(VarSet::of({1, 2})));
  CHECK(p.constraints[0].label == "problem:1");
}

TEST_CASE("constraint forms") {
  const Problem p = parse_problem(
      "problem demo;\n"
      "var X, Y;\n"
      "constraint [lower] H(X) >= 1/2;\n"
      "constraint H(Y) <= H(X);\n"
      "symmetry (X Y);\n"
      "minimize max(H(X), H(Y));\n");
  CHECK(p.name == "demo");
  REQUIRE(p.constraints.size() == 2);
  CHECK(p.constraints[0].label == "lower");
  CHECK(p.constraints[0].lhs == coord(VarSet::single(0)) + LinearForm(Rational(-1, 2)));
  CHECK(p.constraints[1].lhs == coord(VarSet::single(0)) - coord(VarSet::single(1)));
  CHECK(p.constraints[1].relation == Relation::kGreaterEqual);
  CHECK(p.objective.kind == Objective::Kind::kMinMax);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_problem("var A, B; copy R := copy(B | A) given (); copy R := copy(B | A) given (); "
                                "minimize H(A);"),
                  ParseError);
  try {
    parse_problem("var A;\nconstraint H(Z) = 0;\nminimize H(A);");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("unknown variable 'Z'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("var A, A; minimize H(A);"), ParseError);
  CHECK_THROWS_AS(parse_problem("var A;"), ParseError);
  CHECK_THROWS_AS(parse_problem("var A; bogus; minimize H(A);"), ParseError);
  CHECK_THROWS_AS(parse_problem("var A, B; constraint [x] H(A) = 0; constraint [x] H(B) = 0; minimize H(A);"),
                  ParseError);
}

TEST_CASE("validation") {
  Problem p = builtin_ingleton();
  p.variables[5] = "A";
  CHECK_THROWS_AS(validate(p), Error);
  p = builtin_ingleton();
  p.copy_steps.pop_back();
  CHECK_THROWS_AS(validate(p), Error);
}

TEST_CASE("non-minimal qualified and non-maximal unqualified sets are implied" * doctest::timeout(300)) {
  const Problem p = builtin_vamos_v0();
  std::vector<Constraint> rows = elemental_inequalities(8);
  for (const auto& c : p.constraints) rows.push_back(c);
  const VarSet secret = VarSet::single(0);
  const VarSet shares = VarSet::prefix(8) - secret;
  const auto qualified = vamos_minimal_qualified();
  const auto unqualified = vamos_maximal_unqualified();
  int checked_q = 0, checked_u = 0;
  for (VarSet::Mask m = 1; m <= shares.mask(); ++m) {
    const VarSet v(m);
    if (!v.subset_of(shares)) continue;
    const bool superset = std::any_of(qualified.begin(), qualified.end(),
                                      [v](VarSet q) { return q.subset_of(v) && q != v; });
    const bool subset = std::any_of(unqualified.begin(), unqualified.end(),
                                    [v](VarSet u) { return v.subset_of(u) && u != v; });
    if (superset && ++checked_q) {
      const auto sol = solve_exact(testing::cone_lp(8, rows, -cond_entropy(secret, v)));
      CHECK(sol.status == SolveStatus::kOptimal);
      CHECK(sol.value == 0);
    }
    if (subset && ++checked_u) {
      const auto sol = solve_exact(testing::cone_lp(8, rows, cond_entropy(secret, v) - coord(secret)));
      CHECK(sol.status == SolveStatus::kOptimal);
      CHECK(sol.value == 0);
    }
  }
  CHECK(checked_q > 0);
  CHECK(checked_u > 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copylp/lp.hpp"
#include "copylp/problem.hpp"
#include "support.hpp"

using namespace copylp;

namespace {

BuildOptions with(SymmetryMode mode, bool copies = true) {
  BuildOptions o;
  o.symmetry = mode;
  o.copy_steps = copies;
  return o;
}

int count_prefix(const LP& lp, const std::string& prefix) {
  int n = 0;
  for (const auto& r : lp.rows) n += r.label.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("ingleton lp shape") {
  const LP lp = build_lp(builtin_ingleton(), with(SymmetryMode::kInvarianceEqs));
  CHECK(lp.column_count() == 255);
  CHECK(count_prefix(lp, "elem:") == 1800);
  CHECK(count_prefix(lp, "sym:") == 7);
  CHECK(count_prefix(lp, "copy") == 55);
  CHECK(count_prefix(lp, "norm") == 1);
  CHECK(lp.row_count() == 1863);
  REQUIRE(lp.normalization_row >= 0);
  CHECK(lp.rows[static_cast<std::size_t>(lp.normalization_row)].label == "norm");
  const LP off = build_lp(builtin_ingleton(), with(SymmetryMode::kOff));
  CHECK(off.row_count() == 1856);
}

TEST_CASE("vamos lp shape") {
  const Problem p = builtin_vamos_v0();
  const LP full = build_lp(p, with(SymmetryMode::kOff));
  CHECK(full.column_count() == 4096);
  CHECK(full.columns.back() == VarSet{});
  CHECK(count_prefix(full, "elem:") == 67596);
  CHECK(count_prefix(full, "epi:") == 7);
  const LP q = build_lp(p, with(SymmetryMode::kQuotient));
  CHECK(q.column_count() < full.column_count() / 3);
  CHECK(default_symmetry(p) == SymmetryMode::kQuotient);
  CHECK(default_symmetry(builtin_ingleton()) == SymmetryMode::kInvarianceEqs);
}

TEST_CASE("options text") {
  BuildOptions o = with(SymmetryMode::kQuotient);
  o.merged_independence = true;
  o.drop_copy_steps = {2, 1, 2};
  CHECK(describe(o) == "symmetry=quotient merged-independence=on copy-steps=on drop=1,2");
  const BuildOptions back = parse_options(describe(o));
  CHECK(back.symmetry == SymmetryMode::kQuotient);
  CHECK(back.merged_independence);
  CHECK(back.drop_copy_steps == std::vector<int>{1, 2});
  CHECK_THROWS_AS(parse_options("symmetry=sideways"), Error);
  CHECK_THROWS_AS(parse_options("colour=on"), Error);
}

TEST_CASE("emit is deterministic") {
  const LP a = build_lp(builtin_ingleton(), with(SymmetryMode::kInvarianceEqs));
  const LP b = build_lp(builtin_ingleton(), with(SymmetryMode::kInvarianceEqs));
  CHECK(emit_lp(a) == emit_lp(b));
  const std::string text = emit_lp(a);
  CHECK(text.rfind("lp ingleton\n", 0) == 0);
  CHECK(text.find("[norm] +1 x14 = 1") != std::string::npos);
}

TEST_CASE("ingleton values" * doctest::timeout(600)) {
  const Problem p = builtin_ingleton();
  const LP lp = build_lp(p, with(SymmetryMode::kInvarianceEqs));
  const auto exact = solve_exact(lp);
  REQUIRE(exact.status == SolveStatus::kOptimal);
  CHECK(exact.value == Rational(-3, 19));
  const auto fl = solve_float(lp);
  REQUIRE(fl.status == SolveStatus::kOptimal);
  CHECK(fl.value == doctest::Approx(-3.0 / 19.0).epsilon(1e-9));
  const auto shannon = solve_exact(build_lp(p, with(SymmetryMode::kInvarianceEqs, false)));
  CHECK(shannon.value == Rational(-1, 4));
}

TEST_CASE("exact optimality conditions" * doctest::timeout(600)) {
  const LP lp = build_lp(builtin_ingleton(), with(SymmetryMode::kInvarianceEqs));
  const auto sol = solve_exact(lp);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  std::vector<Rational> combo(static_cast<std::size_t>(lp.column_count()));
  Rational dual_value = lp.objective_constant;
  for (int i = 0; i < lp.row_count(); ++i) {
    const auto& row = lp.rows[static_cast<std::size_t>(i)];
    if (row.relation == Relation::kGreaterEqual) CHECK(sol.dual(i) >= 0);
    for (const auto& [j, a] : row.coeffs) combo[static_cast<std::size_t>(j)] += sol.dual(i) * a;
    dual_value += sol.dual(i) * row.rhs;
    // Primal feasibility.
    Rational lhs = 0;
    for (const auto& [j, a] : row.coeffs) lhs += a * sol.primal(j);
    if (row.relation == Relation::kEqual)
      CHECK(lhs == row.rhs);
    else
      CHECK(lhs >= row.rhs);
  }
  CHECK(combo == lp.objective);
  Rational primal_value = lp.objective_constant;
  for (int j = 0; j < lp.column_count(); ++j) primal_value += lp.objective[static_cast<std::size_t>(j)] * sol.primal(j);
  CHECK(primal_value == sol.value);
  CHECK(dual_value == sol.value);
}

TEST_CASE("cold exact start agrees" * doctest::timeout(600)) {
  const LP lp = build_lp(builtin_ingleton(), with(SymmetryMode::kInvarianceEqs, false));
  ExactOptions o;
  o.warm_start = false;
  CHECK(solve_exact(lp, o).value == Rational(-1, 4));
}

TEST_CASE("merged independence and dropped steps" * doctest::timeout(600)) {
  const Problem p = builtin_ingleton();
  BuildOptions o = with(SymmetryMode::kInvarianceEqs);
  o.drop_copy_steps = {3};
  const LP lp = build_lp(p, o);
  CHECK(count_prefix(lp, "copy3") == 0);
  const auto sol = solve_exact(lp);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.value >= Rational(-1, 4));
  CHECK(sol.value <= Rational(-3, 19));
  o.drop_copy_steps = {1};
  CHECK_THROWS_AS(build_lp(p, o), Error);
}

TEST_CASE("small problems") {
  // One variable, minimize H(X): 0 at the zero profile.
  const Problem one = parse_problem("var X; minimize H(X);");
  const auto z = solve_exact(build_lp(one, {}));
  REQUIRE(z.status == SolveStatus::kOptimal);
  CHECK(z.value == 0);
  CHECK(z.primal(0) == 0);

  const Problem bad = parse_problem("var A; constraint H(A) = 1; constraint H(A) = 2; minimize H(A);");
  CHECK(solve_exact(build_lp(bad, {})).status == SolveStatus::kInfeasible);
  CHECK(solve_float(build_lp(bad, {})).status == SolveStatus::kInfeasible);

  const Problem unbounded = parse_problem("var A, B; minimize H(A|B) - H(B);");
  CHECK(solve_exact(build_lp(unbounded, {})).status == SolveStatus::kUnbounded);
  CHECK(solve_float(build_lp(unbounded, {})).status == SolveStatus::kUnbounded);

  const Problem minmax = parse_problem("var A, B; normalize H(A,B) = 1; minimize max(H(A), H(B));");
  const auto mm = solve_exact(build_lp(minmax, {}));
  REQUIRE(mm.status == SolveStatus::kOptimal);
  CHECK(mm.value == Rational(1, 2));
}

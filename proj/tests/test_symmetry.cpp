#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copylp/lp.hpp"
#include "copylp/symmetry.hpp"
#include "support.hpp"

using namespace copylp;

namespace {
const std::vector<std::string> kAbcd = {"A", "B", "C", "D"};
VarSet S(std::initializer_list<int> idx) { return VarSet::of(idx); }
}  // namespace

TEST_CASE("act") {
  const Perm t = Perm::from_cycles(3, {{0, 1}});
  CHECK(act(t, S({0, 2})) == S({1, 2}));
  CHECK(act(t, S({0, 1, 2})) == S({0, 1, 2}));
  const Perm id = Perm::identity(5);
  for (VarSet::Mask m = 0; m < 32; ++m) CHECK(act(id, VarSet(m)) == VarSet(m));
}

TEST_CASE("perm basics") {
  const Perm p = Perm::from_cycles(4, {{0, 1}, {2, 3}});
  CHECK(p.format(kAbcd) == "(A B)(C D)");
  CHECK(Perm::identity(3).format(kAbcd) == "()");
  CHECK(compose(p, p).is_identity());
  const Perm c = Perm::from_cycles(3, {{0, 1, 2}});
  CHECK(compose(c, inverse(c)).is_identity());
  CHECK_THROWS_AS(Perm::from_cycles(3, {{0, 5}}), Error);
  CHECK_THROWS_AS((Perm{{0, 0, 1}}.validate()), Error);
}

TEST_CASE("closure orders") {
  CHECK(closure({Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})}).order() == 4);
  CHECK(closure({}).order() == 1);
  CHECK(closure({}).trivial());
  const PermGroup vamos = closure({Perm::from_cycles(8, {{2, 3}}), Perm::from_cycles(8, {{4, 5}}),
                                   Perm::from_cycles(8, {{6, 7}}), Perm::from_cycles(8, {{2, 4}, {3, 5}})});
  CHECK(vamos.order() == 16);
  CHECK(vamos.elements().front().is_identity());
}

TEST_CASE("group action property") {
  const PermGroup g = closure({Perm::from_cycles(8, {{2, 3}}), Perm::from_cycles(8, {{4, 5}}),
                               Perm::from_cycles(8, {{6, 7}}), Perm::from_cycles(8, {{2, 4}, {3, 5}})});
  for (const auto& a : g.elements())
    for (const auto& b : g.elements())
      for (VarSet::Mask m = 1; m < 256; m += 7) {
        const VarSet v(m);
        REQUIRE(act(compose(a, b), v) == act(a, act(b, v)));
      }
}

TEST_CASE("orbits") {
  const PermGroup t = closure({Perm::from_cycles(2, {{0, 1}})});
  CHECK(orbit(t, S({0})) == std::vector<VarSet>{S({0}), S({1})});
  CHECK(orbit(t, S({0, 1})).size() == 1);
  const PermGroup ing = closure({Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})});
  CHECK(orbit(ing, S({0, 2})) == std::vector<VarSet>{S({0, 2}), S({1, 2}), S({0, 3}), S({1, 3})});
  CHECK(representative(ing, S({1, 3})) == S({0, 2}));
}

TEST_CASE("invariance equalities for the ingleton group") {
  const PermGroup ing = closure({Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})});
  const auto eqs = invariance_equalities(ing, 4, kAbcd);
  // 15 non-empty subsets in 8 orbits.
  CHECK(eqs.size() == 7);
  // They imply every equality of the symmetric system, e.g. H(A)=H(B) and H(A,C)=H(B,D).
  std::vector<Constraint> rows = eqs;
  for (const LinearForm& f : {coord(S({0})) - coord(S({1})), coord(S({0, 2})) - coord(S({1, 3})),
                              coord(S({0, 2, 3})) - coord(S({1, 2, 3})), coord(S({2})) - coord(S({3}))}) {
    for (const LinearForm& g : {f, LinearForm(-f)}) {
      const auto sol = solve_exact(testing::cone_lp(4, rows, g));
      REQUIRE(sol.status == SolveStatus::kOptimal);
      CHECK(sol.value == 0);
    }
  }
  CHECK(invariance_equalities(closure({}), 4, kAbcd).empty());
  CHECK(eqs.front().label.rfind("sym:", 0) == 0);
}

TEST_CASE("quotient of a trivial group is the identity") {
  const LP lp = testing::cone_lp(3, elemental_inequalities(3), coord(S({0})));
  const LP q = quotient_reduce(lp, closure({}));
  CHECK(q.columns == lp.columns);
  CHECK(q.rows == lp.rows);
}

TEST_CASE("quotient of a symmetric cone") {
  // min H(A)+H(B) - H(A,B) over the elementals of 3 variables, symmetric in (A B).
  const PermGroup g = closure({Perm::from_cycles(3, {{0, 1}})});
  std::vector<Constraint> rows = elemental_inequalities(3);
  rows.push_back({coord(S({0, 1, 2})) + LinearForm(-1), Relation::kEqual, "norm"});
  const LP lp = testing::cone_lp(3, rows, cond_mutual_info(S({0}), S({1})));
  const LP q = quotient_reduce(lp, g);
  CHECK(q.column_count() == 5);  // {A}, {C}, {A,B}, {A,C}, {A,B,C}
  CHECK(q.row_count() < lp.row_count());
  CHECK(solve_exact(q).value == solve_exact(lp).value);
}

TEST_CASE("quotient rejects a non-invariant LP") {
  std::vector<Constraint> rows = {{coord(S({0})) + LinearForm(-1), Relation::kEqual, "pin"}};
  const LP lp = testing::cone_lp(2, rows, coord(S({0, 1})));
  CHECK_THROWS_WITH_AS(quotient_reduce(lp, closure({Perm::from_cycles(2, {{0, 1}})})),
                       doctest::Contains("does not preserve row 'pin'"), Error);
}

TEST_CASE("ingleton quotient fails the invariance check") {
  BuildOptions o;
  o.symmetry = SymmetryMode::kQuotient;
  CHECK_THROWS_WITH_AS(build_lp(builtin_ingleton(), o), doctest::Contains("does not preserve row"), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "copylp/certificate.hpp"
#include "copylp/shannon.hpp"
#include "support.hpp"

using namespace copylp;
using testing::cone_lp;

namespace {

// All basic inequalities I(V;W|U) >= 0 with V, W non-empty and the three
// sets pairwise disjoint (V = W allowed as H(V|U) >= 0).
std::vector<LinearForm> basic_inequalities(int n) {
  std::vector<LinearForm> out;
  const VarSet::Mask full = VarSet::prefix(n).mask();
  for (VarSet::Mask u = 0; u <= full; ++u)
    for (VarSet::Mask v = 1; v <= full; ++v)
      for (VarSet::Mask w = v; w <= full; ++w) {
        if ((u & v) || (u & w)) continue;
        if (v != w && (v & w)) continue;
        out.push_back(cond_mutual_info(VarSet(v), VarSet(w), VarSet(u)));
      }
  return out;
}

}  // namespace

TEST_CASE("elemental counts") {
  CHECK(elemental_count(3) == 9);
  CHECK(elemental_count(4) == 28);
  CHECK(elemental_count(8) == 1800);
  CHECK(elemental_count(12) == 67596);
  for (int n = 1; n <= 8; ++n) CHECK(static_cast<long long>(elemental_inequalities(n).size()) == elemental_count(n));
}

TEST_CASE("elemental labels") {
  const auto rows = elemental_inequalities(3);
  std::vector<std::string> labels;
  for (const auto& r : rows) labels.push_back(r.label);
  CHECK(std::is_sorted(labels.begin(), labels.end()));
  CHECK(std::find(labels.begin(), labels.end(), "elem:H(1|rest)") != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), "elem:I(1;2|{3})") != labels.end());
  CHECK(std::find(labels.begin(), labels.end(), "elem:I(2;3|{})") != labels.end());
  for (const auto& r : rows) CHECK(r.relation == Relation::kGreaterEqual);
}

TEST_CASE("shannon feasibility") {
  Profile<double> modular(15), zeros = Profile<double>::Zero(15), negative = Profile<double>::Constant(15, -1.0);
  for (int m = 1; m < 16; ++m) modular(m - 1) = VarSet(static_cast<VarSet::Mask>(m)).size();
  CHECK(is_shannon_feasible(modular, 4));
  CHECK(is_shannon_feasible(zeros, 4));
  CHECK_FALSE(is_shannon_feasible(negative, 4));
  CHECK_THROWS_AS(is_shannon_feasible(Profile<double>(Profile<double>::Zero(7)), 4), Error);
  // Exact rational points work too.
  Profile<Rational> q(7);
  for (int m = 1; m < 8; ++m) q(m - 1) = VarSet(static_cast<VarSet::Mask>(m)).size();
  CHECK(is_shannon_feasible(q, 3));
}

TEST_CASE("every basic inequality is generated by the elementals" * doctest::timeout(120)) {
  for (int n : {3, 4}) {
    const auto elem = elemental_inequalities(n);
    for (const LinearForm& f : basic_inequalities(n)) {
      const LP lp = cone_lp(n, elem, f);
      const auto sol = solve_exact(lp);
      REQUIRE(sol.status == SolveStatus::kOptimal);
      CHECK(sol.value == 0);
      for (int i = 0; i < lp.row_count(); ++i) CHECK(sol.dual(i) >= 0);
    }
  }
}

TEST_CASE("no elemental inequality is redundant" * doctest::timeout(120)) {
  for (int n : {3, 4}) {
    const auto elem = elemental_inequalities(n);
    for (std::size_t k = 0; k < elem.size(); ++k) {
      std::vector<Constraint> rest = elem;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const auto sol = solve_exact(cone_lp(n, rest, elem[k].lhs));
      CHECK_MESSAGE(sol.status == SolveStatus::kUnbounded, elem[k].label);
    }
  }
}

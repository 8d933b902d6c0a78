#include "dual_form.hpp"

namespace copylp::detail {

namespace {

Integer lcm_den(const Integer& acc, const Rational& r) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), acc.get_mpz_t(), r.get_den().get_mpz_t());
  return out;
}

}  // namespace

DualForm make_dual_form(const LP& lp) {
  DualForm d;
  d.m = lp.column_count();
  d.n = lp.row_count();
  d.cols.resize(static_cast<std::size_t>(d.n));
  d.cost.resize(static_cast<std::size_t>(d.n));
  d.free_var.resize(static_cast<std::size_t>(d.n));
  d.row_scale.resize(static_cast<std::size_t>(d.n));
  for (int i = 0; i < d.n; ++i) {
    const LpRow& row = lp.rows[static_cast<std::size_t>(i)];
    Integer s = lcm_den(1, row.rhs);
    for (const auto& [j, c] : row.coeffs) s = lcm_den(s, c);
    auto& col = d.cols[static_cast<std::size_t>(i)];
    col.reserve(row.coeffs.size());
    for (const auto& [j, c] : row.coeffs) {
      if (c == 0) continue;
      Rational v = c * s;
      col.emplace_back(j, v.get_num());
    }
    Rational b = row.rhs * s;
    d.cost[static_cast<std::size_t>(i)] = -b.get_num();
    d.free_var[static_cast<std::size_t>(i)] = row.relation == Relation::kEqual;
    d.row_scale[static_cast<std::size_t>(i)] = s;
  }
  for (const auto& c : lp.objective) d.sigma = lcm_den(d.sigma, c);
  d.rhs.resize(static_cast<std::size_t>(d.m));
  d.art_sign.resize(static_cast<std::size_t>(d.m));
  for (int k = 0; k < d.m; ++k) {
    Rational v = lp.objective[static_cast<std::size_t>(k)] * d.sigma;
    d.rhs[static_cast<std::size_t>(k)] = v.get_num();
    d.art_sign[static_cast<std::size_t>(k)] = v < 0 ? -1 : 1;
  }
  return d;
}

}  // namespace copylp::detail

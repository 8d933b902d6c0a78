#include "modular.hpp"

#include <algorithm>

namespace copylp::detail {

namespace {

constexpr std::uint32_t kPrimes[] = {2147483647u, 2147483629u, 2147483587u, 2147483579u};

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

std::uint64_t residue(const Integer& v, std::uint32_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), p);
}

}  // namespace

bool ModularLU::factor(const std::vector<const IntColumn*>& cols, int m, std::uint32_t p) {
  m_ = m;
  p_ = p;
  steps_.clear();
  dependent_.clear();
  uncovered_.clear();
  const std::size_t mm = static_cast<std::size_t>(m);
  std::vector<std::uint32_t> a(mm * mm, 0);
  std::vector<int> row_cnt(mm, 0), col_cnt(mm, 0);
  auto at = [&](int r, int c) -> std::uint32_t& { return a[static_cast<std::size_t>(r) * mm + static_cast<std::size_t>(c)]; };
  for (int c = 0; c < m; ++c) {
    for (const auto& [r, v] : *cols[static_cast<std::size_t>(c)]) {
      const auto x = static_cast<std::uint32_t>(residue(v, p));
      if (x == 0) continue;
      at(r, c) = x;
      ++row_cnt[static_cast<std::size_t>(r)];
      ++col_cnt[static_cast<std::size_t>(c)];
    }
  }
  std::vector<bool> row_done(mm, false), col_done(mm, false);
  std::vector<int> active_rows;
  std::vector<std::pair<int, std::uint64_t>> prow;
  for (int handled = 0; handled < m; ++handled) {
    int c = -1;
    for (int j = 0; j < m; ++j)
      if (!col_done[static_cast<std::size_t>(j)] &&
          (c < 0 || col_cnt[static_cast<std::size_t>(j)] < col_cnt[static_cast<std::size_t>(c)]))
        c = j;
    col_done[static_cast<std::size_t>(c)] = true;
    if (col_cnt[static_cast<std::size_t>(c)] == 0) {
      dependent_.push_back(c);
      continue;
    }
    int r = -1;
    active_rows.clear();
    for (int i = 0; i < m; ++i) {
      if (row_done[static_cast<std::size_t>(i)] || at(i, c) == 0) continue;
      active_rows.push_back(i);
      if (r < 0 || row_cnt[static_cast<std::size_t>(i)] < row_cnt[static_cast<std::size_t>(r)]) r = i;
    }
    Step step{r, c, inv_mod(at(r, c), p), {}, {}};
    prow.clear();
    for (int j = 0; j < m; ++j)
      if (!col_done[static_cast<std::size_t>(j)] && at(r, j) != 0) prow.emplace_back(j, at(r, j));
    for (int i : active_rows) {
      if (i == r) continue;
      const std::uint64_t l = at(i, c) * step.inv_pivot % p;
      step.lower.emplace_back(i, l);
      at(i, c) = 0;
      --row_cnt[static_cast<std::size_t>(i)];
      for (const auto& [j, u] : prow) {
        std::uint32_t& cell = at(i, j);
        const std::uint32_t old = cell;
        cell = static_cast<std::uint32_t>((old + p - l * u % p) % p);
        if (old == 0 && cell != 0) {
          ++row_cnt[static_cast<std::size_t>(i)];
          ++col_cnt[static_cast<std::size_t>(j)];
        } else if (old != 0 && cell == 0) {
          --row_cnt[static_cast<std::size_t>(i)];
          --col_cnt[static_cast<std::size_t>(j)];
        }
      }
    }
    for (const auto& [j, u] : prow) --col_cnt[static_cast<std::size_t>(j)];
    row_done[static_cast<std::size_t>(r)] = true;
    step.upper = prow;
    steps_.push_back(std::move(step));
  }
  for (int i = 0; i < m; ++i)
    if (!row_done[static_cast<std::size_t>(i)]) uncovered_.push_back(i);
  return dependent_.empty();
}

void ModularLU::solve(std::vector<std::uint64_t>& b) const {
  const std::uint64_t p = p_;
  for (const Step& s : steps_) {
    const std::uint64_t br = b[static_cast<std::size_t>(s.row)];
    if (br == 0) continue;
    for (const auto& [i, l] : s.lower) {
      auto& bi = b[static_cast<std::size_t>(i)];
      bi = (bi + p - l * br % p) % p;
    }
  }
  std::vector<std::uint64_t> x(static_cast<std::size_t>(m_), 0);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    std::uint64_t s = b[static_cast<std::size_t>(it->row)];
    for (const auto& [j, u] : it->upper) s = (s + p - u * x[static_cast<std::size_t>(j)] % p) % p;
    x[static_cast<std::size_t>(it->col)] = s * it->inv_pivot % p;
  }
  b.swap(x);
}

void ModularLU::solve_transpose(std::vector<std::uint64_t>& b) const {
  const std::uint64_t p = p_;
  std::vector<std::uint64_t> z(static_cast<std::size_t>(m_), 0);
  for (const Step& s : steps_) {
    const std::uint64_t zr = b[static_cast<std::size_t>(s.col)] * s.inv_pivot % p;
    z[static_cast<std::size_t>(s.row)] = zr;
    if (zr == 0) continue;
    for (const auto& [j, u] : s.upper) {
      auto& bj = b[static_cast<std::size_t>(j)];
      bj = (bj + p - u * zr % p) % p;
    }
  }
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    std::uint64_t acc = z[static_cast<std::size_t>(it->row)];
    for (const auto& [i, l] : it->lower) acc = (acc + p - l * z[static_cast<std::size_t>(i)] % p) % p;
    z[static_cast<std::size_t>(it->row)] = acc;
  }
  b.swap(z);
}

bool ExactSolver::factor(std::vector<const IntColumn*> cols, int m) {
  cols_ = std::move(cols);
  m_ = m;
  for (std::uint32_t p : kPrimes)
    if (lu_.factor(cols_, m_, p)) return true;
  return false;
}

void ExactSolver::multiply(const std::vector<Integer>& x, bool transpose, std::vector<Integer>& out) const {
  out.assign(static_cast<std::size_t>(m_), Integer(0));
  for (int c = 0; c < m_; ++c) {
    const IntColumn& col = *cols_[static_cast<std::size_t>(c)];
    if (transpose) {
      Integer& acc = out[static_cast<std::size_t>(c)];
      for (const auto& [r, v] : col) mpz_addmul(acc.get_mpz_t(), v.get_mpz_t(), x[static_cast<std::size_t>(r)].get_mpz_t());
    } else {
      const Integer& xc = x[static_cast<std::size_t>(c)];
      if (xc == 0) continue;
      for (const auto& [r, v] : col)
        mpz_addmul(out[static_cast<std::size_t>(r)].get_mpz_t(), v.get_mpz_t(), xc.get_mpz_t());
    }
  }
}

bool reconstruct(const Integer& u, const Integer& modulus, const Integer& bound, Integer& num, Integer& den) {
  Integer r0 = modulus, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  num = t1 < 0 ? Integer(-r1) : r1;
  den = abs(t1);
  return true;
}

ExactSolver::Result ExactSolver::lift(const std::vector<Integer>& rhs, bool transpose) const {
  const std::size_t m = static_cast<std::size_t>(m_);
  const std::uint32_t p = lu_.prime();
  std::vector<Integer> residual = rhs, x(m, Integer(0)), step_int(m), prod;
  std::vector<std::uint64_t> b(m);
  Integer pk = 1;
  long next_check = 1;
  for (long iter = 1;; ++iter) {
    bool zero = true;
    for (std::size_t i = 0; i < m; ++i) {
      b[i] = residue(residual[i], p);
      zero = zero && residual[i] == 0;
    }
    // B x = rhs already holds exactly.
    if (zero) return Result{x, Integer(1)};
    if (transpose)
      lu_.solve_transpose(b);
    else
      lu_.solve(b);
    for (std::size_t i = 0; i < m; ++i) {
      step_int[i] = static_cast<unsigned long>(b[i]);
      if (b[i]) mpz_addmul_ui(x[i].get_mpz_t(), pk.get_mpz_t(), static_cast<unsigned long>(b[i]));
    }
    multiply(step_int, transpose, prod);
    for (std::size_t i = 0; i < m; ++i) {
      residual[i] -= prod[i];
      mpz_divexact_ui(residual[i].get_mpz_t(), residual[i].get_mpz_t(), p);
    }
    pk *= p;
    if (iter < next_check) continue;
    next_check = iter + std::max(1L, iter / 4);

    Integer bound;
    Integer half = pk / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer den = 1, u, a, d;
    std::vector<Integer> num(m);
    std::vector<Integer> den_at(m);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      u = x[i] * den;
      mpz_mod(u.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
      if (u <= bound) {
        num[i] = u;
      } else if (pk - u <= bound) {
        num[i] = u - pk;
      } else if (reconstruct(u, pk, bound, a, d)) {
        num[i] = a;
        den *= d;
        if (den > bound) ok = false;
      } else {
        ok = false;
      }
      den_at[i] = den;
    }
    if (!ok) continue;
    Result r{std::move(num), den};
    for (std::size_t i = 0; i < m; ++i)
      if (den_at[i] != den) r.num[i] *= den / den_at[i];
    multiply(r.num, transpose, prod);
    for (std::size_t i = 0; i < m && ok; ++i) ok = prod[i] == rhs[i] * den;
    if (ok) return r;
  }
}

}  // namespace copylp::detail

#include <chrono>
#include <iostream>

#include "copylp/lp.hpp"
#include "dual_form.hpp"
#include "modular.hpp"
#include "simplex_float.hpp"

namespace copylp {

namespace detail {
namespace {

// Exact simplex on the dual program with Bland's rule. Every pivot refactors
// the basis and recomputes the iterate with lifted solves.
class ExactSimplex {
 public:
  ExactSimplex(const DualForm& form, const ExactOptions& options, bool zero_rhs)
      : f_(form), opt_(options), m_(form.m), n_(form.n) {
    art_.resize(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k) art_[static_cast<std::size_t>(k)] = {{k, Integer(form.art_sign[static_cast<std::size_t>(k)])}};
    rhs_ = zero_rhs ? std::vector<Integer>(static_cast<std::size_t>(m_), Integer(0)) : form.rhs;
    pos_.assign(static_cast<std::size_t>(form.total()), -1);
  }

  void set_basis(const std::vector<int>& basis) {
    head_ = basis;
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int k = 0; k < m_; ++k) pos_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] = k;
  }
  void cold_basis() {
    std::vector<int> b(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k) b[static_cast<std::size_t>(k)] = n_ + k;
    set_basis(b);
  }

  DualStatus run(bool warm) {
    if (!warm) cold_basis();
    for (int attempt = 0; attempt < 2; ++attempt) {
      refresh();
      if (!primal_feasible(1)) {
        // Warm basis off by a few pivots: let the dual simplex repair it.
        phase_ = 2;
        refresh_pi();
        if (dual_feasible()) {
          DualStatus s = dual();
          if (s == DualStatus::kInfeasible) return s;
          if (s == DualStatus::kFailed) return s;
        }
        if (!primal_feasible(1)) {
          if (opt_.verbose) std::cerr << "  exact: warm basis rejected, cold start\n";
          cold_basis();
          refresh();
        }
      }
      if (!primal_feasible(2)) {
        phase_ = 1;
        DualStatus s = primal();
        if (s == DualStatus::kFailed) return s;
        refresh();
        if (!primal_feasible(2)) return DualStatus::kInfeasible;
      }
      phase_ = 2;
      DualStatus s = primal();
      if (s != DualStatus::kFailed || attempt > 0) return s;
      cold_basis();
    }
    return DualStatus::kFailed;
  }

  const std::vector<int>& basis() const { return head_; }
  const ExactSolver::Result& x() const { return xb_; }
  const ExactSolver::Result& pi() const { return pi_; }
  long pivots() const { return pivots_; }
  const std::string& message() const { return message_; }

 private:
  const IntColumn& column(int j) const {
    return j < n_ ? f_.cols[static_cast<std::size_t>(j)] : art_[static_cast<std::size_t>(j - n_)];
  }
  bool is_free(int j) const { return j < n_ && f_.free_var[static_cast<std::size_t>(j)]; }
  bool fixed(int j) const { return j >= n_ && phase_ == 2; }
  Integer cost(int j) const {
    if (phase_ == 1) return Integer(j >= n_ ? 1 : 0);
    return j < n_ ? f_.cost[static_cast<std::size_t>(j)] : Integer(0);
  }

  // Refactors, repairing a singular basis with artificial columns.
  void factor() {
    for (int round = 0; round < 3; ++round) {
      std::vector<const IntColumn*> cols;
      cols.reserve(static_cast<std::size_t>(m_));
      for (int j : head_) cols.push_back(&column(j));
      if (solver_.factor(std::move(cols), m_)) return;
      const auto dep = solver_.dependent();
      const auto unc = solver_.uncovered();
      for (std::size_t i = 0; i < dep.size() && i < unc.size(); ++i) {
        const int k = dep[i];
        pos_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] = -1;
        head_[static_cast<std::size_t>(k)] = n_ + unc[i];
        pos_[static_cast<std::size_t>(n_ + unc[i])] = k;
      }
    }
    throw Error("exact solver: basis repair failed");
  }

  void refresh() {
    factor();
    xb_ = solver_.solve(rhs_);
  }

  void refresh_pi() {
    std::vector<Integer> cb(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k) cb[static_cast<std::size_t>(k)] = cost(head_[static_cast<std::size_t>(k)]);
    pi_ = solver_.solve_transpose(cb);
  }

  // Scaled reduced cost: d_j * pi.den.
  Integer reduced(int j) const {
    Integer d = cost(j) * pi_.den;
    for (const auto& [r, v] : column(j)) mpz_submul(d.get_mpz_t(), v.get_mpz_t(), pi_.num[static_cast<std::size_t>(r)].get_mpz_t());
    return d;
  }

  // Bounds of phase `phase`: structurals >= 0 unless free, artificials >= 0
  // in phase 1 and = 0 in phase 2.
  bool primal_feasible(int phase) const {
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      const int s = sgn(xb_.num[static_cast<std::size_t>(k)]);
      if (j >= n_ ? (phase == 2 ? s != 0 : s < 0) : (!is_free(j) && s < 0)) return false;
    }
    return true;
  }

  bool dual_feasible() const {
    for (int j = 0; j < f_.total(); ++j) {
      if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j)) continue;
      const int s = sgn(reduced(j));
      if (is_free(j) ? s != 0 : s < 0) return false;
    }
    return true;
  }

  bool budget() {
    if (++pivots_ > opt_.max_pivots) {
      message_ = "exact pivot limit reached";
      return false;
    }
    if (opt_.verbose && pivots_ % 10 == 0) std::cerr << "  exact pivot " << pivots_ << "\n";
    return true;
  }

  void pivot(int r, int q) {
    pos_[static_cast<std::size_t>(head_[static_cast<std::size_t>(r)])] = -1;
    head_[static_cast<std::size_t>(r)] = q;
    pos_[static_cast<std::size_t>(q)] = r;
  }

  std::vector<Integer> dense_column(int j) const {
    std::vector<Integer> a(static_cast<std::size_t>(m_), Integer(0));
    for (const auto& [r, v] : column(j)) a[static_cast<std::size_t>(r)] = v;
    return a;
  }

  // Primal simplex from a phase-feasible basis, Bland's rule throughout.
  DualStatus primal() {
    for (;;) {
      refresh();
      refresh_pi();
      int q = -1, dir = 0;
      for (int j = 0; j < f_.total() && q < 0; ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j)) continue;
        const int s = sgn(reduced(j));
        if (s < 0) q = j, dir = 1;
        else if (s > 0 && is_free(j)) q = j, dir = -1;
      }
      if (q < 0) return DualStatus::kOptimal;
      if (!budget()) return DualStatus::kFailed;
      const auto alpha = solver_.solve(dense_column(q));
      int r = -1;
      Rational best;
      for (int k = 0; k < m_; ++k) {
        const int j = head_[static_cast<std::size_t>(k)];
        const int sd = dir * sgn(alpha.num[static_cast<std::size_t>(k)]);
        if (sd == 0 || is_free(j)) continue;
        // Lower bound 0 blocks a decrease; an artificial fixed at 0 blocks both ways.
        if (sd < 0 && !fixed(j)) continue;
        Rational ratio(xb_.num[static_cast<std::size_t>(k)] * alpha.den,
                       xb_.den * alpha.num[static_cast<std::size_t>(k)] * dir);
        ratio.canonicalize();
        if (fixed(j)) ratio = 0;
        if (r < 0 || ratio < best || (ratio == best && j < head_[static_cast<std::size_t>(r)])) {
          r = k;
          best = ratio;
        }
      }
      if (r < 0) return DualStatus::kUnbounded;
      pivot(r, q);
    }
  }

  // Dual simplex from a dual-feasible basis in phase 2.
  DualStatus dual() {
    for (;;) {
      int r = -1;
      for (int k = 0; k < m_; ++k) {
        const int j = head_[static_cast<std::size_t>(k)];
        const int s = sgn(xb_.num[static_cast<std::size_t>(k)]);
        const bool bad = j >= n_ ? s != 0 : (!is_free(j) && s < 0);
        if (bad && (r < 0 || j < head_[static_cast<std::size_t>(r)])) r = k;
      }
      if (r < 0) return DualStatus::kOptimal;
      if (!budget()) return DualStatus::kFailed;
      const bool increase = sgn(xb_.num[static_cast<std::size_t>(r)]) < 0;
      std::vector<Integer> er(static_cast<std::size_t>(m_), Integer(0));
      er[static_cast<std::size_t>(r)] = 1;
      const auto rho = solver_.solve_transpose(er);
      int q = -1;
      Rational best;
      for (int j = 0; j < f_.total(); ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j)) continue;
        Integer arj = 0;
        for (const auto& [i, v] : column(j)) mpz_addmul(arj.get_mpz_t(), v.get_mpz_t(), rho.num[static_cast<std::size_t>(i)].get_mpz_t());
        if (arj == 0) continue;
        if (!is_free(j) && (increase ? arj > 0 : arj < 0)) continue;
        // |d_j / alpha_rj|, both carry positive scale factors.
        Rational ratio(abs(reduced(j)) * rho.den, abs(arj) * pi_.den);
        ratio.canonicalize();
        if (q < 0 || ratio < best) {
          q = j;
          best = ratio;
        }
      }
      if (q < 0) return DualStatus::kInfeasible;
      pivot(r, q);
      refresh();
      refresh_pi();
    }
  }

  const DualForm& f_;
  ExactOptions opt_;
  int m_, n_;
  std::vector<IntColumn> art_;
  std::vector<Integer> rhs_;
  std::vector<int> head_, pos_;
  int phase_ = 2;
  ExactSolver solver_;
  ExactSolver::Result xb_, pi_;
  long pivots_ = 0;
  std::string message_;
};

}  // namespace
}  // namespace detail

namespace {

using detail::DualStatus;

template <class Scalar>
Solution<Scalar> status_only(SolveStatus s, long iterations, std::string message = {}) {
  Solution<Scalar> out;
  out.status = s;
  out.iterations = iterations;
  out.message = std::move(message);
  return out;
}

}  // namespace

Solution<double> solve_float(const LP& lp, const FloatOptions& options) {
  const auto form = detail::make_dual_form(lp);
  auto run = detail::run_float_simplex(form, options);
  if (run.status == DualStatus::kFailed)
    return status_only<double>(SolveStatus::kFailed, run.iterations, run.message);
  if (run.status == DualStatus::kUnbounded) return status_only<double>(SolveStatus::kInfeasible, run.iterations);
  if (run.status == DualStatus::kInfeasible) {
    auto probe = detail::run_float_simplex(form, options, true);
    const SolveStatus s = probe.status == DualStatus::kUnbounded ? SolveStatus::kInfeasible
                          : probe.status == DualStatus::kOptimal ? SolveStatus::kUnbounded
                                                                 : SolveStatus::kFailed;
    return status_only<double>(s, run.iterations + probe.iterations, probe.message);
  }
  Solution<double> out;
  out.status = SolveStatus::kOptimal;
  out.iterations = run.iterations;
  out.basis = run.basis;
  out.primal = -run.pi;
  out.dual.setZero(lp.row_count());
  const double sigma = form.sigma.get_d();
  double value = lp.objective_constant.get_d();
  for (int i = 0; i < lp.row_count(); ++i) {
    out.dual(i) = run.values(i) * form.row_scale[static_cast<std::size_t>(i)].get_d() / sigma;
    value += out.dual(i) * lp.rows[static_cast<std::size_t>(i)].rhs.get_d();
  }
  out.value = value;
  return out;
}

Solution<Rational> solve_exact(const LP& lp, const ExactOptions& options) {
  const auto form = detail::make_dual_form(lp);
  detail::ExactSimplex simplex(form, options, false);
  long float_iterations = 0;
  bool warm = false;
  if (options.warm_start) {
    auto run = detail::run_float_simplex(form, options.float_options);
    float_iterations = run.iterations;
    if (run.status == DualStatus::kOptimal) {
      simplex.set_basis(run.basis);
      warm = true;
    }
  }
  DualStatus s = simplex.run(warm);
  const long iterations = float_iterations + simplex.pivots();
  if (s == DualStatus::kFailed) return status_only<Rational>(SolveStatus::kFailed, iterations, simplex.message());
  if (s == DualStatus::kUnbounded) return status_only<Rational>(SolveStatus::kInfeasible, iterations);
  if (s == DualStatus::kInfeasible) {
    detail::ExactSimplex probe(form, options, true);
    DualStatus ps = probe.run(false);
    const SolveStatus st = ps == DualStatus::kUnbounded ? SolveStatus::kInfeasible
                           : ps == DualStatus::kOptimal ? SolveStatus::kUnbounded
                                                        : SolveStatus::kFailed;
    return status_only<Rational>(st, iterations + probe.pivots(), probe.message());
  }

  Solution<Rational> out;
  out.status = SolveStatus::kOptimal;
  out.iterations = iterations;
  out.basis = simplex.basis();
  const auto& pi = simplex.pi();
  out.primal.resize(lp.column_count());
  for (int k = 0; k < lp.column_count(); ++k) out.primal(k) = -pi.at(static_cast<std::size_t>(k));
  out.dual = Vector<Rational>::Constant(lp.row_count(), Rational(0));
  Rational value = lp.objective_constant;
  const auto& xb = simplex.x();
  for (int k = 0; k < lp.column_count(); ++k) {
    const int j = out.basis[static_cast<std::size_t>(k)];
    if (j >= lp.row_count()) continue;
    Rational y = xb.at(static_cast<std::size_t>(k)) * form.row_scale[static_cast<std::size_t>(j)] / form.sigma;
    out.dual(j) = y;
    value += y * lp.rows[static_cast<std::size_t>(j)].rhs;
  }
  out.value = value;
  // Strong duality check against the primal objective.
  Rational primal_value = lp.objective_constant;
  for (int k = 0; k < lp.column_count(); ++k) primal_value += lp.objective[static_cast<std::size_t>(k)] * out.primal(k);
  if (primal_value != value) {
    out.status = SolveStatus::kFailed;
    out.message = "duality gap in exact solution";
  }
  return out;
}

}  // namespace copylp

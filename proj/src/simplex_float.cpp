#include "simplex_float.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>

namespace copylp::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Bounded revised simplex. Nonbasic variables sit at a bound (or at zero when
// free); basic values are B^{-1}(rhs - N x_N).
class FloatSimplex {
 public:
  FloatSimplex(const DualForm& form, const FloatOptions& options, bool zero_rhs)
      : form_(form), opt_(options), m_(form.m), total_(form.total()) {
    tol_ = std::max(options.tolerance, 1e-12);
    scale_.setOnes(total_);
    std::vector<Eigen::Triplet<double>> trips;
    for (int j = 0; j < form.n; ++j) {
      double mx = 0;
      for (const auto& [k, v] : form.cols[static_cast<std::size_t>(j)]) mx = std::max(mx, std::abs(v.get_d()));
      if (options.row_scaling && mx > 0) scale_(j) = 1.0 / mx;
      for (const auto& [k, v] : form.cols[static_cast<std::size_t>(j)])
        trips.emplace_back(k, j, v.get_d() * scale_(j));
    }
    for (int k = 0; k < m_; ++k) trips.emplace_back(k, form.n + k, form.art_sign[static_cast<std::size_t>(k)]);
    a_.resize(m_, total_);
    a_.setFromTriplets(trips.begin(), trips.end());
    a_.makeCompressed();

    cost2_.setZero(total_);
    for (int j = 0; j < form.n; ++j) cost2_(j) = form.cost[static_cast<std::size_t>(j)].get_d() * scale_(j);
    cost1_.setZero(total_);
    cost1_.tail(m_).setOnes();
    rhs_.setZero(m_);
    if (!zero_rhs)
      for (int k = 0; k < m_; ++k) rhs_(k) = form.rhs[static_cast<std::size_t>(k)].get_d();
    lo0_.setZero(total_);
    up0_.setConstant(total_, kInf);
    for (int j = 0; j < form.n; ++j)
      if (form.free_var[static_cast<std::size_t>(j)]) lo0_(j) = -kInf;
    lo_ = lo0_;
    up_ = up0_;
    x_.setZero(total_);

    head_.resize(static_cast<std::size_t>(m_));
    pos_.assign(static_cast<std::size_t>(total_), -1);
    for (int k = 0; k < m_; ++k) {
      head_[static_cast<std::size_t>(k)] = form.n + k;
      pos_[static_cast<std::size_t>(form.n + k)] = k;
    }
    weight_.setOnes(total_);
  }

  FloatRun run() {
    FloatRun out;
    const double rhs_norm = std::max(1.0, rhs_.lpNorm<Eigen::Infinity>());

    cost_ = &cost1_;
    refactor();
    perturb();
    DualStatus s = primal();
    if (s == DualStatus::kFailed) return fail(out);
    s = unperturb_and_clean();
    if (s == DualStatus::kFailed) return fail(out);
    double infeas = 0;
    for (int k = 0; k < m_; ++k)
      if (head_[static_cast<std::size_t>(k)] >= form_.n) infeas += std::abs(xb_(k));
    if (infeas > 1e-6 * rhs_norm) return finish(out, DualStatus::kInfeasible);

    // Phase 2: artificials fixed at zero.
    for (int k = 0; k < m_; ++k) {
      const int j = form_.n + k;
      up0_(j) = up_(j) = 0;
      if (pos_[static_cast<std::size_t>(j)] < 0) x_(j) = 0;
    }
    cost_ = &cost2_;
    perturb();
    s = primal();
    if (s == DualStatus::kFailed) return fail(out);
    if (s == DualStatus::kUnbounded) return finish(out, s);
    s = unperturb_and_clean();
    if (s == DualStatus::kFailed) return fail(out);
    if (s != DualStatus::kOptimal) return finish(out, s);

    compute_pi();
    out.status = DualStatus::kOptimal;
    out.basis = head_;
    out.values.setZero(total_);
    for (int j = 0; j < total_; ++j)
      if (pos_[static_cast<std::size_t>(j)] < 0) out.values(j) = x_(j) * scale_(j);
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      out.values(j) = xb_(k) * scale_(j);
    }
    out.pi = pi_;
    out.iterations = iterations_;
    return out;
  }

 private:
  FloatRun& fail(FloatRun& out) {
    out.status = DualStatus::kFailed;
    out.message = message_;
    out.iterations = iterations_;
    return out;
  }
  FloatRun& finish(FloatRun& out, DualStatus s) {
    out.status = s;
    out.iterations = iterations_;
    return out;
  }

  // Bounds of basic variables are relaxed outward by a small random amount;
  // a variable is relaxed again whenever it enters. Values never move.
  void perturb() {
    perturbing_ = true;
    for (int k = 0; k < m_; ++k) relax(head_[static_cast<std::size_t>(k)]);
  }

  void relax(int j) {
    if (!perturbing_) return;
    std::uniform_real_distribution<double> unif(0.5, 1.0);
    const double delta = 1e-7 * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>());
    if (lo0_(j) > -kInf && lo_(j) == lo0_(j)) lo_(j) -= delta * unif(rng_);
    if (up0_(j) < kInf && up_(j) == up0_(j)) up_(j) += delta * unif(rng_);
  }

  // Moves violated bounds of basic variables out to their current values.
  void shift_bounds() {
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      if (xb_(k) < lo_(j)) lo_(j) = xb_(k);
      if (xb_(k) > up_(j)) up_(j) = xb_(k);
    }
  }

  DualStatus unperturb_and_clean() {
    perturbing_ = false;
    for (int j = 0; j < total_; ++j) {
      lo_(j) = lo0_(j);
      up_(j) = up0_(j);
      if (pos_[static_cast<std::size_t>(j)] < 0) x_(j) = nonbasic_value(j);
    }
    refactor();
    if (!factored_) return DualStatus::kFailed;
    DualStatus s = DualStatus::kOptimal;
    for (int round = 0; round < 50; ++round) {
      s = dual();
      if (s != DualStatus::kOptimal) return s;
      s = primal();
      if (s != DualStatus::kOptimal) return s;
      if (max_infeasibility() <= feasibility_tolerance()) return s;
    }
    return s;
  }

  // Value of a nonbasic variable: the nearer finite bound, or zero if free.
  double nonbasic_value(int j) const {
    const bool has_lo = lo_(j) > -kInf, has_up = up_(j) < kInf;
    if (has_lo && has_up) return std::abs(x_(j) - lo_(j)) <= std::abs(x_(j) - up_(j)) ? lo_(j) : up_(j);
    if (has_lo) return lo_(j);
    if (has_up) return up_(j);
    return 0;
  }

  double feasibility_tolerance() const { return tol_ * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>()); }

  void refactor() {
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < m_; ++k)
      for (SpMat::InnerIterator it(a_, head_[static_cast<std::size_t>(k)]); it; ++it)
        trips.emplace_back(static_cast<int>(it.row()), k, it.value());
    SpMat b(m_, m_);
    b.setFromTriplets(trips.begin(), trips.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    factored_ = lu_.info() == Eigen::Success;
    etas_.clear();
    eta_rows_.clear();
    if (!factored_) {
      message_ = "basis factorization failed: " + lu_.lastErrorMessage();
      if (!good_head_.empty() && good_head_ != head_ && ++recoveries_ <= 20) {
        // Fall back to the last basis that factored.
        const std::vector<int> old = head_;
        head_ = good_head_;
        std::fill(pos_.begin(), pos_.end(), -1);
        for (int k = 0; k < m_; ++k) pos_[static_cast<std::size_t>(head_[static_cast<std::size_t>(k)])] = k;
        for (int j : old)
          if (pos_[static_cast<std::size_t>(j)] < 0) x_(j) = nonbasic_value(j);
        refactor();
      }
      return;
    }
    good_head_ = head_;
    recompute();
  }

  void recompute() {
    Vec r = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (pos_[static_cast<std::size_t>(j)] >= 0 || x_(j) == 0) continue;
      for (SpMat::InnerIterator it(a_, j); it; ++it) r(it.row()) -= it.value() * x_(j);
    }
    xb_ = ftran(r);
  }

  Vec ftran(const Vec& v) const {
    Vec w = lu_.solve(v);
    for (std::size_t e = 0; e < etas_.size(); ++e) {
      const int r = eta_rows_[e];
      const Vec& al = etas_[e];
      const double wr = w(r) / al(r);
      w -= wr * al;
      w(r) = wr;
    }
    return w;
  }

  Vec btran(Vec v) const {
    for (std::size_t e = etas_.size(); e-- > 0;) {
      const int r = eta_rows_[e];
      const Vec& al = etas_[e];
      const double vr = v(r);
      v(r) = (vr - (al.dot(v) - al(r) * vr)) / al(r);
    }
    return lu_.transpose().solve(v);
  }

  void compute_pi() {
    Vec cb(m_);
    for (int k = 0; k < m_; ++k) cb(k) = (*cost_)(head_[static_cast<std::size_t>(k)]);
    pi_ = btran(cb);
  }

  double column_dot(int j, const Vec& v) const {
    double s = 0;
    for (SpMat::InnerIterator it(a_, j); it; ++it) s += it.value() * v(it.row());
    return s;
  }

  bool fixed(int j) const { return lo0_(j) == up0_(j); }
  bool is_free(int j) const { return lo_(j) == -kInf && up_(j) == kInf; }
  bool at_upper(int j) const { return up_(j) < kInf && x_(j) == up_(j); }

  double max_infeasibility() const {
    double worst = 0;
    for (int k = 0; k < m_; ++k) {
      const int j = head_[static_cast<std::size_t>(k)];
      worst = std::max({worst, lo_(j) - xb_(k), xb_(k) - up_(j)});
    }
    return worst;
  }

  bool step_budget() {
    if (++iterations_ > opt_.max_iterations) {
      message_ = "iteration limit reached";
      return false;
    }
    if (opt_.verbose && iterations_ % 1000 == 0)
      std::cerr << "  float iteration " << iterations_ << " phase " << (cost_ == &cost1_ ? 1 : 2)
                << " objective " << objective() << " infeasibility " << max_infeasibility() << "\n";
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) refactor();
    return factored_;
  }

  double objective() const {
    double s = 0;
    for (int j = 0; j < total_; ++j)
      if (pos_[static_cast<std::size_t>(j)] < 0) s += (*cost_)(j) * x_(j);
    for (int k = 0; k < m_; ++k) s += (*cost_)(head_[static_cast<std::size_t>(k)]) * xb_(k);
    return s;
  }

  void pivot(int r, int q, const Vec& alpha, double entering_value, double leaving_value) {
    const int leaving = head_[static_cast<std::size_t>(r)];
    xb_(r) = entering_value;
    x_(leaving) = leaving_value;
    x_(q) = 0;
    pos_[static_cast<std::size_t>(leaving)] = -1;
    pos_[static_cast<std::size_t>(q)] = r;
    head_[static_cast<std::size_t>(r)] = q;
    etas_.push_back(alpha);
    eta_rows_.push_back(r);
    relax(q);
  }

  // Primal simplex with Devex pricing, a Harris ratio test and bound flips.
  DualStatus primal() {
    const double tol_d = tol_, tol_p = feasibility_tolerance();
    weight_.setOnes();
    for (;;) {
      if (!step_budget()) return DualStatus::kFailed;
      if (perturbing_) shift_bounds();
      compute_pi();
      int q = -1;
      double best = 0, dir = 0;
      for (int j = 0; j < total_; ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j)) continue;
        const double d = (*cost_)(j) - column_dot(j, pi_);
        double sj;
        if (is_free(j))
          sj = std::abs(d) > tol_d ? (d < 0 ? 1.0 : -1.0) : 0.0;
        else if (at_upper(j))
          sj = d > tol_d ? -1.0 : 0.0;
        else
          sj = d < -tol_d ? 1.0 : 0.0;
        if (sj == 0) continue;
        const double score = d * d / weight_(j);
        if (score > best) {
          best = score;
          q = j;
          dir = sj;
        }
      }
      if (q < 0) return DualStatus::kOptimal;
      const Vec aq = a_.col(q);
      const Vec alpha = ftran(aq);
      const double tol_piv = std::max(1e-9, 1e-7 * alpha.lpNorm<Eigen::Infinity>());
      // Harris pass 1: largest step with bounds relaxed by the tolerance.
      double theta_max = kInf;
      for (int k = 0; k < m_; ++k) {
        const int j = head_[static_cast<std::size_t>(k)];
        const double delta = dir * alpha(k);
        if (delta > tol_piv && lo_(j) > -kInf)
          theta_max = std::min(theta_max, (xb_(k) - lo_(j) + tol_p) / delta);
        else if (delta < -tol_piv && up_(j) < kInf)
          theta_max = std::min(theta_max, (up_(j) - xb_(k) + tol_p) / -delta);
      }
      const double range = up_(q) - lo_(q);
      if (range <= theta_max) {
        if (range == kInf) return DualStatus::kUnbounded;
        xb_ -= (range * dir) * alpha;
        x_(q) = dir > 0 ? up_(q) : lo_(q);
        continue;
      }
      // Pass 2: among blocking rows within that step, the largest pivot.
      int r = -1;
      double big = 0, theta = 0;
      bool to_lower = true;
      for (int k = 0; k < m_; ++k) {
        const int j = head_[static_cast<std::size_t>(k)];
        const double delta = dir * alpha(k);
        double ratio;
        bool lower;
        if (delta > tol_piv && lo_(j) > -kInf) {
          ratio = (xb_(k) - lo_(j)) / delta;
          lower = true;
        } else if (delta < -tol_piv && up_(j) < kInf) {
          ratio = (up_(j) - xb_(k)) / -delta;
          lower = false;
        } else {
          continue;
        }
        if (ratio <= theta_max && std::abs(delta) > big) {
          big = std::abs(delta);
          r = k;
          theta = std::max(ratio, 0.0);
          to_lower = lower;
        }
      }
      Vec er = Vec::Zero(m_);
      er(r) = 1;
      const Vec rho = btran(er);
      const double arq = alpha(r);
      const double wq = weight_(q);
      for (int j = 0; j < total_; ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j) || j == q) continue;
        const double arj = column_dot(j, rho);
        if (arj != 0) weight_(j) = std::max(weight_(j), (arj / arq) * (arj / arq) * wq);
      }
      const int leaving = head_[static_cast<std::size_t>(r)];
      weight_(leaving) = std::max(wq / (arq * arq), 1.0);
      const double entering = x_(q) + theta * dir;
      xb_ -= (theta * dir) * alpha;
      pivot(r, q, alpha, entering, to_lower ? lo_(leaving) : up_(leaving));
    }
  }

  // Dual simplex on a (nearly) dual feasible basis.
  DualStatus dual() {
    const double tol_p = feasibility_tolerance();
    Vec arow(total_), dvec(total_);
    for (;;) {
      int r = -1;
      double worst = tol_p;
      for (int k = 0; k < m_; ++k) {
        const int j = head_[static_cast<std::size_t>(k)];
        const double v = std::max(lo_(j) - xb_(k), xb_(k) - up_(j));
        if (v > worst) {
          worst = v;
          r = k;
        }
      }
      if (r < 0) return DualStatus::kOptimal;
      if (!step_budget()) return DualStatus::kFailed;
      compute_pi();
      const int leaving = head_[static_cast<std::size_t>(r)];
      const bool increase = xb_(r) < lo_(leaving);
      const double target = increase ? lo_(leaving) : up_(leaving);
      Vec er = Vec::Zero(m_);
      er(r) = 1;
      const Vec rho = btran(er);
      double amax = 0;
      for (int j = 0; j < total_; ++j) {
        arow(j) = 0;
        if (pos_[static_cast<std::size_t>(j)] >= 0 || fixed(j)) continue;
        arow(j) = column_dot(j, rho);
        dvec(j) = (*cost_)(j) - column_dot(j, pi_);
        amax = std::max(amax, std::abs(arow(j)));
      }
      const double tol_piv = std::max(1e-9, 1e-7 * amax);
      // x_r moves by -arow(j) * step for entering j; the step sign must be
      // allowed by j's bound status.
      auto move_sign = [&](int j) {
        if (std::abs(arow(j)) <= tol_piv) return 0.0;
        const double need = increase ? -arow(j) : arow(j);
        if (is_free(j)) return need > 0 ? 1.0 : -1.0;
        if (at_upper(j)) return need < 0 ? -1.0 : 0.0;
        return need > 0 ? 1.0 : 0.0;
      };
      auto slack = [&](int j, double sg) { return std::max(sg * dvec(j), 0.0); };
      double bound = kInf;
      for (int j = 0; j < total_; ++j) {
        const double sg = move_sign(j);
        if (sg != 0) bound = std::min(bound, (slack(j, sg) + tol_) / std::abs(arow(j)));
      }
      if (bound == kInf) return DualStatus::kInfeasible;
      int q = -1;
      double best_alpha = 0;
      for (int j = 0; j < total_; ++j) {
        const double sg = move_sign(j);
        if (sg == 0 || slack(j, sg) / std::abs(arow(j)) > bound) continue;
        if (std::abs(arow(j)) > best_alpha) {
          best_alpha = std::abs(arow(j));
          q = j;
        }
      }
      const Vec aq = a_.col(q);
      const Vec alpha = ftran(aq);
      if (std::abs(alpha(r) - arow(q)) > 1e-6 * (1.0 + std::abs(arow(q)))) {
        if (etas_.empty()) {
          message_ = "dual simplex: inconsistent pivot";
          return DualStatus::kFailed;
        }
        refactor();
        continue;
      }
      const double step = (xb_(r) - target) / alpha(r);
      const double entering = x_(q) + step;
      xb_ -= step * alpha;
      pivot(r, q, alpha, entering, target);
    }
  }

  const DualForm& form_;
  FloatOptions opt_;
  int m_;
  int total_;
  double tol_;
  SpMat a_;
  Vec scale_, cost1_, cost2_, rhs_, lo0_, up0_, lo_, up_, x_, xb_, pi_, weight_;
  const Vec* cost_ = nullptr;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<int> good_head_;
  int recoveries_ = 0;
  mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  bool factored_ = false;
  bool perturbing_ = false;
  std::vector<Vec> etas_;
  std::vector<int> eta_rows_;
  std::mt19937_64 rng_{20240917};
  long iterations_ = 0;
  std::string message_;
};

}  // namespace

FloatRun run_float_simplex(const DualForm& form, const FloatOptions& options, bool zero_rhs) {
  FloatSimplex s(form, options, zero_rhs);
  return s.run();
}

}  // namespace copylp::detail

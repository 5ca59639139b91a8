#include "magdyn/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace magdyn {

void LpProblem::add_column(const std::vector<std::pair<int, double>>& entries, double c) {
  for (const auto& [r, v] : entries) {
    if (r < 0 || r >= rows) throw std::invalid_argument("column entry row out of range");
    row_index.push_back(r);
    value.push_back(v);
  }
  col_start.push_back(static_cast<int>(row_index.size()));
  cost.push_back(c);
}

namespace {

class Simplex {
 public:
  Simplex(const LpProblem& p, const LpOptions& o)
      : p_(p), opt_(o), m_(p.rows), n_(p.cols()), sign_(p.rows, 1.0), b_(p.rows) {
    if (static_cast<int>(p.rhs.size()) != m_ || static_cast<int>(p.cost.size()) != n_)
      throw std::invalid_argument("LP dimensions are inconsistent");
    for (int i = 0; i < m_; ++i) {
      if (p.rhs[i] < 0) sign_[i] = -1.0;
      b_(i) = std::abs(p.rhs[i]);
    }
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, -1);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = i;
    }
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    xb_ = b_;
  }

  LpSolution run() {
    LpSolution sol;
    std::vector<double> c1(n_ + m_, 0.0);
    for (int i = 0; i < m_; ++i) c1[n_ + i] = 1.0;
    if (iterate(c1) == LpStatus::Unbounded) throw LpError("phase one reported unbounded");
    refactor();
    sol.phase_one_objective = objective(c1);
    if (sol.phase_one_objective > opt_.infeasible_threshold) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iterations_;
      sol.objective = std::numeric_limits<double>::infinity();
      return sol;
    }
    drive_out_artificials();

    std::vector<double> c2(n_ + m_, 0.0);
    if (!opt_.phase_one_only) {
      for (int j = 0; j < n_; ++j) c2[j] = p_.cost[j];
      sol.status = iterate(c2);
      refactor();
    } else {
      sol.status = LpStatus::Optimal;
    }

    sol.x.assign(n_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) sol.x[basis_[r]] = std::max(0.0, xb_(r));
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += p_.cost[j] * sol.x[j];

    Eigen::VectorXd y = duals(c2);
    sol.dual.resize(m_);
    sol.dual_objective = 0.0;
    for (int i = 0; i < m_; ++i) {
      sol.dual[i] = y(i) * sign_[i];
      sol.dual_objective += sol.dual[i] * p_.rhs[i];
    }
    sol.duality_gap = opt_.phase_one_only ? 0.0 : std::abs(sol.objective - sol.dual_objective);

    std::vector<double> ax(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (sol.x[j] == 0.0) continue;
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) ax[p_.row_index[k]] += p_.value[k] * sol.x[j];
    }
    for (int i = 0; i < m_; ++i) sol.primal_residual = std::max(sol.primal_residual, std::abs(ax[i] - p_.rhs[i]));
    sol.iterations = iterations_;
    return sol;
  }

 private:
  // Column of the sign-normalized system; artificials are unit vectors.
  template <class F>
  void for_column(int j, F&& f) const {
    if (j >= n_) {
      f(j - n_, 1.0);
      return;
    }
    for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) f(p_.row_index[k], p_.value[k] * sign_[p_.row_index[k]]);
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    for_column(j, [&](int r, double v) { a += v * binv_.col(r); });
    return a;
  }

  Eigen::VectorXd duals(const std::vector<double>& c) const {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = c[basis_[r]];
    return binv_.transpose() * cb;
  }

  double objective(const std::vector<double>& c) const {
    double s = 0.0;
    for (int r = 0; r < m_; ++r) s += c[basis_[r]] * xb_(r);
    return s;
  }

  double reduced_cost(int j, const std::vector<double>& c, const Eigen::VectorXd& y) const {
    double d = c[j];
    for_column(j, [&](int r, double v) { d -= v * y(r); });
    return d;
  }

  void refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) for_column(basis_[r], [&](int i, double v) { b(i, r) = v; });
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) throw LpError("basis became singular");
    binv_ = lu.inverse();
    xb_ = binv_ * b_;
    since_refactor_ = 0;
  }

  void pivot(int r, int q, const Eigen::VectorXd& alpha) {
    const double t = xb_(r) / alpha(r);
    xb_ -= t * alpha;
    xb_(r) = t;
    const Eigen::RowVectorXd prow = binv_.row(r) / alpha(r);
    for (int i = 0; i < m_; ++i)
      if (i != r && alpha(i) != 0.0) binv_.row(i) -= alpha(i) * prow;
    binv_.row(r) = prow;
    in_basis_[basis_[r]] = -1;
    basis_[r] = q;
    in_basis_[q] = r;
    for (int i = 0; i < m_; ++i)
      if (xb_(i) < 0.0 && xb_(i) > -opt_.feasibility_tol) xb_(i) = 0.0;
    ++iterations_;
    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }

  LpStatus iterate(const std::vector<double>& c) {
    bool bland = false;
    int stall = 0;
    double best = objective(c);
    while (true) {
      if (iterations_ >= opt_.max_iterations) throw LpError("simplex iteration limit reached");
      const Eigen::VectorXd y = duals(c);
      int q = -1;
      double dq = -opt_.optimality_tol;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j] >= 0) continue;
        const double d = reduced_cost(j, c, y);
        if (d < dq) {
          q = j;
          dq = d;
          if (bland) break;
        }
      }
      if (q < 0) return LpStatus::Optimal;

      const Eigen::VectorXd alpha = ftran(q);
      int r = -1;
      double tmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (alpha(i) <= opt_.pivot_tol) continue;
        const double t = std::max(0.0, xb_(i)) / alpha(i);
        if (r < 0 || t < tmin - 1e-12) {
          r = i;
          tmin = t;
        } else if (t <= tmin + 1e-12) {
          const bool better = bland ? basis_[i] < basis_[r] : alpha(i) > alpha(r);
          if (better) {
            r = i;
            tmin = std::min(tmin, t);
          }
        }
      }
      if (r < 0) return LpStatus::Unbounded;
      pivot(r, q, alpha);

      const double now = objective(c);
      if (now < best - 1e-12 * std::max(1.0, std::abs(best))) {
        best = now;
        stall = 0;
        bland = false;
      } else if (++stall > opt_.stall_limit) {
        bland = true;
      }
    }
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      const Eigen::RowVectorXd row = binv_.row(r);
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j] >= 0) continue;
        double v = 0.0;
        for_column(j, [&](int i, double a) { v += a * row(i); });
        if (std::abs(v) > best_abs) {
          best = j;
          best_abs = std::abs(v);
        }
      }
      if (best >= 0) pivot(r, best, ftran(best));
    }
    refactor();
    // Leftover artificials sit on redundant rows and must stay at zero;
    // they can no longer enter since only original columns are priced.
  }

  const LpProblem& p_;
  LpOptions opt_;
  int m_, n_;
  std::vector<double> sign_;
  Eigen::VectorXd b_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  Simplex s(problem, options);
  return s.run();
}

}  // namespace magdyn

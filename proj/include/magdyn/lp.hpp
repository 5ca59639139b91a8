// Two-phase revised simplex for  min c.x  s.t.  A x = b, x >= 0.
// A is held column-compressed; the basis inverse is dense and refactorized
// periodically. Sized for a few hundred rows and ~1e5 columns.
#pragma once

#include <stdexcept>
#include <vector>

namespace magdyn {

struct LpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LpProblem {
  int rows = 0;
  std::vector<int> col_start{0};
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> rhs;

  int cols() const { return static_cast<int>(col_start.size()) - 1; }
  void add_column(const std::vector<std::pair<int, double>>& entries, double c);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  double infeasible_threshold = 1e-7;  // phase-1 optimum above this => infeasible
  int max_iterations = 500000;
  int refactor_interval = 50;
  int stall_limit = 40;  // non-improving pivots before switching to Bland's rule
  bool phase_one_only = false;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  double phase_one_objective = 0.0;
  std::vector<double> dual;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace magdyn

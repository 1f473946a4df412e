#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace magiclab {

// min c^T x  s.t.  A x = b,  x_j >= 0 unless free[j].
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<bool> free;  // empty means all variables are nonnegative

  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, IterationLimit };
std::string to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Eigen::VectorXd x;     // primal, original variables
  Eigen::VectorXd dual;  // one multiplier per original row; A^T y <= c on nonnegative columns
  double objective = 0.0;
  double dual_objective = 0.0;
  long iterations = 0;
  int dropped_rows = 0;  // removed by presolve as linearly dependent

  // Diagnostics, all measured on the original program.
  double primal_residual = 0.0;       // max |A x - b|
  double dual_infeasibility = 0.0;    // max violation of the reduced-cost sign conditions
  double complementarity = 0.0;       // max |x_j (c - A^T y)_j|
  double duality_gap() const { return std::abs(objective - dual_objective); }
};

struct LPOptions {
  double tolerance = 1e-9;
  long max_iterations = 200000;
  int refactor_interval = 50;
};

// Two-phase dense tableau simplex. Dantzig pricing, falling back to Bland's rule
// during runs of degenerate pivots; ratio ties go to the largest pivot.
LPSolution solve_lp(const LinearProgram& lp, const LPOptions& options = {});

}  // namespace magiclab

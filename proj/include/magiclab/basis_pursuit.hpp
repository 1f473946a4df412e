#pragma once

#include "magiclab/state.hpp"

#include <stdexcept>

namespace magiclab {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// min sum_j |c_j|  s.t.  dictionary * c = target, over complex c.
struct BasisPursuitProblem {
  Matrix dictionary;
  Vector target;
  double span_tolerance = 1e-8;  // least-squares residual allowed for the target
};

struct BasisPursuitOptions {
  int max_iterations = 20000;
  double rho = 1.0;
  double residual_tolerance = 1e-8;
  double gap_tolerance = 1e-6;
  int check_interval = 25;
  // When ADMM stalls short of the gap, finish with a log-barrier Newton
  // method on the dual (2 d^n real variables).
  bool polish = true;
};

struct BasisPursuitResult {
  Vector coefficients;  // exactly feasible up to round-off
  double l1_value = 0.0;     // sum |coefficients|, an upper bound on the optimum
  double lower_bound = 0.0;  // from a scaled dual feasible point
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double final_rho = 0.0;
  bool polished = false;

  double gap() const { return l1_value - lower_bound; }
};

// ADMM on the split c = z with projection onto {Dc = t} and complex soft thresholding,
// then the optional dual polish. Throws SolverError when the certified gap is not reached.
BasisPursuitResult solve_basis_pursuit(const BasisPursuitProblem& problem, const BasisPursuitOptions& options = {});

// Certified lower bound Re(y^H t) / max_j |d_j^H y| for any y.
double dual_lower_bound(const Matrix& dictionary, const Vector& target, const Vector& y);

}  // namespace magiclab

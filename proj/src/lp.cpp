#include "magiclab/lp.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magiclab {

void LinearProgram::validate() const {
  if (A.rows() != b.size()) throw std::invalid_argument("LP: A rows and b length differ");
  if (A.cols() != objective.size()) throw std::invalid_argument("LP: A columns and objective length differ");
  if (!free.empty() && free.size() != static_cast<std::size_t>(A.cols()))
    throw std::invalid_argument("LP: free flags length differs from variable count");
  if (!A.allFinite() || !b.allFinite() || !objective.allFinite()) throw std::invalid_argument("LP: non-finite data");
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
    case LPStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Outcome { Optimal, Unbounded, IterationLimit };

// Tableau over [A | I] with an explicit basis; B^{-1} is refreshed from the
// original columns every few pivots to keep round-off from accumulating.
class Tableau {
 public:
  Tableau(MatrixXd M, VectorXd rhs, std::vector<Index> basis, const LPOptions& opt)
      : M_(std::move(M)), rhs_(std::move(rhs)), basis_(std::move(basis)), opt_(opt) {
    refactor();
  }

  static constexpr double kFeasSlack = 1e-9;
  static constexpr int kBlandAfter = 50;

  Outcome run(const VectorXd& cost, Index allowed_cols, long& iterations) {
    const double dtol = opt_.tolerance * std::max(1.0, cost.cwiseAbs().maxCoeff());
    int since_refactor = 0;
    int degenerate_run = 0;
    while (true) {
      if (since_refactor >= opt_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }
      VectorXd cb(static_cast<Index>(basis_.size()));
      for (std::size_t i = 0; i < basis_.size(); ++i) cb[static_cast<Index>(i)] = cost[basis_[i]];
      const VectorXd reduced = cost.head(allowed_cols) - T_.leftCols(allowed_cols).transpose() * cb;
      // Dantzig pricing; Bland's lowest-index rule while stalled on degenerate vertices.
      const bool bland = degenerate_run >= kBlandAfter;
      Index enter = -1;
      for (Index j = 0; j < allowed_cols; ++j) {
        if (reduced[j] >= -dtol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter < 0 || reduced[j] < reduced[enter]) enter = j;
      }
      if (enter < 0) return Outcome::Optimal;
      if (iterations >= opt_.max_iterations) return Outcome::IterationLimit;
      // Two-pass ratio test: bound the step with a small feasibility slack,
      // then take the largest pivot among rows reaching that bound.
      const double col_scale = std::max(1.0, T_.col(enter).cwiseAbs().maxCoeff());
      const double piv_tol = 1e-9 * col_scale;
      double bound = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < T_.rows(); ++i) {
        const double a = T_(i, enter);
        if (a > piv_tol) bound = std::min(bound, (beta_[i] + kFeasSlack) / a);
      }
      Index leave = -1;
      double best_a = 0.0;
      for (Index i = 0; i < T_.rows(); ++i) {
        const double a = T_(i, enter);
        if (a <= piv_tol || beta_[i] / a > bound) continue;
        const bool better = bland ? (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])
                                  : a > best_a;
        if (better) {
          leave = i;
          best_a = a;
        }
      }
      if (leave < 0) return Outcome::Unbounded;
      degenerate_run = beta_[leave] / best_a > kFeasSlack ? 0 : degenerate_run + 1;
      pivot(leave, enter);
      ++iterations;
      ++since_refactor;
    }
  }

  void pivot(Index r, Index c) {
    const double p = T_(r, c);
    T_.row(r) /= p;
    beta_[r] /= p;
    VectorXd f = T_.col(c);
    f[r] = 0.0;
    const Eigen::RowVectorXd pivot_row = T_.row(r);
    T_.noalias() -= f * pivot_row;
    beta_ -= f * beta_[r];
    basis_[static_cast<std::size_t>(r)] = c;
    for (Index i = 0; i < beta_.size(); ++i)
      if (beta_[i] < 0.0) beta_[i] = 0.0;
  }

  void refactor() {
    MatrixXd B(M_.rows(), M_.rows());
    for (std::size_t i = 0; i < basis_.size(); ++i) B.col(static_cast<Index>(i)) = M_.col(basis_[i]);
    Eigen::PartialPivLU<MatrixXd> lu(B);
    T_ = lu.solve(M_);
    beta_ = lu.solve(rhs_);
    for (Index i = 0; i < beta_.size(); ++i)
      if (beta_[i] < 0.0 && beta_[i] > -1e-12) beta_[i] = 0.0;
  }

  VectorXd duals(const VectorXd& cost) const {
    MatrixXd B(M_.rows(), M_.rows());
    VectorXd cb(M_.rows());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      B.col(static_cast<Index>(i)) = M_.col(basis_[i]);
      cb[static_cast<Index>(i)] = cost[basis_[i]];
    }
    return B.transpose().fullPivLu().solve(cb);
  }

  VectorXd primal() const {
    VectorXd x = VectorXd::Zero(M_.cols());
    for (std::size_t i = 0; i < basis_.size(); ++i) x[basis_[i]] = beta_[static_cast<Index>(i)];
    return x;
  }

  const MatrixXd& T() const { return T_; }
  const std::vector<Index>& basis() const { return basis_; }

 private:
  MatrixXd M_;
  VectorXd rhs_;
  std::vector<Index> basis_;
  LPOptions opt_;
  MatrixXd T_;
  VectorXd beta_;
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp, const LPOptions& opt) {
  lp.validate();
  const Index m0 = lp.A.rows(), n0 = lp.A.cols();

  // Split free variables into a difference of nonnegative parts.
  std::vector<Index> neg_of(static_cast<std::size_t>(n0), -1);
  Index ncols = n0;
  for (Index j = 0; j < n0; ++j)
    if (!lp.free.empty() && lp.free[static_cast<std::size_t>(j)]) neg_of[static_cast<std::size_t>(j)] = ncols++;
  MatrixXd A(m0, ncols);
  VectorXd c(ncols);
  A.leftCols(n0) = lp.A;
  c.head(n0) = lp.objective;
  for (Index j = 0; j < n0; ++j)
    if (const Index k = neg_of[static_cast<std::size_t>(j)]; k >= 0) {
      A.col(k) = -lp.A.col(j);
      c[k] = -lp.objective[j];
    }

  // Presolve: keep a maximal independent set of rows.
  std::vector<Index> kept;
  if (m0 > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(A.transpose());
    qr.setThreshold(1e-10);
    for (Index k = 0; k < qr.rank(); ++k) kept.push_back(qr.colsPermutation().indices()[k]);
    std::sort(kept.begin(), kept.end());
  }
  const auto m = static_cast<Index>(kept.size());
  MatrixXd M(m, ncols + m);
  VectorXd rhs(m);
  std::vector<double> sign(static_cast<std::size_t>(m), 1.0);
  for (Index i = 0; i < m; ++i) {
    const Index r = kept[static_cast<std::size_t>(i)];
    sign[static_cast<std::size_t>(i)] = lp.b[r] < 0 ? -1.0 : 1.0;
    M.row(i).head(ncols) = sign[static_cast<std::size_t>(i)] * A.row(r);
    rhs[i] = sign[static_cast<std::size_t>(i)] * lp.b[r];
  }
  M.rightCols(m) = MatrixXd::Identity(m, m);

  LPSolution sol;
  sol.dropped_rows = static_cast<int>(m0 - m);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = ncols + i;
  Tableau tab(M, rhs, basis, opt);

  // Phase 1: minimize the artificial sum.
  VectorXd c1 = VectorXd::Zero(ncols + m);
  c1.tail(m).setOnes();
  auto outcome = tab.run(c1, ncols, sol.iterations);
  if (outcome == Outcome::IterationLimit) {
    sol.status = LPStatus::IterationLimit;
    return sol;
  }
  const double scale = std::max(1.0, rhs.size() ? rhs.cwiseAbs().maxCoeff() : 0.0);
  if (c1.dot(tab.primal()) > 1e-8 * scale) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  // Pivot zero-level artificials out of the basis where possible.
  for (Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < ncols) continue;
    Index best = -1;
    double mag = 1e-9;
    for (Index j = 0; j < ncols; ++j)
      if (std::abs(tab.T()(i, j)) > mag) {
        mag = std::abs(tab.T()(i, j));
        best = j;
      }
    if (best >= 0) tab.pivot(i, best);
  }

  // Phase 2.
  VectorXd c2 = VectorXd::Zero(ncols + m);
  c2.head(ncols) = c;
  outcome = tab.run(c2, ncols, sol.iterations);
  if (outcome == Outcome::Unbounded) {
    sol.status = LPStatus::Unbounded;
    return sol;
  }
  if (outcome == Outcome::IterationLimit) {
    sol.status = LPStatus::IterationLimit;
    return sol;
  }
  tab.refactor();

  const VectorXd xs = tab.primal();
  sol.x = xs.head(n0);
  for (Index j = 0; j < n0; ++j)
    if (const Index k = neg_of[static_cast<std::size_t>(j)]; k >= 0) sol.x[j] -= xs[k];
  // Clip the tiny negatives left by round-off on sign-constrained variables.
  for (Index j = 0; j < n0; ++j)
    if (neg_of[static_cast<std::size_t>(j)] < 0 && sol.x[j] < 0.0) sol.x[j] = 0.0;

  const VectorXd yk = tab.duals(c2);
  sol.dual = VectorXd::Zero(m0);
  for (Index i = 0; i < m; ++i) sol.dual[kept[static_cast<std::size_t>(i)]] = sign[static_cast<std::size_t>(i)] * yk[i];

  sol.objective = lp.objective.dot(sol.x);
  sol.dual_objective = lp.b.dot(sol.dual);
  sol.primal_residual = m0 ? (lp.A * sol.x - lp.b).cwiseAbs().maxCoeff() : 0.0;
  const VectorXd reduced = lp.objective - lp.A.transpose() * sol.dual;
  for (Index j = 0; j < n0; ++j) {
    const bool is_free = neg_of[static_cast<std::size_t>(j)] >= 0;
    const double viol = is_free ? std::abs(reduced[j]) : std::max(0.0, -reduced[j]);
    sol.dual_infeasibility = std::max(sol.dual_infeasibility, viol);
    sol.complementarity = std::max(sol.complementarity, std::abs(sol.x[j] * reduced[j]));
  }
  sol.status = sol.primal_residual > 1e-7 * scale ? LPStatus::Infeasible : LPStatus::Optimal;
  return sol;
}

}  // namespace magiclab

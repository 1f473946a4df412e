#include "magiclab/basis_pursuit.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace magiclab {

namespace {

Vector soft_threshold(const Vector& v, double kappa) {
  Vector out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]);
    out[j] = a > kappa ? v[j] * ((a - kappa) / a) : cplx(0.0);
  }
  return out;
}

double l1(const Vector& v) { return v.cwiseAbs().sum(); }

// Dual barrier: minimize -tau Re(y^H t) - sum_j log(1 - |D_j^H y|^2) over y in
// real coordinates w = [Re y; Im y]. On the central path c_j = 2 a_j / (tau f_j)
// solves D c = t exactly and the duality gap is below N / tau.
struct BarrierPoint {
  Vector y;
  Vector c;
};

std::optional<BarrierPoint> dual_barrier(const Matrix& D, const Vector& t, double gap_target) {
  const Eigen::Index m = D.rows(), N = D.cols();
  // a_j = g_j . w + i h_j . w
  Eigen::MatrixXd G(2 * m, N), H(2 * m, N);
  G.topRows(m) = D.real();
  G.bottomRows(m) = D.imag();
  H.topRows(m) = -D.imag();
  H.bottomRows(m) = D.real();
  Eigen::VectorXd b(2 * m);
  b << t.real(), t.imag();

  Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * m);
  auto objective = [&](const Eigen::VectorXd& x, double tau) {
    const Eigen::VectorXd gr = G.transpose() * x, hr = H.transpose() * x;
    const Eigen::ArrayXd f = 1.0 - gr.array().square() - hr.array().square();
    if ((f <= 0.0).any()) return std::numeric_limits<double>::infinity();
    return -tau * b.dot(x) - f.log().sum();
  };

  double tau = 1.0;
  const double tau_final = 4.0 * static_cast<double>(N) / gap_target;
  for (int outer = 0; outer < 60; ++outer) {
    for (int it = 0; it < 100; ++it) {
      const Eigen::ArrayXd gr = (G.transpose() * w).array(), hr = (H.transpose() * w).array();
      const Eigen::ArrayXd f = 1.0 - gr.square() - hr.square();
      const Eigen::VectorXd grad = -tau * b + G * (2.0 * gr / f).matrix() + H * (2.0 * hr / f).matrix();
      const Eigen::ArrayXd f2 = f.square();
      Eigen::MatrixXd hess = G * ((2.0 / f + 4.0 * gr.square() / f2).matrix().asDiagonal()) * G.transpose() +
                             H * ((2.0 / f + 4.0 * hr.square() / f2).matrix().asDiagonal()) * H.transpose();
      const Eigen::MatrixXd cross = G * ((4.0 * gr * hr / f2).matrix().asDiagonal()) * H.transpose();
      hess += cross + cross.transpose();
      const Eigen::VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!std::isfinite(decrement)) return std::nullopt;
      if (decrement < 1e-12) break;
      const double f0 = objective(w, tau);
      double alpha = 1.0;
      while (alpha > 1e-12 && objective(w + alpha * step, tau) > f0 - 0.25 * alpha * decrement) alpha *= 0.5;
      if (alpha <= 1e-12) break;
      w += alpha * step;
    }
    if (tau >= tau_final) break;
    tau = std::min(tau * 8.0, tau_final);
  }
  const Eigen::ArrayXd gr = (G.transpose() * w).array(), hr = (H.transpose() * w).array();
  const Eigen::ArrayXd f = 1.0 - gr.square() - hr.square();
  BarrierPoint out;
  out.y = Vector(m);
  for (Eigen::Index i = 0; i < m; ++i) out.y[i] = cplx(w[i], w[m + i]);
  out.c = Vector(N);
  for (Eigen::Index j = 0; j < N; ++j) out.c[j] = cplx(gr[j], hr[j]) * (2.0 / (tau * f[j]));
  return out;
}

}  // namespace

double dual_lower_bound(const Matrix& dictionary, const Vector& target, const Vector& y) {
  const double scale = (dictionary.adjoint() * y).cwiseAbs().maxCoeff();
  if (scale <= 0.0) return 0.0;
  return std::max(0.0, y.dot(target).real() / scale);
}

BasisPursuitResult solve_basis_pursuit(const BasisPursuitProblem& problem, const BasisPursuitOptions& options) {
  const Matrix& D = problem.dictionary;
  const Vector& t = problem.target;
  if (D.rows() != t.size()) throw std::invalid_argument("basis pursuit: dictionary rows differ from target length");
  if (D.cols() == 0) throw std::invalid_argument("basis pursuit: empty dictionary");

  const Eigen::CompleteOrthogonalDecomposition<Matrix> gram(D * D.adjoint());
  auto project_rows = [&](const Vector& r) -> Vector { return D.adjoint() * gram.solve(r); };

  Vector z = project_rows(t);  // minimum-norm solution
  if ((D * z - t).norm() > problem.span_tolerance * std::max(1.0, t.norm()))
    throw std::invalid_argument("basis pursuit: target is not in the span of the dictionary");

  Vector c = z, u = Vector::Zero(D.cols());
  double rho = options.rho;
  BasisPursuitResult best;
  best.coefficients = z;
  best.l1_value = l1(z);
  best.lower_bound = dual_lower_bound(D, t, t);

  for (int k = 1; k <= options.max_iterations; ++k) {
    const Vector v = z - u;
    c = v - project_rows(D * v - t);
    const Vector z_old = z;
    z = soft_threshold(c + u, 1.0 / rho);
    u += c - z;

    const double r_norm = (c - z).norm();
    const double s_norm = rho * (z - z_old).norm();

    if (k % options.check_interval == 0) {
      // Feasible point from z by the minimum-norm correction, and a dual point from rho u.
      const Vector feasible = z + project_rows(t - D * z);
      const double upper = l1(feasible);
      if (upper < best.l1_value) {
        best.l1_value = upper;
        best.coefficients = feasible;
      }
      const Vector y = gram.solve(D * (rho * u));
      best.lower_bound = std::max(best.lower_bound, dual_lower_bound(D, t, y));
      best.iterations = k;
      best.primal_residual = r_norm;
      best.dual_residual = s_norm;
      best.final_rho = rho;
      if (r_norm < options.residual_tolerance && s_norm < options.residual_tolerance &&
          best.gap() < options.gap_tolerance)
        return best;
      if (best.gap() < 0.1 * options.gap_tolerance) return best;

      // Residual balancing.
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u /= 2.0;
      } else if (s_norm > 10.0 * r_norm) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }
  if (options.polish) {
    if (const auto p = dual_barrier(D, t, options.gap_tolerance)) {
      const Vector feasible = p->c + project_rows(t - D * p->c);
      if (l1(feasible) < best.l1_value) {
        best.l1_value = l1(feasible);
        best.coefficients = feasible;
      }
      best.lower_bound = std::max(best.lower_bound, dual_lower_bound(D, t, p->y));
      best.polished = true;
      if (best.gap() < options.gap_tolerance) return best;
    }
  }
  std::ostringstream msg;
  msg << "basis pursuit did not converge: primal residual " << best.primal_residual << ", dual residual "
      << best.dual_residual << ", gap " << best.gap();
  throw SolverError(msg.str());
}

}  // namespace magiclab

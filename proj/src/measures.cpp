#include "magiclab/measures.hpp"

#include "magiclab/kernels.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/wigner.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace magiclab {

namespace {

void require_match(int n, int d, const StabilizerDictionary& dict) {
  if (n != dict.n || d != dict.d) throw std::invalid_argument("state and dictionary differ in (n, d)");
}

DminResult from_fidelity(const kernels::IndexedMax& best) {
  const double f = std::min(1.0, best.value);
  return DminResult{std::max(0.0, -std::log2(f)), f, best.index};
}

// Real constraint rows describing a state: Pauli expectations for qubits,
// Wigner values for qutrits.
struct ConstraintBasis {
  Eigen::MatrixXd dict_rows;  // rows x dictionary size
  Eigen::VectorXd target;
  std::string name;
};

ConstraintBasis constraints(const DensityMatrix& rho, const StabilizerDictionary& dict) {
  ConstraintBasis out;
  const auto N = static_cast<Eigen::Index>(dict.size());
  if (dict.d == 2) {
    const auto paulis = all_paulis(dict.n, 2);
    out.name = "pauli";
    out.dict_rows.resize(static_cast<Eigen::Index>(paulis.size()), N);
    out.target.resize(static_cast<Eigen::Index>(paulis.size()));
    for (std::size_t k = 0; k < paulis.size(); ++k) {
      const Matrix pm = pauli_matrix(paulis[k]);
      const Matrix applied = pm * dict.states;
      const auto row = static_cast<Eigen::Index>(k);
      for (Eigen::Index j = 0; j < N; ++j) out.dict_rows(row, j) = dict.states.col(j).dot(applied.col(j)).real();
      out.target[row] = pauli_expectation(paulis[k], rho.rho).real();
    }
  } else {
    out.name = "phase-point";
    const auto w = wigner(rho);
    out.target = Eigen::Map<const Eigen::VectorXd>(w.values.data(), static_cast<Eigen::Index>(w.values.size()));
    out.dict_rows.resize(out.target.size(), N);
    for (Eigen::Index j = 0; j < N; ++j) {
      const auto wj = wigner(DensityMatrix::pure(DenseState{dict.n, dict.d, dict.states.col(j)}));
      for (Eigen::Index u = 0; u < out.target.size(); ++u) out.dict_rows(u, j) = wj.values[static_cast<std::size_t>(u)];
    }
  }
  return out;
}

}  // namespace

DminResult dmin(const DenseState& psi, const StabilizerDictionary& dict) {
  require_match(psi.n, psi.d, dict);
  const double nrm = psi.norm();
  if (std::abs(nrm - 1.0) > 1e-8) throw std::invalid_argument("dmin: state is not normalized");
  return from_fidelity(kernels::max_projection_parallel(dict.states, psi.amplitudes));
}

DminResult dmin(const DensityMatrix& rho, const StabilizerDictionary& dict, double eig_tol) {
  require_match(rho.n, rho.d, dict);
  validate_density(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.rho);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()[i] > eig_tol) keep.push_back(i);
  Matrix basis(rho.rho.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors().col(keep[k]);
  return from_fidelity(kernels::max_projection_parallel(dict.states, basis));
}

double stabilizer_fidelity(const DenseState& psi, const StabilizerDictionary& dict) { return dmin(psi, dict).fidelity; }

ExtentResult extent(const DenseState& psi, const StabilizerDictionary& dict, const BasisPursuitOptions& options) {
  require_match(psi.n, psi.d, dict);
  BasisPursuitProblem problem{dict.states, psi.amplitudes};
  ExtentResult out;
  out.solver = solve_basis_pursuit(problem, options);
  out.xi = out.solver.l1_value * out.solver.l1_value;
  out.xi_lower = out.solver.lower_bound * out.solver.lower_bound;
  out.dmax = std::log2(out.xi);
  return out;
}

RobustnessResult free_robustness(const DensityMatrix& rho, const StabilizerDictionary& dict, const LPOptions& options) {
  require_match(rho.n, rho.d, dict);
  validate_density(rho);
  const auto basis = constraints(rho, dict);
  const auto N = basis.dict_rows.cols();

  LinearProgram lp;
  lp.A.resize(basis.dict_rows.rows(), 2 * N);
  lp.A.leftCols(N) = basis.dict_rows;
  lp.A.rightCols(N) = -basis.dict_rows;
  lp.b = basis.target;
  lp.objective = Eigen::VectorXd::Ones(2 * N);

  RobustnessResult out;
  out.lp = solve_lp(lp, options);
  if (out.lp.status != LPStatus::Optimal)
    throw SolverError("free robustness LP ended with status " + to_string(out.lp.status));

  const double total = out.lp.objective;
  out.r = std::max(0.0, total - 1.0);
  out.lr = std::log2(std::max(1.0, total));
  out.positive_mass = 0.0;
  out.negative_mass = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    const double c = out.lp.x[j] - out.lp.x[N + j];
    if (std::abs(c) <= 1e-12) continue;
    out.pseudomixture.emplace_back(static_cast<std::size_t>(j), c);
    (c > 0 ? out.positive_mass : out.negative_mass) += std::abs(c);
  }
  out.witness_basis = basis.name;
  out.witness = out.lp.dual;
  out.witness_on_state = basis.target.dot(out.lp.dual);
  out.witness_max_on_stab = (basis.dict_rows.transpose() * out.lp.dual).cwiseAbs().maxCoeff();
  return out;
}

RobustnessBoundCheck robustness_bound_check(const DensityMatrix& rho, const StabilizerDictionary& dict, double tol) {
  const auto rob = free_robustness(rho, dict);
  const double dim = static_cast<double>(hilbert_dim(rho.n, rho.d));
  RobustnessBoundCheck out;
  out.r = rob.r;
  out.bound = std::sqrt(dim * (dim + 1.0));
  out.margin = out.bound - out.r;
  out.pass = out.r <= out.bound + tol;
  return out;
}

double stab_rank_bound(double xi, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (xi < 1.0 - 1e-9) throw std::invalid_argument("extent is at least 1");
  return 1.0 + xi / (epsilon * epsilon);
}

bool consistency_chain(double dmin, double dmax, double lr, double tol) {
  return dmin <= dmax + tol && dmax <= lr + tol;
}

MagicReport magic_report(const DenseState& psi, const StabilizerDictionary& dict, const Tolerances& tol) {
  MagicReport rep;
  rep.n = psi.n;
  rep.d = psi.d;
  rep.tolerances = tol;
  rep.dmin = dmin(psi, dict);
  BasisPursuitOptions bp;
  bp.residual_tolerance = tol.bp_residual;
  bp.gap_tolerance = tol.bp_gap;
  rep.extent = extent(psi, dict, bp);
  LPOptions lpo;
  lpo.tolerance = tol.lp;
  rep.robustness = free_robustness(DensityMatrix::pure(psi), dict, lpo);
  rep.chain_ok = consistency_chain(rep.dmin.dmin, rep.extent->dmax, rep.robustness.lr, tol.chain);
  return rep;
}

}  // namespace magiclab

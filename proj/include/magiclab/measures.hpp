#pragma once

#include "magiclab/basis_pursuit.hpp"
#include "magiclab/lp.hpp"
#include "magiclab/stab_enum.hpp"
#include "magiclab/state.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace magiclab {

struct Tolerances {
  double lp = 1e-9;
  double bp_residual = 1e-8;
  double bp_gap = 1e-6;
  double chain = 1e-5;
  double support_eigenvalue = 1e-10;
};

struct DminResult {
  double dmin = 0.0;      // bits
  double fidelity = 1.0;  // 2^{-dmin}
  std::size_t argmax = 0;
};

// Pure: -log2 max_phi |<psi|phi>|^2. Mixed: -log2 max_phi Tr(Pi_rho phi), Pi_rho the support projector.
DminResult dmin(const DenseState& psi, const StabilizerDictionary& dict);
DminResult dmin(const DensityMatrix& rho, const StabilizerDictionary& dict, double eig_tol = 1e-10);
double stabilizer_fidelity(const DenseState& psi, const StabilizerDictionary& dict);

struct ExtentResult {
  double xi = 1.0;         // squared L1 value of the decomposition found
  double xi_lower = 1.0;   // certified
  double dmax = 0.0;       // log2 xi
  BasisPursuitResult solver;
};

ExtentResult extent(const DenseState& psi, const StabilizerDictionary& dict, const BasisPursuitOptions& options = {});

// 1 + R = min sum |c_phi| over real decompositions rho = sum_phi c_phi phi.
struct RobustnessResult {
  double r = 0.0;
  double lr = 0.0;  // log2(1 + R)
  std::vector<std::pair<std::size_t, double>> pseudomixture;  // nonzero c_phi by dictionary index
  double positive_mass = 1.0;
  double negative_mass = 0.0;
  // Dual witness A. Qubits: coefficients of the Hermitian Paulis in all_paulis order.
  // Qutrits: A = 3^{-n} sum_u w_u A_u over phase points.
  std::string witness_basis;
  Eigen::VectorXd witness;
  double witness_on_state = 0.0;     // Tr(rho A)
  double witness_max_on_stab = 0.0;  // max_phi |Tr(phi A)|
  LPSolution lp;
};

RobustnessResult free_robustness(const DensityMatrix& rho, const StabilizerDictionary& dict,
                                 const LPOptions& options = {});

struct RobustnessBoundCheck {
  bool pass = false;
  double r = 0.0;
  double bound = 0.0;  // sqrt(2^n (2^n + 1))
  double margin = 0.0;
};

RobustnessBoundCheck robustness_bound_check(const DensityMatrix& rho, const StabilizerDictionary& dict, double tol = 1e-7);

// 1 + xi / eps^2
double stab_rank_bound(double xi, double epsilon);

struct MagicReport {
  int n = 0;
  int d = 2;
  DminResult dmin;
  std::optional<ExtentResult> extent;  // pure qubit states
  RobustnessResult robustness;
  Tolerances tolerances;
  bool chain_ok = false;  // dmin <= dmax <= lr within tolerances.chain
};

MagicReport magic_report(const DenseState& psi, const StabilizerDictionary& dict, const Tolerances& tol = {});

// Every state built in tests goes through this: dmin <= dmax <= lr.
bool consistency_chain(double dmin, double dmax, double lr, double tol = 1e-5);

}  // namespace magiclab

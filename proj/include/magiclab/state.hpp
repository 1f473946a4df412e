#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace magiclab {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Basis index = sum_j digit_j * d^j; site 1 (x_1) is the least significant digit.
std::size_t hilbert_dim(int n, int d);
std::vector<int> basis_digits(std::size_t index, int n, int d);

struct DenseState {
  int n = 0;
  int d = 2;
  Vector amplitudes;

  static DenseState basis(int n, int d, std::size_t index);
  static DenseState from_amplitudes(int n, int d, Vector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
  int n = 0;
  int d = 2;
  Matrix rho;

  static DensityMatrix pure(const DenseState& psi);
  static DensityMatrix maximally_mixed(int n, int d);

  std::size_t dim() const { return static_cast<std::size_t>(rho.rows()); }
};

// Throws std::invalid_argument unless rho is Hermitian with unit trace (within tol).
void validate_density(const DensityMatrix& rho, double tol = 1e-9);

// First amplitude with modulus above eps is made real and positive.
Vector canonical_phase(const Vector& v, double eps = 1e-12);

DenseState tensor(const DenseState& a, const DenseState& b);

// Single-qubit golden state: Bloch vector (1,1,1)/sqrt(3).
DenseState golden_state();

// |+>^{n} with CCZ applied across the three qubits (n = 3).
DenseState ccz_state();

// Clifford gates on qubit registers, acting in place.
void apply_h(Vector& v, int n, int qubit);
void apply_s(Vector& v, int n, int qubit);
void apply_cnot(Vector& v, int n, int control, int target);

}  // namespace magiclab

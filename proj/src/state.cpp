#include "magiclab/state.hpp"

#include <cmath>
#include <stdexcept>

namespace magiclab {

std::size_t hilbert_dim(int n, int d) {
  if (n < 0 || (d != 2 && d != 3)) throw std::invalid_argument("unsupported (n, d)");
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
  return dim;
}

std::vector<int> basis_digits(std::size_t index, int n, int d) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    digits[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return digits;
}

DenseState DenseState::basis(int n, int d, std::size_t index) {
  DenseState s{n, d, Vector::Zero(static_cast<Eigen::Index>(hilbert_dim(n, d)))};
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amplitudes[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

DenseState DenseState::from_amplitudes(int n, int d, Vector amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != hilbert_dim(n, d))
    throw std::invalid_argument("amplitude vector length does not match d^n");
  return DenseState{n, d, std::move(amplitudes)};
}

DensityMatrix DensityMatrix::pure(const DenseState& psi) {
  return DensityMatrix{psi.n, psi.d, psi.amplitudes * psi.amplitudes.adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(int n, int d) {
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, d));
  return DensityMatrix{n, d, Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

void validate_density(const DensityMatrix& rho, double tol) {
  if (static_cast<std::size_t>(rho.rho.rows()) != hilbert_dim(rho.n, rho.d) || rho.rho.rows() != rho.rho.cols())
    throw std::invalid_argument("density matrix has wrong shape");
  if ((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.rho.trace() - cplx(1.0, 0.0)) > tol) throw std::invalid_argument("density matrix trace is not 1");
}

Vector canonical_phase(const Vector& v, double eps) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > eps) {
      const cplx phase = std::conj(v[i]) / std::abs(v[i]);
      Vector out = v * phase;
      out[i] = std::abs(v[i]);
      return out;
    }
  }
  return v;
}

DenseState tensor(const DenseState& a, const DenseState& b) {
  if (a.d != b.d) throw std::invalid_argument("tensor: local dimensions differ");
  // a occupies the low sites, so its index is the fast-varying digit.
  Vector out(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (Eigen::Index j = 0; j < b.amplitudes.size(); ++j)
    for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i)
      out[j * a.amplitudes.size() + i] = a.amplitudes[i] * b.amplitudes[j];
  return DenseState{a.n + b.n, a.d, std::move(out)};
}

DenseState golden_state() {
  // Bloch angles: cos(theta) = 1/sqrt(3), phi = pi/4.
  const double theta = std::acos(1.0 / std::sqrt(3.0));
  const double phi = M_PI / 4.0;
  Vector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return DenseState{1, 2, v};
}

DenseState ccz_state() {
  Vector v = Vector::Constant(8, 1.0 / std::sqrt(8.0));
  v[7] = -v[7];
  return DenseState{3, 2, v};
}

void apply_h(Vector& v, int n, int qubit) {
  if (qubit < 0 || qubit >= n) throw std::out_of_range("qubit index");
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const cplx a = v[i], b = v[i | bit];
    v[i] = s * (a + b);
    v[i | bit] = s * (a - b);
  }
}

void apply_s(Vector& v, int n, int qubit) {
  if (qubit < 0 || qubit >= n) throw std::out_of_range("qubit index");
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (i & bit) v[i] *= cplx(0.0, 1.0);
}

void apply_cnot(Vector& v, int n, int control, int target) {
  if (control < 0 || control >= n || target < 0 || target >= n || control == target)
    throw std::out_of_range("cnot qubit indices");
  const Eigen::Index c = Eigen::Index{1} << control, t = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((i & c) && !(i & t)) std::swap(v[i], v[i | t]);
}

}  // namespace magiclab

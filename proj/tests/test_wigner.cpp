#include "magiclab/wigner.hpp"
#include "magiclab/stab_enum.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace magiclab;

namespace {

DensityMatrix random_qutrit_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(hilbert_dim(n, 3)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return DensityMatrix::pure(DenseState{n, 3, v / v.norm()});
}

std::size_t point_index(const std::vector<int>& a) {
  std::size_t u = 0, w = 1;
  for (std::size_t k = 0; k < a.size(); k += 2, w *= 9) u += static_cast<std::size_t>(a[k] + 3 * a[k + 1]) * w;
  return u;
}

}  // namespace

TEST_CASE("phase-point operators") {
  for (int n = 1; n <= 2; ++n) {
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, 3));
    Matrix a0 = Matrix::Zero(dim, dim);
    for (std::size_t u = 0; u < phase_space_size(n); ++u) a0 += pauli_matrix(heisenberg_weyl(u, n));
    a0 /= static_cast<double>(dim);
    CHECK((phase_point_operator(0, n) - a0).cwiseAbs().maxCoeff() < 1e-12);
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t u = 0; u < phase_space_size(n); ++u) {
      const Matrix a = phase_point_operator(u, n);
      CHECK(std::abs(a.trace() - 1.0) < 1e-12);
      CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(((a * a) - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
      const Matrix t = pauli_matrix(heisenberg_weyl(u, n));
      CHECK((a - t * phase_point_operator(0, n) * t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      sum += a;
    }
    CHECK((sum - static_cast<double>(dim) * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  }
  const Matrix z = pauli_matrix(heisenberg_weyl(1, 1));
  const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
  CHECK(std::abs(z(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(z(1, 1) - w) < 1e-12);
  CHECK(std::abs(z(2, 2) - w * w) < 1e-12);
  CHECK(phase_space_point(1 + 3 * 2 + 9 * 5, 2) == std::vector<int>{1, 2, 2, 1});
  CHECK_THROWS(phase_point_operator(0, kMaxWignerSites + 1));
}

TEST_CASE("Wigner function of simple states") {
  for (int n = 1; n <= 2; ++n) {
    const auto w = wigner(DensityMatrix::maximally_mixed(n, 3));
    for (double v : w.values) CHECK(v == doctest::Approx(std::pow(3.0, -2.0 * n)));
    CHECK(sum_negativity(w) == doctest::Approx(0.0));
    CHECK(mana(w) == doctest::Approx(0.0));
  }
  // |0>: W is 1/3 on the line a2 = 0.
  const auto w0 = wigner(DensityMatrix::pure(DenseState::basis(1, 3, 0)));
  for (std::size_t u = 0; u < 9; ++u) CHECK(w0.values[u] == doctest::Approx(u < 3 ? 1.0 / 3.0 : 0.0).scale(1.0));
}

TEST_CASE("stabilizer states have nonnegative Wigner functions") {
  for (int n = 1; n <= 2; ++n) {
    const auto& dict = stabilizer_dictionary(n, 3);
    CHECK(dict.size() == (n == 1 ? 12U : 360U));
    for (std::size_t j = 0; j < dict.size(); ++j) {
      const auto w = wigner(DensityMatrix::pure(DenseState{n, 3, dict.state(j)}));
      for (double v : w.values) CHECK(v >= -1e-12);
      CHECK(sum_negativity(w) < 1e-12);
    }
  }
}

TEST_CASE("normalization, reconstruction and covariance") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 5; ++t) {
      const auto rho = random_qutrit_state(n, rng);
      const auto w = wigner(rho);
      CHECK(w.total() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((reconstruct(w) - rho.rho).cwiseAbs().maxCoeff() < 1e-10);
      // Shifting the state by T_v shifts the Wigner function by v.
      const std::size_t v = rng() % phase_space_size(n);
      const Matrix tv = pauli_matrix(heisenberg_weyl(v, n));
      const auto shifted = wigner(DensityMatrix{n, 3, tv * rho.rho * tv.adjoint()});
      const auto pv = phase_space_point(v, n);
      for (std::size_t u = 0; u < phase_space_size(n); ++u) {
        auto pu = phase_space_point(u, n);
        for (std::size_t k = 0; k < pu.size(); ++k) pu[k] = (pu[k] - pv[k] + 3) % 3;
        CHECK(shifted.values[u] == doctest::Approx(w.values[point_index(pu)]).epsilon(1e-10));
      }
    }
}

TEST_CASE("serial and parallel Wigner kernels agree") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 3; ++n) {
    const auto rho = random_qutrit_state(n, rng);
    CHECK(wigner(rho).values == wigner_serial(rho).values);
  }
}

TEST_CASE("negativity and mana are bounded by robustness") {
  std::mt19937_64 rng(43);
  const auto& d1 = stabilizer_dictionary(1, 3);
  for (int t = 0; t < 50; ++t) {
    const auto c = mana_lr_check(random_qutrit_state(1, rng), d1);
    CHECK(c.negativity_below_robustness);
    CHECK(c.mana_below_lr_plus_one);
    CHECK(c.negativity <= c.robustness + 1e-7);
  }
  const auto& d2 = stabilizer_dictionary(2, 3);
  for (int t = 0; t < 10; ++t) {
    const auto c = mana_lr_check(random_qutrit_state(2, rng), d2);
    CHECK(c.negativity_below_robustness);
    CHECK(c.mana_below_lr_plus_one);
  }
}

TEST_CASE("Wigner CSV") {
  const auto csv = wigner_csv(wigner(DensityMatrix::maximally_mixed(1, 3)));
  CHECK(csv.rfind("u,a1_1,a2_1,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

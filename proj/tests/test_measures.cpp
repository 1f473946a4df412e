#include "magiclab/measures.hpp"
#include "magiclab/haar.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/stab_enum.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace magiclab;

namespace {

const double kGoldenDmin = -std::log2((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);

DenseState random_state(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(hilbert_dim(n, d)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return DenseState{n, d, v / v.norm()};
}

DenseState bloch_state(double theta, double phi) {
  Vector v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return DenseState{1, 2, v};
}

void check_robustness_certificate(const DensityMatrix& rho, const StabilizerDictionary& dict,
                                  const RobustnessResult& r) {
  REQUIRE(r.lp.status == LPStatus::Optimal);
  CHECK(r.lp.duality_gap() < 1e-8);
  CHECK(r.witness_max_on_stab <= 1.0 + 1e-8);
  CHECK(r.witness_on_state == doctest::Approx(1.0 + r.r).epsilon(1e-8));
  CHECK(r.positive_mass - r.negative_mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.positive_mass + r.negative_mass == doctest::Approx(1.0 + r.r).epsilon(1e-8));
  Matrix rebuilt = Matrix::Zero(rho.rho.rows(), rho.rho.cols());
  for (const auto& [j, c] : r.pseudomixture) rebuilt += c * dict.state(j) * dict.state(j).adjoint();
  CHECK((rebuilt - rho.rho).cwiseAbs().maxCoeff() < 1e-8);
  if (r.witness_basis == "pauli") {
    // Tr(rho A) evaluated from the Pauli expansion of the witness.
    const auto paulis = all_paulis(rho.n, 2);
    double on_state = 0.0;
    for (std::size_t k = 0; k < paulis.size(); ++k)
      on_state += r.witness[static_cast<Eigen::Index>(k)] * pauli_expectation(paulis[k], rho.rho).real();
    CHECK(on_state == doctest::Approx(r.witness_on_state).epsilon(1e-9));
  }
}

}  // namespace

TEST_CASE("dmin vanishes on stabilizer states") {
  for (auto [n, d] : {std::pair{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}}) {
    const auto& dict = stabilizer_dictionary(n, d);
    for (std::size_t j = 0; j < dict.size(); ++j) {
      const auto r = dmin(DenseState{n, d, dict.state(j)}, dict);
      CHECK(r.dmin < 1e-10);
      CHECK(dict.find(dict.state(r.argmax)).has_value());
    }
  }
}

TEST_CASE("dmin of the golden and CCZ states") {
  const auto g = dmin(golden_state(), stabilizer_dictionary(1, 2));
  CHECK(g.dmin == doctest::Approx(kGoldenDmin).epsilon(1e-12));
  CHECK(g.dmin == doctest::Approx(std::log2(3.0 - std::sqrt(3.0))).epsilon(1e-12));
  const auto c = dmin(ccz_state(), stabilizer_dictionary(3, 2));
  CHECK(c.fidelity == doctest::Approx(9.0 / 16.0).epsilon(1e-12));
  CHECK(c.dmin == doctest::Approx(std::log2(16.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("single-qubit dmin matches the Bloch formula and peaks at the golden state") {
  const auto& dict = stabilizer_dictionary(1, 2);
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j < 80; ++j) {
      const double th = M_PI * i / 40.0, ph = 2.0 * M_PI * j / 80.0;
      const auto psi = bloch_state(th, ph);
      const double v = dmin(psi, dict).dmin;
      CHECK(v == doctest::Approx(oracle::bloch_dmin(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                                    std::cos(th)))
                     .epsilon(1e-10));
      worst = std::max(worst, v);
    }
  CHECK(worst <= kGoldenDmin + 1e-6);
}

TEST_CASE("dmin is Clifford invariant and weakly additive") {
  std::mt19937_64 rng(31);
  const auto& d2 = stabilizer_dictionary(2, 2);
  for (int t = 0; t < 10; ++t) {
    auto psi = random_state(2, 2, rng);
    const double before = dmin(psi, d2).dmin;
    apply_h(psi.amplitudes, 2, 0);
    apply_s(psi.amplitudes, 2, 1);
    apply_cnot(psi.amplitudes, 2, 0, 1);
    CHECK(dmin(psi, d2).dmin == doctest::Approx(before).epsilon(1e-10));
  }
  const auto gg = tensor(golden_state(), golden_state());
  CHECK(dmin(gg, d2).dmin <= 2.0 * kGoldenDmin + 1e-10);
  const auto a = random_state(1, 2, rng), b = random_state(1, 2, rng);
  const auto& d1 = stabilizer_dictionary(1, 2);
  CHECK(dmin(tensor(a, b), d2).dmin <= dmin(a, d1).dmin + dmin(b, d1).dmin + 1e-10);
}

TEST_CASE("mixed-state dmin uses the support projector") {
  const auto& dict = stabilizer_dictionary(2, 2);
  CHECK(dmin(DensityMatrix::maximally_mixed(2, 2), dict).dmin < 1e-12);
  std::mt19937_64 rng(32);
  const auto psi = random_state(2, 2, rng);
  CHECK(dmin(DensityMatrix::pure(psi), dict).dmin == doctest::Approx(dmin(psi, dict).dmin).epsilon(1e-9));
  // Rank two mixture: the support projector contains |00> exactly.
  DensityMatrix rho{2, 2, Matrix::Zero(4, 4)};
  Vector a = Vector::Zero(4), b = Vector::Zero(4);
  a[0] = 1.0;
  b << 0, std::sqrt(0.5), cplx(0, std::sqrt(0.5)), 0;
  rho.rho = 0.3 * a * a.adjoint() + 0.7 * b * b.adjoint();
  CHECK(dmin(rho, dict).dmin < 1e-10);
  DensityMatrix bad{2, 2, 2.0 * rho.rho};
  CHECK_THROWS(dmin(bad, dict));
  CHECK_THROWS(dmin(golden_state(), dict));
}

TEST_CASE("robustness of free and magic states") {
  const auto& d1 = stabilizer_dictionary(1, 2);
  const auto& d2 = stabilizer_dictionary(2, 2);
  const auto mixed = DensityMatrix::maximally_mixed(2, 2);
  const auto rm = free_robustness(mixed, d2);
  CHECK(rm.r < 1e-9);
  check_robustness_certificate(mixed, d2, rm);
  const auto stab = DensityMatrix::pure(DenseState{2, 2, d2.state(11)});
  const auto rs = free_robustness(stab, d2);
  CHECK(rs.r < 1e-9);
  CHECK(rs.lr < 1e-9);

  const auto gold = DensityMatrix::pure(golden_state());
  const auto rg = free_robustness(gold, d1);
  CHECK(rg.r > 0.5);
  check_robustness_certificate(gold, d1, rg);
  // Single-qubit octahedron: 1 + R = (|rx| + |ry| + |rz|) for states outside it.
  CHECK(1.0 + rg.r == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));

  std::mt19937_64 rng(33);
  for (int t = 0; t < 5; ++t) {
    const auto rho = DensityMatrix::pure(random_state(2, 2, rng));
    check_robustness_certificate(rho, d2, free_robustness(rho, d2));
  }
  const auto ccz = DensityMatrix::pure(ccz_state());
  const auto rc = free_robustness(ccz, stabilizer_dictionary(3, 2));
  check_robustness_certificate(ccz, stabilizer_dictionary(3, 2), rc);
}

TEST_CASE("robustness bound holds on random, Haar and CCZ states") {
  std::mt19937_64 rng(34);
  const auto& d1 = stabilizer_dictionary(1, 2);
  for (int t = 0; t < 20; ++t) {
    const auto c = robustness_bound_check(DensityMatrix::pure(random_state(1, 2, rng)), d1);
    CHECK(c.pass);
    CHECK(c.bound == doctest::Approx(std::sqrt(6.0)));
  }
  const auto& d2 = stabilizer_dictionary(2, 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = robustness_bound_check(DensityMatrix::pure(haar_sample(2, 77, s)), d2);
    CHECK(c.pass);
    CHECK(c.margin > 0.0);
  }
  const auto c = robustness_bound_check(DensityMatrix::pure(ccz_state()), stabilizer_dictionary(3, 2));
  CHECK(c.pass);
  CHECK(c.bound == doctest::Approx(std::sqrt(72.0)));
}

TEST_CASE("extent of single-qubit and CCZ states") {
  const auto g = extent(golden_state(), stabilizer_dictionary(1, 2));
  CHECK(std::abs(g.xi - (3.0 - std::sqrt(3.0))) < 1e-6);
  CHECK(g.xi_lower <= g.xi + 1e-12);
  const auto c = extent(ccz_state(), stabilizer_dictionary(3, 2));
  CHECK(std::abs(c.xi - 16.0 / 9.0) < 1e-6);
  const auto s = extent(DenseState{2, 2, stabilizer_dictionary(2, 2).state(5)}, stabilizer_dictionary(2, 2));
  CHECK(s.dmax == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("stabilizer-rank bound") {
  CHECK(stab_rank_bound(1.0, 0.1) == doctest::Approx(101.0));
  CHECK(stab_rank_bound(16.0 / 9.0, 0.1) == doctest::Approx(1.0 + 1600.0 / 9.0));
  CHECK(stab_rank_bound(3.0 - std::sqrt(3.0), 0.5) == doctest::Approx(1.0 + (3.0 - std::sqrt(3.0)) / 0.25));
  CHECK_THROWS(stab_rank_bound(2.0, 0.0));
  CHECK_THROWS(stab_rank_bound(2.0, 1.0));
  CHECK_THROWS(stab_rank_bound(0.5, 0.1));
}

TEST_CASE("dmin <= dmax <= lr on every tested state") {
  std::mt19937_64 rng(35);
  std::vector<DenseState> states{golden_state(), ccz_state(), tensor(golden_state(), golden_state())};
  for (int t = 0; t < 6; ++t) states.push_back(random_state(1 + t % 2, 2, rng));
  for (const auto& psi : states) {
    const auto& dict = stabilizer_dictionary(psi.n, 2);
    const auto rep = magic_report(psi, dict);
    CHECK(rep.chain_ok);
    CHECK(consistency_chain(rep.dmin.dmin, rep.extent->dmax, rep.robustness.lr));
  }
  CHECK_FALSE(consistency_chain(1.0, 0.5, 2.0));
  CHECK_FALSE(consistency_chain(0.1, 0.5, 0.4));
}

TEST_CASE("qutrit robustness uses the phase-point basis") {
  const auto& dict = stabilizer_dictionary(1, 3);
  std::mt19937_64 rng(36);
  for (int t = 0; t < 5; ++t) {
    const auto rho = DensityMatrix::pure(random_state(1, 3, rng));
    const auto r = free_robustness(rho, dict);
    CHECK(r.witness_basis == "phase-point");
    check_robustness_certificate(rho, dict, r);
  }
  CHECK(free_robustness(DensityMatrix::maximally_mixed(1, 3), dict).r < 1e-9);
}

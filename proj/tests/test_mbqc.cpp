#include "magiclab/mbqc.hpp"
#include "magiclab/measures.hpp"
#include "magiclab/stab_enum.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace magiclab;

namespace {

DenseState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(hilbert_dim(n, 2)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return DenseState{n, 2, v / v.norm()};
}

}  // namespace

TEST_CASE("layout validation") {
  CHECK(parse_layout({"XX", "ZZ"}).k() == 2);
  CHECK_THROWS(parse_layout({"XI", "ZI"}));          // anticommute
  CHECK_THROWS(parse_layout({"XX", "XX"}));          // dependent
  CHECK_THROWS(parse_layout({"ZZ", "-ZZ"}));         // dependent up to sign
  CHECK_THROWS(parse_layout({"iZ"}));                // not Hermitian
  CHECK_THROWS(parse_layout({"XX", "ZZ", "YY"}));    // too many
  CHECK_THROWS(parse_layout({"XX", "ZZZ"}));         // mixed sizes
  CHECK_THROWS(parse_layout({}));
  CHECK(parse_layout({"-ZI"}).k() == 1);
}

TEST_CASE("outcome distributions of simple states") {
  const auto zero3 = DenseState::basis(3, 2, 0);
  const auto ux = outcome_distribution(zero3, parse_layout({"XII", "IXI", "IIX"}));
  for (double p : ux.probabilities) CHECK(p == doctest::Approx(0.125));
  const auto z1 = outcome_distribution(zero3, parse_layout({"ZII"}));
  CHECK(z1.probabilities[0] == doctest::Approx(1.0));
  CHECK(z1.probabilities[1] == doctest::Approx(0.0).scale(1.0));
  Vector bell = Vector::Zero(4);
  bell[0] = bell[3] = std::sqrt(0.5);
  const auto b = outcome_distribution(DenseState{2, 2, bell}, parse_layout({"XX", "ZZ"}));
  CHECK(b.probabilities[0] == doctest::Approx(1.0));
  CHECK(b.max_probability() == doctest::Approx(1.0));
  const auto bm = outcome_distribution(DenseState{2, 2, bell}, parse_layout({"-XX", "ZZ"}));
  CHECK(bm.probabilities[1] == doctest::Approx(1.0));
  CHECK_THROWS(outcome_distribution(zero3, parse_layout({"XX"})));
}

TEST_CASE("distribution matches the sequential and dense references") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 5;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const auto layout = random_layout(n, k, rng);
    layout.validate();
    const auto psi = random_state(n, rng);
    const auto dist = outcome_distribution(psi, layout);
    const auto seq = sequential_distribution(psi, layout);
    CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(dist.probabilities.size() == std::size_t{1} << k);
    for (std::uint64_t y = 0; y < dist.probabilities.size(); ++y) {
      const double dense = psi.amplitudes.dot(oracle::dense_projector(layout.observables, y) * psi.amplitudes).real();
      CHECK(std::abs(dist.probabilities[y] - dense) < 1e-12);
      CHECK(std::abs(dist.probabilities[y] - seq.probabilities[y]) < 1e-12);
    }
  }
}

TEST_CASE("maximum outcome probability is bounded by dmin") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 4;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const auto psi = random_state(n, rng);
    const double dm = dmin(psi, stabilizer_dictionary(n, 2)).dmin;
    const auto c = pbound_check(outcome_distribution(psi, random_layout(n, k, rng)), dm);
    CHECK(c.pass);
    CHECK(c.bound == doctest::Approx(std::exp2(n - k - dm)));
  }
  const auto ccz = ccz_state();
  const double dm = std::log2(16.0 / 9.0);
  for (const auto& obs : {std::vector<std::string>{"XII", "IXI", "IIX"}, {"ZII", "IZI", "IIZ"}, {"XII", "IXI"}}) {
    const auto layout = parse_layout(obs);
    const auto c = pbound_check(outcome_distribution(ccz, layout), dm);
    CHECK(c.pass);
    CHECK(c.bound == doctest::Approx(std::exp2(3 - layout.k()) * 9.0 / 16.0));
  }
  // X on every qubit of CCZ|+++> reaches the bound: max p = 9/16.
  const auto x3 = outcome_distribution(ccz, parse_layout({"XII", "IXI", "IIX"}));
  CHECK(x3.max_probability() == doctest::Approx(9.0 / 16.0));
}

TEST_CASE("planted verifier and randomized search") {
  const PlantedVerifier v(8, 5, 99);
  int hits = 0;
  for (std::uint64_t y = 0; y < 256; ++y) hits += v(y);
  CHECK(hits == 5);
  CHECK_FALSE(v(256));
  CHECK_THROWS(PlantedVerifier(25, 1, 0));
  CHECK_THROWS(PlantedVerifier(3, 9, 0));

  std::mt19937_64 rng(53);
  CHECK_THROWS(randomized_search(v, 64, 10, rng));
  CHECK_THROWS(randomized_search(v, 8, 0, rng));
  const PlantedVerifier none(4, 0, 1);
  const auto miss = randomized_search(none, 4, 17, rng);
  CHECK_FALSE(miss.success);
  CHECK(miss.repetitions == 17);
  const PlantedVerifier all(4, 16, 1);
  CHECK(randomized_search(all, 4, 1, rng).repetitions == 1);
}

TEST_CASE("search success rates follow the geometric law") {
  const int k = 10;
  // Half the strings accepted: median repetitions at most 2.
  const PlantedVerifier half(k, 512, 7);
  auto trials = search_trials(half, k, 1000, 4001, 11);
  std::vector<std::uint64_t> reps;
  for (const auto& r : trials) {
    CHECK(r.success);
    reps.push_back(r.repetitions);
  }
  std::nth_element(reps.begin(), reps.begin() + 2000, reps.end());
  CHECK(reps[2000] <= 2);

  // Success within a budget of t has probability 1 - (1 - q)^t.
  const PlantedVerifier sparse(k, 16, 8);
  const double q = 16.0 / 1024.0;
  const std::uint64_t budget = 40;
  const std::size_t count = 5000;
  trials = search_trials(sparse, k, budget, count, 12);
  const double expect = 1.0 - std::pow(1.0 - q, static_cast<double>(budget));
  const double rate =
      static_cast<double>(std::count_if(trials.begin(), trials.end(), [](const SearchResult& r) { return r.success; })) /
      static_cast<double>(count);
  CHECK(std::abs(rate - expect) <= 3.0 * std::sqrt(expect * (1.0 - expect) / static_cast<double>(count)));
  // Trials are reproducible.
  const auto again = search_trials(sparse, k, budget, count, 12);
  for (std::size_t i = 0; i < count; ++i) CHECK(again[i].repetitions == trials[i].repetitions);
}

TEST_CASE("repetition bound") {
  CHECK(repetition_bound(3, std::log2(16.0 / 9.0)) == doctest::Approx(3.0 * std::log2(3.0) * 9.0 / 4.0));
  CHECK(repetition_bound(3, std::log2(16.0 / 9.0)) == doctest::Approx(10.70).epsilon(1e-3));
  CHECK(repetition_bound(4, 0.0) == doctest::Approx(24.0 * std::log2(3.0)));
}

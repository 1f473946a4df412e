#pragma once

#include "magiclab/pauli.hpp"
#include "magiclab/state.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace magiclab {

// k mutually commuting, independent qubit Pauli observables.
struct MeasurementLayout {
  int n = 0;
  std::vector<PauliOperator> observables;

  void validate() const;
  int k() const { return static_cast<int>(observables.size()); }
};

MeasurementLayout parse_layout(const std::vector<std::string>& observables);

// Random layout: k independent commuting Hermitian Paulis (no identity), drawn by rejection.
MeasurementLayout random_layout(int n, int k, std::mt19937_64& rng);

// Bit i of the outcome index set means y_i = -1.
struct OutcomeDistribution {
  MeasurementLayout layout;
  std::vector<double> probabilities;

  double total() const;
  double max_probability() const;
};

// p(y) = <psi| prod_i (1 + y_i P_i)/2 |psi>
OutcomeDistribution outcome_distribution(const DenseState& psi, const MeasurementLayout& layout);

// Reference: measure P_1, then P_2, ... on the collapsed state.
OutcomeDistribution sequential_distribution(const DenseState& psi, const MeasurementLayout& layout);

struct PBoundCheck {
  double max_p = 0.0;
  double bound = 0.0;  // 2^{n - k - dmin}
  bool pass = false;
};

PBoundCheck pbound_check(const OutcomeDistribution& dist, double dmin, double tol = 1e-9);

using Verifier = std::function<bool(std::uint64_t)>;

struct SearchResult {
  bool success = false;
  std::uint64_t repetitions = 0;
};

// Draw uniform k-bit strings until the verifier accepts or the budget runs out.
SearchResult randomized_search(const Verifier& verifier, int k, std::uint64_t budget, std::mt19937_64& rng);

// Accepts a fixed random subset of size accepted among the 2^k strings.
class PlantedVerifier {
 public:
  PlantedVerifier(int k, std::uint64_t accepted, std::uint64_t seed);
  bool operator()(std::uint64_t y) const;
  std::uint64_t accepted() const { return count_; }
  int k() const { return k_; }

 private:
  int k_;
  std::uint64_t count_;
  std::vector<bool> member_;
};

// 3 log2(3) 2^{n - dmin - 1}
double repetition_bound(int n, double dmin);

// Independent trials with per-trial streams; returns repetitions of each.
std::vector<SearchResult> search_trials(const Verifier& verifier, int k, std::uint64_t budget, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace magiclab

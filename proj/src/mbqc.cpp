#include "magiclab/mbqc.hpp"

#include "magiclab/gf2.hpp"
#include "magiclab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace magiclab {

namespace {

BitVector symplectic_row(const PauliOperator& p) {
  BitVector row(static_cast<std::size_t>(2 * p.n));
  for (int j = 0; j < p.n; ++j) {
    row[static_cast<std::size_t>(j)] = p.x[static_cast<std::size_t>(j)];
    row[static_cast<std::size_t>(p.n + j)] = p.z[static_cast<std::size_t>(j)];
  }
  return row;
}

std::size_t symplectic_rank(const std::vector<PauliOperator>& ops, int n) {
  std::vector<BitVector> rows;
  for (const auto& p : ops) rows.push_back(symplectic_row(p));
  return gf2_rank(BitMatrix::from_rows(rows, static_cast<std::size_t>(2 * n)));
}

bool hermitian(const PauliOperator& p) {
  int xz = 0;
  for (int j = 0; j < p.n; ++j) xz += p.x[static_cast<std::size_t>(j)] * p.z[static_cast<std::size_t>(j)];
  return (p.phase - xz) % 2 == 0;
}

// (v + s P v) / 2 with s = +-1.
Vector project(const PauliOperator& p, int sign, const Vector& v) {
  return 0.5 * (v + static_cast<double>(sign) * apply_pauli(p, v));
}

int outcome_sign(std::size_t y, int i) { return ((y >> i) & 1U) ? -1 : 1; }

}  // namespace

void MeasurementLayout::validate() const {
  if (n < 1) throw std::invalid_argument("layout needs n >= 1");
  if (observables.empty()) throw std::invalid_argument("layout has no observables");
  if (k() > n) throw std::invalid_argument("layout has more observables than qubits");
  for (const auto& p : observables) {
    if (p.d != 2 || p.n != n) throw std::invalid_argument("layout observables must be n-qubit Paulis");
    if (!hermitian(p)) throw std::invalid_argument("observable " + to_string(p) + " is not Hermitian");
  }
  for (std::size_t i = 0; i < observables.size(); ++i)
    for (std::size_t j = i + 1; j < observables.size(); ++j)
      if (!pauli_commutes(observables[i], observables[j]))
        throw std::invalid_argument("observables " + to_string(observables[i]) + " and " +
                                    to_string(observables[j]) + " do not commute");
  if (symplectic_rank(observables, n) != observables.size())
    throw std::invalid_argument("layout observables are not independent");
}

MeasurementLayout parse_layout(const std::vector<std::string>& observables) {
  MeasurementLayout out;
  for (const auto& text : observables) out.observables.push_back(parse_pauli(text, 2));
  if (!out.observables.empty()) out.n = out.observables.front().n;
  out.validate();
  return out;
}

MeasurementLayout random_layout(int n, int k, std::mt19937_64& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("random_layout needs 1 <= k <= n");
  MeasurementLayout out{n, {}};
  std::uniform_int_distribution<int> bit(0, 1);
  while (out.k() < k) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(bit(rng));
      z[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(bit(rng));
    }
    auto p = PauliOperator::from_symplectic(n, 2, x, z);
    if (p.is_identity_up_to_phase()) continue;
    if (bit(rng)) p.phase = (p.phase + 2) % 4;
    bool ok = std::all_of(out.observables.begin(), out.observables.end(),
                          [&](const PauliOperator& q) { return pauli_commutes(p, q); });
    if (!ok) continue;
    out.observables.push_back(p);
    if (symplectic_rank(out.observables, n) != out.observables.size()) out.observables.pop_back();
  }
  out.validate();
  return out;
}

double OutcomeDistribution::total() const { return std::accumulate(probabilities.begin(), probabilities.end(), 0.0); }

double OutcomeDistribution::max_probability() const {
  return probabilities.empty() ? 0.0 : *std::max_element(probabilities.begin(), probabilities.end());
}

OutcomeDistribution outcome_distribution(const DenseState& psi, const MeasurementLayout& layout) {
  layout.validate();
  if (psi.d != 2 || psi.n != layout.n) throw std::invalid_argument("state and layout differ in size");
  const int k = layout.k();
  const std::size_t outcomes = std::size_t{1} << k;
  OutcomeDistribution out{layout, std::vector<double>(outcomes, 0.0)};
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t yi = 0; yi < static_cast<std::ptrdiff_t>(outcomes); ++yi) {
    const auto y = static_cast<std::size_t>(yi);
    Vector v = psi.amplitudes;
    for (int i = 0; i < k; ++i) v = project(layout.observables[static_cast<std::size_t>(i)], outcome_sign(y, i), v);
    out.probabilities[y] = psi.amplitudes.dot(v).real();
  }
  return out;
}

OutcomeDistribution sequential_distribution(const DenseState& psi, const MeasurementLayout& layout) {
  layout.validate();
  if (psi.d != 2 || psi.n != layout.n) throw std::invalid_argument("state and layout differ in size");
  const int k = layout.k();
  OutcomeDistribution out{layout, std::vector<double>(std::size_t{1} << k, 0.0)};
  // Depth-first over outcomes; each branch keeps the normalized post-measurement state.
  struct Frame {
    Vector state;
    double prob;
    int depth;
    std::size_t y;
  };
  std::vector<Frame> stack{{psi.amplitudes / psi.norm(), 1.0, 0, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == k) {
      out.probabilities[f.y] = f.prob;
      continue;
    }
    for (int bit = 0; bit < 2; ++bit) {
      Vector post = project(layout.observables[static_cast<std::size_t>(f.depth)], bit ? -1 : 1, f.state);
      const double q = post.squaredNorm();
      const std::size_t y = f.y | (static_cast<std::size_t>(bit) << f.depth);
      if (q <= 1e-300) {
        stack.push_back({Vector::Zero(post.size()), 0.0, k, y});
        continue;
      }
      stack.push_back({post / std::sqrt(q), f.prob * q, f.depth + 1, y});
    }
  }
  return out;
}

PBoundCheck pbound_check(const OutcomeDistribution& dist, double dmin, double tol) {
  PBoundCheck out;
  out.max_p = dist.max_probability();
  out.bound = std::exp2(static_cast<double>(dist.layout.n - dist.layout.k()) - dmin);
  out.pass = out.max_p <= out.bound + tol;
  return out;
}

SearchResult randomized_search(const Verifier& verifier, int k, std::uint64_t budget, std::mt19937_64& rng) {
  if (k < 1 || k > 63) throw std::invalid_argument("randomized_search needs 1 <= k <= 63");
  if (budget < 1) throw std::invalid_argument("randomized_search needs a positive budget");
  std::uniform_int_distribution<std::uint64_t> draw(0, (std::uint64_t{1} << k) - 1);
  SearchResult out;
  while (out.repetitions < budget) {
    ++out.repetitions;
    if (verifier(draw(rng))) {
      out.success = true;
      break;
    }
  }
  return out;
}

PlantedVerifier::PlantedVerifier(int k, std::uint64_t accepted, std::uint64_t seed) : k_(k), count_(accepted) {
  if (k < 1 || k > 24) throw std::invalid_argument("planted verifier supports 1 <= k <= 24");
  const std::uint64_t size = std::uint64_t{1} << k;
  if (accepted > size) throw std::invalid_argument("planted set larger than the search space");
  std::vector<std::uint64_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  member_.assign(size, false);
  for (std::uint64_t i = 0; i < accepted; ++i) member_[order[i]] = true;
}

bool PlantedVerifier::operator()(std::uint64_t y) const { return y < member_.size() && member_[y]; }

double repetition_bound(int n, double dmin) { return 3.0 * std::log2(3.0) * std::exp2(n - dmin - 1.0); }

std::vector<SearchResult> search_trials(const Verifier& verifier, int k, std::uint64_t budget, std::size_t trials,
                                        std::uint64_t seed) {
  std::vector<SearchResult> out(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
    std::mt19937_64 rng(kernels::stream_seed(seed, static_cast<std::uint64_t>(t)));
    out[static_cast<std::size_t>(t)] = randomized_search(verifier, k, budget, rng);
  }
  return out;
}

}  // namespace magiclab

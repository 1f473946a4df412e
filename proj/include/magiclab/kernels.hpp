#pragma once

// Hot loops, each with a serial reference and an OpenMP version that must
// return identical results.

#include "magiclab/state.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace magiclab::kernels {

struct IndexedMax {
  double value = 0.0;
  std::size_t index = 0;
};

// Values within this distance of the maximum count as ties; lowest index wins.
inline constexpr double kTieTolerance = 1e-12;

// max_j ||basis^H dict.col(j)||^2. With a single column psi this is max_j |<psi|phi_j>|^2.
IndexedMax max_projection_serial(const Matrix& dict, const Matrix& basis);
IndexedMax max_projection_parallel(const Matrix& dict, const Matrix& basis);

// Exhaustive distance from a truth table (n <= 7, two 64-bit words) to RM(2, n).
// code packs the minimizer's coefficients: bit 0 constant, bits 1..n linear x_i,
// then x_i x_j for i < j in lexicographic order.
struct ChiSearchResult {
  std::uint64_t weight = 0;
  std::uint64_t code = 0;
};

inline constexpr int kMaxChiKernelVars = 7;

ChiSearchResult chi_search_serial(int n, const std::array<std::uint64_t, 2>& table);
ChiSearchResult chi_search_parallel(int n, const std::array<std::uint64_t, 2>& table);

// Truth table of the quadratic with the given coefficient code.
std::array<std::uint64_t, 2> quadratic_table(int n, std::uint64_t code);

// Operators with exactly one nonzero per column: column c maps to row[c] with value[c].
struct MonomialOperator {
  std::vector<std::uint32_t> row;
  std::vector<cplx> value;
};

// Re Tr(op_k rho) for every operator.
std::vector<double> monomial_traces_serial(const std::vector<MonomialOperator>& ops, const Matrix& rho);
std::vector<double> monomial_traces_parallel(const std::vector<MonomialOperator>& ops, const Matrix& rho);

// Per-sample RNG stream seed derived from the master seed.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

// Haar-random state on dim amplitudes drawn from stream_seed(seed, index).
Vector haar_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index);

// |<phi|psi_s>|^2 for samples s = 0..count-1.
std::vector<double> haar_overlaps_serial(const Vector& phi, std::size_t count, std::uint64_t seed);
std::vector<double> haar_overlaps_parallel(const Vector& phi, std::size_t count, std::uint64_t seed);

// max_j |<psi_s|phi_j>|^2 over the dictionary for samples s = 0..count-1.
std::vector<double> haar_max_overlaps_serial(const Matrix& dict, std::size_t count, std::uint64_t seed);
std::vector<double> haar_max_overlaps_parallel(const Matrix& dict, std::size_t count, std::uint64_t seed);

}  // namespace magiclab::kernels

// Serial reference against the OpenMP kernel for each hot loop.
#include "magiclab/kernels.hpp"
#include "magiclab/stab_enum.hpp"
#include "magiclab/wigner.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace magiclab;

namespace {

const StabilizerDictionary& dict4() {
  static const auto d = enumerate_stabilizer_states(4, 2);
  return d;
}

Matrix random_rho(Eigen::Index dim) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

template <auto Kernel>
void BM_max_projection(benchmark::State& st) {
  const auto& d = dict4();
  const Vector psi = kernels::haar_vector(16, 1, 0);
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(d.states, psi));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(d.size()));
}

template <auto Kernel>
void BM_chi_search(benchmark::State& st) {
  const std::array<std::uint64_t, 2> table{0x9e3779b97f4a7c15ULL, 0xc2b2ae3d27d4eb4fULL};
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(n, table));
}

template <auto Kernel>
void BM_wigner_traces(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto& ops = phase_point_table(n);
  const Matrix rho = random_rho(static_cast<Eigen::Index>(hilbert_dim(n, 3)));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(ops, rho));
}

template <auto Kernel>
void BM_haar_max_overlaps(benchmark::State& st) {
  const auto& d = dict4();
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(d.states, 256, 7));
  st.SetItemsProcessed(st.iterations() * 256);
}

}  // namespace

BENCHMARK(BM_max_projection<kernels::max_projection_serial>)->Name("max_projection/serial");
BENCHMARK(BM_max_projection<kernels::max_projection_parallel>)->Name("max_projection/parallel");
BENCHMARK(BM_chi_search<kernels::chi_search_serial>)->Name("chi_search/serial")->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chi_search<kernels::chi_search_parallel>)->Name("chi_search/parallel")->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wigner_traces<kernels::monomial_traces_serial>)->Name("wigner_traces/serial")->Arg(2)->Arg(3);
BENCHMARK(BM_wigner_traces<kernels::monomial_traces_parallel>)->Name("wigner_traces/parallel")->Arg(2)->Arg(3);
BENCHMARK(BM_haar_max_overlaps<kernels::haar_max_overlaps_serial>)->Name("haar_max_overlaps/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_haar_max_overlaps<kernels::haar_max_overlaps_parallel>)->Name("haar_max_overlaps/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

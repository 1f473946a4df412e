#include "magiclab/kernels.hpp"

#include <omp.h>

#include <bit>
#include <random>
#include <stdexcept>

namespace magiclab::kernels {

namespace {

using Table = std::array<std::uint64_t, 2>;

IndexedMax select_max(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("empty dictionary");
  double top = values[0];
  for (double v : values) top = std::max(top, v);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] >= top - kTieTolerance) return {top, j};
  return {top, 0};
}

void check_projection_shapes(const Matrix& dict, const Matrix& basis) {
  if (dict.rows() != basis.rows()) throw std::invalid_argument("dictionary and state dimensions differ");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Non-constant basis functions: x_1..x_n then x_i x_j (i < j).
std::vector<Table> quadratic_basis(int n) {
  if (n < 1 || n > kMaxChiKernelVars) throw std::invalid_argument("chi kernel supports 1 <= n <= 7");
  const std::uint64_t size = std::uint64_t{1} << n;
  auto table_of = [&](auto pred) {
    Table t{0, 0};
    for (std::uint64_t x = 0; x < size; ++x)
      if (pred(x)) t[x / 64] |= std::uint64_t{1} << (x % 64);
    return t;
  };
  std::vector<Table> basis;
  for (int i = 0; i < n; ++i) basis.push_back(table_of([i](std::uint64_t x) { return (x >> i) & 1; }));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      basis.push_back(table_of([i, j](std::uint64_t x) { return ((x >> i) & (x >> j)) & 1; }));
  return basis;
}

bool better(const ChiSearchResult& a, const ChiSearchResult& b) {
  return a.weight < b.weight || (a.weight == b.weight && a.code < b.code);
}

// Scans nonconstant codes gray(g) for g in [begin, end).
ChiSearchResult scan_range(int n, const Table& f, const std::vector<Table>& basis, std::uint64_t begin,
                           std::uint64_t end) {
  const std::uint64_t size = std::uint64_t{1} << n;
  Table cur = f;
  const std::uint64_t g0 = begin ^ (begin >> 1);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((g0 >> k) & 1) {
      cur[0] ^= basis[k][0];
      cur[1] ^= basis[k][1];
    }
  ChiSearchResult best{~std::uint64_t{0}, ~std::uint64_t{0}};
  for (std::uint64_t g = begin;;) {
    const std::uint64_t w = static_cast<std::uint64_t>(std::popcount(cur[0]) + std::popcount(cur[1]));
    const std::uint64_t code = (g ^ (g >> 1)) << 1;
    const ChiSearchResult plain{w, code}, flipped{size - w, code | 1};
    if (better(plain, best)) best = plain;
    if (better(flipped, best)) best = flipped;
    if (++g == end) break;
    const auto& b = basis[static_cast<std::size_t>(std::countr_zero(g))];
    cur[0] ^= b[0];
    cur[1] ^= b[1];
  }
  return best;
}

Table masked(int n, Table t) {
  if (n < 6) t[0] &= (std::uint64_t{1} << (1u << n)) - 1;
  if (n < 7) t[1] = 0;
  return t;
}

}  // namespace

IndexedMax max_projection_serial(const Matrix& dict, const Matrix& basis) {
  check_projection_shapes(dict, basis);
  std::vector<double> values(static_cast<std::size_t>(dict.cols()));
  for (Eigen::Index j = 0; j < dict.cols(); ++j)
    values[static_cast<std::size_t>(j)] = (basis.adjoint() * dict.col(j)).squaredNorm();
  return select_max(values);
}

IndexedMax max_projection_parallel(const Matrix& dict, const Matrix& basis) {
  check_projection_shapes(dict, basis);
  std::vector<double> values(static_cast<std::size_t>(dict.cols()));
  const Eigen::Index cols = dict.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j)
    values[static_cast<std::size_t>(j)] = (basis.adjoint() * dict.col(j)).squaredNorm();
  return select_max(values);
}

std::array<std::uint64_t, 2> quadratic_table(int n, std::uint64_t code) {
  const auto basis = quadratic_basis(n);
  Table t{0, 0};
  if (code & 1) t = masked(n, {~std::uint64_t{0}, ~std::uint64_t{0}});
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((code >> (k + 1)) & 1) {
      t[0] ^= basis[k][0];
      t[1] ^= basis[k][1];
    }
  return t;
}

ChiSearchResult chi_search_serial(int n, const std::array<std::uint64_t, 2>& table) {
  const auto basis = quadratic_basis(n);
  return scan_range(n, masked(n, table), basis, 0, std::uint64_t{1} << basis.size());
}

ChiSearchResult chi_search_parallel(int n, const std::array<std::uint64_t, 2>& table) {
  const auto basis = quadratic_basis(n);
  const Table f = masked(n, table);
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
  const std::uint64_t per = total / chunks;
  ChiSearchResult best{~std::uint64_t{0}, ~std::uint64_t{0}};
#pragma omp parallel
  {
    ChiSearchResult local{~std::uint64_t{0}, ~std::uint64_t{0}};
#pragma omp for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const auto begin = static_cast<std::uint64_t>(c) * per;
      const auto r = scan_range(n, f, basis, begin, begin + per);
      if (better(r, local)) local = r;
    }
#pragma omp critical
    if (better(local, best)) best = local;
  }
  return best;
}

std::vector<double> monomial_traces_serial(const std::vector<MonomialOperator>& ops, const Matrix& rho) {
  std::vector<double> out(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < ops[k].row.size(); ++c)
      acc += ops[k].value[c] * rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(ops[k].row[c]));
    out[k] = acc.real();
  }
  return out;
}

std::vector<double> monomial_traces_parallel(const std::vector<MonomialOperator>& ops, const Matrix& rho) {
  std::vector<double> out(ops.size());
  const auto count = static_cast<std::int64_t>(ops.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto& op = ops[static_cast<std::size_t>(k)];
    cplx acc = 0.0;
    for (std::size_t c = 0; c < op.row.size(); ++c)
      acc += op.value[c] * rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(op.row[c]));
    out[static_cast<std::size_t>(k)] = acc.real();
  }
  return out;
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL));
}

Vector haar_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(stream_seed(seed, index));
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = cplx(re, im);
  }
  return v / v.norm();
}

std::vector<double> haar_overlaps_serial(const Vector& phi, std::size_t count, std::uint64_t seed) {
  std::vector<double> out(count);
  for (std::size_t s = 0; s < count; ++s)
    out[s] = std::norm(phi.dot(haar_vector(static_cast<std::size_t>(phi.size()), seed, s)));
  return out;
}

std::vector<double> haar_overlaps_parallel(const Vector& phi, std::size_t count, std::uint64_t seed) {
  std::vector<double> out(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s)
    out[static_cast<std::size_t>(s)] =
        std::norm(phi.dot(haar_vector(static_cast<std::size_t>(phi.size()), seed, static_cast<std::uint64_t>(s))));
  return out;
}

std::vector<double> haar_max_overlaps_serial(const Matrix& dict, std::size_t count, std::uint64_t seed) {
  std::vector<double> out(count);
  for (std::size_t s = 0; s < count; ++s) {
    const Vector psi = haar_vector(static_cast<std::size_t>(dict.rows()), seed, s);
    out[s] = (dict.adjoint() * psi).cwiseAbs2().maxCoeff();
  }
  return out;
}

std::vector<double> haar_max_overlaps_parallel(const Matrix& dict, std::size_t count, std::uint64_t seed) {
  std::vector<double> out(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s) {
    const Vector psi = haar_vector(static_cast<std::size_t>(dict.rows()), seed, static_cast<std::uint64_t>(s));
    out[static_cast<std::size_t>(s)] = (dict.adjoint() * psi).cwiseAbs2().maxCoeff();
  }
  return out;
}

}  // namespace magiclab::kernels

#include "magiclab/wigner.hpp"

#include "magiclab/measures.hpp"
#include "magiclab/stab_enum.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace magiclab {

namespace {

void require_sites(int n) {
  if (n < 1 || n > kMaxWignerSites) throw std::invalid_argument("Wigner functions support 1 <= n <= 3 qutrits");
}

}  // namespace

std::size_t phase_space_size(int n) {
  require_sites(n);
  return hilbert_dim(2 * n, 3);
}

std::vector<int> phase_space_point(std::size_t u, int n) {
  if (u >= phase_space_size(n)) throw std::out_of_range("phase space point out of range");
  return basis_digits(u, 2 * n, 3);
}

PauliOperator heisenberg_weyl(std::size_t u, int n) {
  const auto a = phase_space_point(u, n);
  auto p = PauliOperator::identity(n, 3);
  int phase = 0;
  for (int k = 0; k < n; ++k) {
    const int a1 = a[static_cast<std::size_t>(2 * k)], a2 = a[static_cast<std::size_t>(2 * k + 1)];
    // omega^{a1 a2} Z^{a1} X^{a2} = omega^{2 a1 a2} X^{a2} Z^{a1}; omega is two phase units.
    p.x[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(a2);
    p.z[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(a1);
    phase += 4 * a1 * a2;
  }
  p.phase = phase % 6;
  return p;
}

namespace {

Matrix origin_operator(int n) {
  const std::size_t points = phase_space_size(n);
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, 3));
  Matrix a0 = Matrix::Zero(dim, dim);
  for (std::size_t v = 0; v < points; ++v) a0 += pauli_matrix(heisenberg_weyl(v, n));
  return a0 / static_cast<double>(dim);
}

Matrix translate(const Matrix& a0, std::size_t u, int n) {
  const Matrix t = pauli_matrix(heisenberg_weyl(u, n));
  return t * a0 * t.adjoint();
}

}  // namespace

Matrix phase_point_operator(std::size_t u, int n) {
  if (u >= phase_space_size(n)) throw std::out_of_range("phase space point out of range");
  return translate(origin_operator(n), u, n);
}

const std::vector<kernels::MonomialOperator>& phase_point_table(int n) {
  require_sites(n);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<kernels::MonomialOperator>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto table = std::make_unique<std::vector<kernels::MonomialOperator>>();
    const std::size_t points = phase_space_size(n);
    const Matrix a0 = origin_operator(n);
    for (std::size_t u = 0; u < points; ++u) {
      const Matrix a = translate(a0, u, n);
      kernels::MonomialOperator op;
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        Eigen::Index row = -1;
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
          if (std::abs(a(r, c)) < 1e-9) continue;
          if (row >= 0) throw std::logic_error("phase point operator is not monomial");
          row = r;
        }
        if (row < 0) throw std::logic_error("phase point operator has an empty column");
        op.row.push_back(static_cast<std::uint32_t>(row));
        op.value.push_back(a(row, c));
      }
      table->push_back(std::move(op));
    }
    slot = std::move(table);
  }
  return *slot;
}

double WignerFunction::total() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

namespace {

WignerFunction wigner_impl(const DensityMatrix& rho, bool parallel) {
  if (rho.d != 3) throw std::invalid_argument("Wigner functions are defined here for qutrits only");
  require_sites(rho.n);
  validate_density(rho);
  const auto& table = phase_point_table(rho.n);
  auto traces = parallel ? kernels::monomial_traces_parallel(table, rho.rho)
                         : kernels::monomial_traces_serial(table, rho.rho);
  const double norm = static_cast<double>(hilbert_dim(rho.n, 3));
  for (auto& v : traces) v /= norm;
  return WignerFunction{rho.n, std::move(traces)};
}

}  // namespace

WignerFunction wigner(const DensityMatrix& rho) { return wigner_impl(rho, true); }
WignerFunction wigner_serial(const DensityMatrix& rho) { return wigner_impl(rho, false); }

Matrix reconstruct(const WignerFunction& w) {
  const auto& table = phase_point_table(w.n);
  if (w.values.size() != table.size()) throw std::invalid_argument("Wigner function has the wrong length");
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(w.n, 3));
  Matrix rho = Matrix::Zero(dim, dim);
  for (std::size_t u = 0; u < table.size(); ++u)
    for (Eigen::Index c = 0; c < dim; ++c)
      rho(table[u].row[static_cast<std::size_t>(c)], c) += w.values[u] * table[u].value[static_cast<std::size_t>(c)];
  return rho;
}

double sum_negativity(const WignerFunction& w) {
  double s = 0.0;
  for (double v : w.values)
    if (v < 0.0) s -= v;
  return s;
}

double mana(const WignerFunction& w) { return std::log2(2.0 * sum_negativity(w) + 1.0); }

ManaCheck mana_lr_check(const DensityMatrix& rho, const StabilizerDictionary& dict, double tol) {
  const auto w = wigner(rho);
  const auto rob = free_robustness(rho, dict);
  ManaCheck out;
  out.negativity = sum_negativity(w);
  out.mana = mana(w);
  out.robustness = rob.r;
  out.lr = rob.lr;
  out.negativity_below_robustness = out.negativity <= out.robustness + tol;
  out.mana_below_lr_plus_one = out.mana < out.lr + 1.0 + tol;
  return out;
}

std::string wigner_csv(const WignerFunction& w) {
  std::ostringstream os;
  os << "u";
  for (int k = 1; k <= w.n; ++k) os << ",a1_" << k << ",a2_" << k;
  os << ",value\n";
  os.precision(17);
  for (std::size_t u = 0; u < w.values.size(); ++u) {
    os << u;
    for (int a : phase_space_point(u, w.n)) os << "," << a;
    os << "," << w.values[u] << "\n";
  }
  return os.str();
}

}  // namespace magiclab

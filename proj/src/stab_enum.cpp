#include "magiclab/stab_enum.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>

namespace magiclab {

namespace {

using Row = std::vector<std::uint8_t>;  // [x_1..x_n, z_1..z_n] over Z_d

int mod(int a, int m) { return ((a % m) + m) % m; }

void require_enumerable(int n, int d) {
  if (d == 2 && n >= 1 && n <= 5) return;
  if (d == 3 && n >= 1 && n <= 2) return;
  throw std::invalid_argument("stabilizer enumeration supports d = 2 with n <= 5 and d = 3 with n <= 2");
}

int sym(const Row& a, const Row& b, int n, int d) {
  int s = 0;
  for (int k = 0; k < n; ++k) s += a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n + k)] -
                                   a[static_cast<std::size_t>(n + k)] * b[static_cast<std::size_t>(k)];
  return mod(s, d);
}

// Walks every maximal isotropic subspace of Z_d^{2n} as a reduced echelon basis.
class LagrangianWalker {
 public:
  LagrangianWalker(int n, int d, const std::function<void(const std::vector<Row>&)>& visit)
      : n_(n), d_(d), visit_(visit), rows_(static_cast<std::size_t>(n), Row(static_cast<std::size_t>(2 * n), 0)) {}

  void run() {
    std::vector<int> pivots;
    choose_pivots(pivots, 0);
  }

 private:
  void choose_pivots(std::vector<int>& pivots, int start) {
    if (static_cast<int>(pivots.size()) == n_) {
      pivots_ = pivots;
      is_pivot_.assign(static_cast<std::size_t>(2 * n_), false);
      for (int p : pivots) is_pivot_[static_cast<std::size_t>(p)] = true;
      fill_row(0);
      return;
    }
    for (int c = start; c < 2 * n_; ++c) {
      pivots.push_back(c);
      choose_pivots(pivots, c + 1);
      pivots.pop_back();
    }
  }

  void fill_row(int r) {
    if (r == n_) {
      visit_(rows_);
      return;
    }
    auto& row = rows_[static_cast<std::size_t>(r)];
    std::fill(row.begin(), row.end(), 0);
    const int p = pivots_[static_cast<std::size_t>(r)];
    row[static_cast<std::size_t>(p)] = 1;
    std::vector<int> free;
    for (int c = p + 1; c < 2 * n_; ++c)
      if (!is_pivot_[static_cast<std::size_t>(c)]) free.push_back(c);
    fill_free(r, free, 0);
  }

  void fill_free(int r, const std::vector<int>& free, std::size_t k) {
    auto& row = rows_[static_cast<std::size_t>(r)];
    if (k == free.size()) {
      for (int q = 0; q < r; ++q)
        if (sym(rows_[static_cast<std::size_t>(q)], row, n_, d_) != 0) return;
      fill_row(r + 1);
      return;
    }
    for (int v = 0; v < d_; ++v) {
      row[static_cast<std::size_t>(free[k])] = static_cast<std::uint8_t>(v);
      fill_free(r, free, k + 1);
    }
    row[static_cast<std::size_t>(free[k])] = 0;
  }

  int n_, d_;
  const std::function<void(const std::vector<Row>&)>& visit_;
  std::vector<Row> rows_;
  std::vector<int> pivots_;
  std::vector<bool> is_pivot_;
};

// Solves A u = b over Z_d (d prime) for a full-row-rank A.
Row solve_mod(std::vector<Row> a, Row b, int d) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    int inv = 1;
    while (mod(a[r][c] * inv, d) != 1) ++inv;
    for (std::size_t k = 0; k < cols; ++k) a[r][k] = static_cast<std::uint8_t>(mod(a[r][k] * inv, d));
    b[r] = static_cast<std::uint8_t>(mod(b[r] * inv, d));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const int f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = static_cast<std::uint8_t>(mod(a[i][k] - f * a[r][k], d));
      b[i] = static_cast<std::uint8_t>(mod(b[i] - f * b[r], d));
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r != rows) throw std::logic_error("destabilizer system is rank deficient");
  Row u(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) u[pivot_col[i]] = b[i];
  return u;
}

// Stabilizer amplitudes are exactly e^{i pi k / 6} / sqrt(m) for m nonzero entries.
Vector snap_amplitudes(const Vector& v) {
  int nonzero = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-6) ++nonzero;
  const double mag = 1.0 / std::sqrt(static_cast<double>(nonzero));
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) <= 1e-6) continue;
    const long k = std::lround(std::arg(v[i]) / (M_PI / 6.0));
    const int kk = static_cast<int>(((k % 12) + 12) % 12);
    // Exact values on the axes avoid cos(pi/2) residue.
    switch (kk) {
      case 0: out[i] = cplx(mag, 0.0); break;
      case 3: out[i] = cplx(0.0, mag); break;
      case 6: out[i] = cplx(-mag, 0.0); break;
      case 9: out[i] = cplx(0.0, -mag); break;
      default: out[i] = std::polar(mag, M_PI * kk / 6.0);
    }
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::istream& is, T& v) {
  return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

}  // namespace

std::uint64_t count_stabilizer_states(int n, int d) {
  if (n < 1 || d < 2) throw std::invalid_argument("count_stabilizer_states needs n >= 1, d >= 2");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(d);
  return total * count_lagrangians(n, d);
}

std::uint64_t count_lagrangians(int n, int d) {
  std::uint64_t total = 1, power = 1;
  for (int k = 1; k <= n; ++k) {
    power *= static_cast<std::uint64_t>(d);
    total *= power + 1;
  }
  return total;
}

std::optional<std::size_t> StabilizerDictionary::find(const Vector& v) const {
  if (v.size() != states.rows()) throw std::invalid_argument("state dimension does not match dictionary");
  const double nv = v.norm();
  for (Eigen::Index j = 0; j < states.cols(); ++j)
    if (std::abs(states.col(j).dot(v)) >= nv * (1.0 - 1e-9)) return static_cast<std::size_t>(j);
  return std::nullopt;
}

void for_each_stabilizer_state(int n, int d,
                               const std::function<void(const StabilizerTableau&, const Vector&)>& visit) {
  require_enumerable(n, d);
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, d));
  const std::size_t characters = hilbert_dim(n, d);
  const auto nn = static_cast<std::size_t>(n);

  std::function<void(const std::vector<Row>&)> on_subspace = [&](const std::vector<Row>& rows) {
    std::vector<PauliOperator> gens;
    for (const auto& r : rows)
      gens.push_back(PauliOperator::from_symplectic(n, d, Row(r.begin(), r.begin() + n), Row(r.begin() + n, r.end())));

    // Destabilizers: symplectic vectors with sym(g_i, D_j) = delta_ij.
    std::vector<Row> coeff;
    for (const auto& g : gens) {
      Row c(2 * nn);
      for (std::size_t k = 0; k < nn; ++k) {
        c[k] = static_cast<std::uint8_t>(mod(-g.z[k], d));
        c[nn + k] = g.x[k];
      }
      coeff.push_back(std::move(c));
    }
    std::vector<Row> destab;
    for (std::size_t j = 0; j < nn; ++j) {
      Row rhs(nn, 0);
      rhs[j] = 1;
      destab.push_back(solve_mod(coeff, rhs, d));
    }

    // Group elements acting on |0>: e|0> = unit^phase |x>.
    std::vector<std::size_t> target;
    std::vector<int> phase;
    std::vector<Row> kvec;
    {
      std::vector<PauliOperator> elems{PauliOperator::identity(n, d)};
      std::vector<Row> ks{Row(nn, 0)};
      for (std::size_t j = 0; j < nn; ++j) {
        std::vector<PauliOperator> next;
        std::vector<Row> next_k;
        for (std::size_t e = 0; e < elems.size(); ++e) {
          auto acc = elems[e];
          for (int k = 0; k < d; ++k) {
            next.push_back(acc);
            Row kv = ks[e];
            kv[j] = static_cast<std::uint8_t>(k);
            next_k.push_back(std::move(kv));
            acc = acc * gens[j];
          }
        }
        elems = std::move(next);
        ks = std::move(next_k);
      }
      for (std::size_t e = 0; e < elems.size(); ++e) {
        std::size_t idx = 0, stride = 1;
        for (std::size_t q = 0; q < nn; ++q, stride *= static_cast<std::size_t>(d)) idx += elems[e].x[q] * stride;
        target.push_back(idx);
        phase.push_back(elems[e].phase);
      }
      kvec = std::move(ks);
    }

    auto char_digits = [&](std::size_t c) {
      Row out(nn);
      for (std::size_t j = 0; j < nn; ++j) {
        out[j] = static_cast<std::uint8_t>(c % static_cast<std::size_t>(d));
        c /= static_cast<std::size_t>(d);
      }
      return out;
    };

    // Reference character: first one whose projector does not annihilate |0>.
    Vector ref;
    Row ref_char;
    for (std::size_t c = 0; c < characters && ref.size() == 0; ++c) {
      const Row cd = char_digits(c);
      Vector v = Vector::Zero(dim);
      for (std::size_t e = 0; e < target.size(); ++e) {
        int ck = 0;
        for (std::size_t j = 0; j < nn; ++j) ck += cd[j] * kvec[e][j];
        v[static_cast<Eigen::Index>(target[e])] +=
            std::polar(1.0, M_PI * static_cast<double>(phase[e] + 2 * ck) / static_cast<double>(d));
      }
      if (v.norm() > 1e-6) {
        ref = v / v.norm();
        ref_char = cd;
      }
    }
    if (ref.size() == 0) throw std::logic_error("no character projects |0> nontrivially");

    for (std::size_t c = 0; c < characters; ++c) {
      const Row cd = char_digits(c);
      StabilizerTableau t{n, d, gens};
      Row dx(nn, 0), dz(nn, 0);
      for (std::size_t j = 0; j < nn; ++j) {
        t.generators[j].phase = mod(t.generators[j].phase + 2 * cd[j], 2 * d);
        const int shift = mod(cd[j] - ref_char[j], d);
        for (std::size_t q = 0; q < nn; ++q) {
          dx[q] = static_cast<std::uint8_t>(mod(dx[q] + shift * destab[j][q], d));
          dz[q] = static_cast<std::uint8_t>(mod(dz[q] + shift * destab[j][nn + q], d));
        }
      }
      const PauliOperator shift_op{n, d, dx, dz, 0};
      visit(t, snap_amplitudes(canonical_phase(apply_pauli(shift_op, ref))));
    }
  };
  LagrangianWalker(n, d, on_subspace).run();
}

StabilizerDictionary enumerate_stabilizer_states(int n, int d, std::size_t memory_limit) {
  require_enumerable(n, d);
  const std::uint64_t count = count_stabilizer_states(n, d);
  const std::size_t dim = hilbert_dim(n, d);
  const std::uint64_t bytes = count * (dim * sizeof(cplx) + static_cast<std::uint64_t>(n) * (2 * n + 64));
  if (bytes > memory_limit)
    throw ResourceLimitError("dictionary for n=" + std::to_string(n) + ", d=" + std::to_string(d) + " needs ~" +
                             std::to_string(bytes >> 20) + " MiB; use for_each_stabilizer_state");
  StabilizerDictionary dict;
  dict.n = n;
  dict.d = d;
  dict.generated_at = utc_timestamp();
  dict.states.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(count));
  dict.tableaux.reserve(count);
  for_each_stabilizer_state(n, d, [&](const StabilizerTableau& t, const Vector& v) {
    if (dict.tableaux.size() >= count) throw std::logic_error("enumeration produced more states than expected");
    dict.states.col(static_cast<Eigen::Index>(dict.tableaux.size())) = v;
    dict.tableaux.push_back(t);
  });
  if (dict.tableaux.size() != count) throw std::logic_error("enumeration count does not match the closed form");
  return dict;
}

std::filesystem::path cache_root() {
  if (const char* env = std::getenv("MAGICLAB_CACHE_DIR"); env && *env) return env;
  return "magic-stab-cache";
}

std::filesystem::path cache_path(int n, int d) {
  return cache_root() / ("v" + std::to_string(kConventionVersion)) /
         ("n" + std::to_string(n) + "d" + std::to_string(d) + ".bin");
}

void save_dictionary(const StabilizerDictionary& dict, const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write cache file " + tmp.string());
    os.write("MSTB", 4);
    put<std::uint32_t>(os, dict.convention_version);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(dict.n));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(dict.d));
    put<std::uint64_t>(os, dict.size());
    char stamp[32] = {};
    dict.generated_at.copy(stamp, sizeof stamp - 1);
    os.write(stamp, sizeof stamp);
    for (std::size_t i = 0; i < dict.size(); ++i) {
      for (const auto& g : dict.tableaux[i].generators) {
        put<std::uint8_t>(os, static_cast<std::uint8_t>(g.phase));
        os.write(reinterpret_cast<const char*>(g.x.data()), static_cast<std::streamsize>(g.x.size()));
        os.write(reinterpret_cast<const char*>(g.z.data()), static_cast<std::streamsize>(g.z.size()));
      }
      const auto col = dict.states.col(static_cast<Eigen::Index>(i));
      for (Eigen::Index k = 0; k < col.size(); ++k) {
        put<float>(os, static_cast<float>(col[k].real()));
        put<float>(os, static_cast<float>(col[k].imag()));
      }
    }
    if (!os) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<StabilizerDictionary> load_dictionary(const std::filesystem::path& path, int n, int d) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[4];
  std::uint32_t version = 0, fn = 0, fd = 0;
  std::uint64_t count = 0;
  char stamp[32];
  if (!is.read(magic, 4) || std::string(magic, 4) != "MSTB") return std::nullopt;
  if (!get(is, version) || !get(is, fn) || !get(is, fd) || !get(is, count)) return std::nullopt;
  if (version != kConventionVersion || fn != static_cast<std::uint32_t>(n) || fd != static_cast<std::uint32_t>(d))
    return std::nullopt;
  if (count != count_stabilizer_states(n, d)) return std::nullopt;
  if (!is.read(stamp, sizeof stamp)) return std::nullopt;
  stamp[sizeof stamp - 1] = '\0';

  StabilizerDictionary dict;
  dict.n = n;
  dict.d = d;
  dict.generated_at = stamp;
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, d));
  dict.states.resize(dim, static_cast<Eigen::Index>(count));
  dict.tableaux.reserve(count);
  const auto nn = static_cast<std::size_t>(n);
  for (std::uint64_t i = 0; i < count; ++i) {
    StabilizerTableau t{n, d, {}};
    for (int g = 0; g < n; ++g) {
      PauliOperator p{n, d, std::vector<std::uint8_t>(nn), std::vector<std::uint8_t>(nn), 0};
      std::uint8_t ph = 0;
      if (!get(is, ph)) return std::nullopt;
      is.read(reinterpret_cast<char*>(p.x.data()), static_cast<std::streamsize>(nn));
      is.read(reinterpret_cast<char*>(p.z.data()), static_cast<std::streamsize>(nn));
      p.phase = ph;
      t.generators.push_back(std::move(p));
    }
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      float re = 0, im = 0;
      if (!get(is, re) || !get(is, im)) return std::nullopt;
      v[k] = cplx(re, im);
    }
    dict.states.col(static_cast<Eigen::Index>(i)) = snap_amplitudes(v);
    dict.tableaux.push_back(std::move(t));
  }
  return dict;
}

const StabilizerDictionary& stabilizer_dictionary(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<StabilizerDictionary>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) {
    const auto path = cache_path(n, d);
    if (auto loaded = load_dictionary(path, n, d)) {
      slot = std::make_unique<StabilizerDictionary>(std::move(*loaded));
    } else {
      slot = std::make_unique<StabilizerDictionary>(enumerate_stabilizer_states(n, d));
      try {
        save_dictionary(*slot, path);
      } catch (const std::exception&) {
        // Read-only cache locations just mean regenerating next time.
      }
    }
  }
  return *slot;
}

std::size_t QuadraticStateSet::distinct_rays() const {
  std::set<std::vector<std::uint64_t>> rays;
  for (const auto& f : functions) {
    auto t = f.truth_table();
    if (t[0] & 1) {
      const auto flipped = f + BooleanFunction::from_monomials(f.n(), {{}});
      t = flipped.truth_table();
    }
    rays.insert(t);
  }
  return rays.size();
}

QuadraticStateSet enumerate_quadratic_states(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("quadratic state enumeration supports 1 <= n <= 5");
  const int bits = 1 + n + n * (n - 1) / 2;
  const std::uint64_t count = std::uint64_t{1} << bits;
  QuadraticStateSet out;
  out.n = n;
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(n, 2));
  out.states.resize(dim, static_cast<Eigen::Index>(count));
  out.functions.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    auto f = quadratic_from_code(n, code);
    out.states.col(static_cast<Eigen::Index>(code)) = function_state(f).amplitudes;
    out.functions.push_back(std::move(f));
  }
  return out;
}

}  // namespace magiclab

#include "magiclab/boolfn.hpp"

#include "magiclab/gf2m.hpp"
#include "magiclab/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace magiclab {

namespace {

std::size_t word_count(int n) { return n <= 6 ? 1 : (std::size_t{1} << (n - 6)); }

std::uint64_t low_mask(int n) { return n >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n)) - 1); }

void check_vars(int n) {
  if (n < 0 || n > (1 << 24)) throw std::invalid_argument("variable count out of range");
}

std::uint64_t monomial_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (int v : m) mask |= std::uint64_t{1} << v;
  return mask;
}

Monomial mask_monomial(std::uint64_t mask) {
  Monomial m;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) m.push_back(v);
  return m;
}

}  // namespace

std::vector<std::uint64_t> moebius_transform(int n, std::vector<std::uint64_t> words) {
  static constexpr std::uint64_t masks[6] = {0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
                                             0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
  if (words.size() != word_count(n)) throw std::invalid_argument("truth table has wrong length");
  for (int i = 0; i < std::min(n, 6); ++i)
    for (auto& w : words) w ^= (w & masks[i]) << (1u << i);
  for (int i = 6; i < n; ++i) {
    const std::size_t step = std::size_t{1} << (i - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * step)
      for (std::size_t k = 0; k < step; ++k) words[base + step + k] ^= words[base + k];
  }
  words[0] &= low_mask(n);
  return words;
}

BooleanFunction::BooleanFunction(int n) : n_(n) {
  check_vars(n);
  if (has_truth_table()) table_.assign(word_count(n), 0);
}

BooleanFunction BooleanFunction::from_monomials(int n, const std::vector<Monomial>& monomials) {
  BooleanFunction f(n);
  for (auto m : monomials) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    for (int v : m)
      if (v < 0 || v >= n) throw std::invalid_argument("monomial variable out of range");
    if (!f.monomials_.erase(m)) f.monomials_.insert(m);
  }
  f.rebuild_table();
  return f;
}

BooleanFunction BooleanFunction::from_truth_table(int n, std::vector<std::uint64_t> words) {
  check_vars(n);
  if (n > kMaxTruthTableVars) throw std::invalid_argument("truth tables are limited to 20 variables");
  if (words.size() != word_count(n)) throw std::invalid_argument("truth table has wrong length");
  words[0] &= low_mask(n);
  BooleanFunction f(n);
  f.table_ = words;
  const auto anf = moebius_transform(n, std::move(words));
  for (std::size_t w = 0; w < anf.size(); ++w)
    for (std::uint64_t bits = anf[w]; bits; bits &= bits - 1)
      f.monomials_.insert(mask_monomial(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits))));
  return f;
}

BooleanFunction BooleanFunction::from_evaluator(int n, const std::function<bool(std::uint64_t)>& f) {
  check_vars(n);
  if (n > kMaxTruthTableVars) throw std::invalid_argument("truth tables are limited to 20 variables");
  std::vector<std::uint64_t> words(word_count(n), 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    if (f(x)) words[x / 64] |= std::uint64_t{1} << (x % 64);
  return from_truth_table(n, std::move(words));
}

void BooleanFunction::rebuild_table() {
  if (!has_truth_table()) return;
  std::vector<std::uint64_t> anf(word_count(n_), 0);
  for (const auto& m : monomials_) {
    const auto idx = monomial_mask(m);
    anf[idx / 64] |= std::uint64_t{1} << (idx % 64);
  }
  table_ = moebius_transform(n_, std::move(anf));
}

int BooleanFunction::degree() const {
  int deg = -1;
  for (const auto& m : monomials_) deg = std::max(deg, static_cast<int>(m.size()));
  return deg;
}

const std::vector<std::uint64_t>& BooleanFunction::truth_table() const {
  if (!has_truth_table()) throw std::logic_error("no truth table above 20 variables");
  return table_;
}

bool BooleanFunction::eval(std::uint64_t x) const {
  if (has_truth_table()) {
    if (x >> n_) throw std::out_of_range("input outside the domain");
    return (table_[x / 64] >> (x % 64)) & 1;
  }
  if (n_ > 63) throw std::invalid_argument("pointwise evaluation is limited to 63 variables");
  bool acc = false;
  for (const auto& m : monomials_) {
    const auto mask = monomial_mask(m);
    if ((x & mask) == mask) acc = !acc;
  }
  return acc;
}

std::uint64_t BooleanFunction::weight() const {
  std::uint64_t w = 0;
  for (auto word : truth_table()) w += static_cast<std::uint64_t>(std::popcount(word));
  return w;
}

BooleanFunction BooleanFunction::operator+(const BooleanFunction& other) const {
  if (n_ != other.n_) throw std::invalid_argument("Boolean functions differ in variable count");
  BooleanFunction r = *this;
  for (const auto& m : other.monomials_)
    if (!r.monomials_.erase(m)) r.monomials_.insert(m);
  if (has_truth_table())
    for (std::size_t i = 0; i < r.table_.size(); ++i) r.table_[i] ^= other.table_[i];
  return r;
}

BooleanFunction BooleanFunction::homogeneous_part(int degree) const {
  std::vector<Monomial> keep;
  for (const auto& m : monomials_)
    if (static_cast<int>(m.size()) == degree) keep.push_back(m);
  return from_monomials(n_, keep);
}

BooleanFunction BooleanFunction::truncated(int max_degree) const {
  std::vector<Monomial> keep;
  for (const auto& m : monomials_)
    if (static_cast<int>(m.size()) <= max_degree) keep.push_back(m);
  return from_monomials(n_, keep);
}

BooleanFunction parse_anf(std::string_view text, int n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty ANF expression");
  std::vector<Monomial> monomials;
  int max_var = -1;
  std::size_t pos = 0;
  auto fail = [&]() { throw std::invalid_argument("bad ANF expression: " + std::string(text)); };
  while (true) {
    Monomial m;
    bool zero = false;
    while (true) {
      if (pos >= s.size()) fail();
      if (s[pos] == '1' || s[pos] == '0') {
        zero = zero || s[pos] == '0';
        ++pos;
      } else if (s[pos] == 'x') {
        ++pos;
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos || end - pos > 3) fail();
        const int k = std::stoi(s.substr(pos, end - pos));
        if (k < 1) fail();
        m.push_back(k - 1);
        max_var = std::max(max_var, k - 1);
        pos = end;
      } else {
        fail();
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!zero) monomials.push_back(std::move(m));
    if (pos == s.size()) break;
    if (s[pos] != '+') fail();
    ++pos;
  }
  if (n == 0) n = max_var + 1;
  if (max_var >= n) throw std::invalid_argument("ANF uses a variable beyond n");
  return BooleanFunction::from_monomials(n, monomials);
}

std::string to_anf_string(const BooleanFunction& f) {
  std::vector<Monomial> ms(f.monomials().begin(), f.monomials().end());
  if (ms.empty()) return "0";
  std::stable_sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) { return a.size() > b.size(); });
  std::string out;
  for (const auto& m : ms) {
    if (!out.empty()) out += "+";
    if (m.empty()) {
      out += "1";
      continue;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += "*";
      out += "x" + std::to_string(m[i] + 1);
    }
  }
  return out;
}

std::string truth_table_hex(const BooleanFunction& f) {
  static const char digits[] = "0123456789abcdef";
  const auto& t = f.truth_table();
  const std::uint64_t bits = std::uint64_t{1} << f.n();
  const std::uint64_t ndigits = std::max<std::uint64_t>(1, bits / 4);
  std::string out;
  for (std::uint64_t k = 0; k < ndigits; ++k) {
    const std::uint64_t bit = 4 * k;
    out.push_back(digits[(t[bit / 64] >> (bit % 64)) & 0xF]);
  }
  return out;
}

BooleanFunction parse_truth_table_hex(std::string_view hex, int n) {
  check_vars(n);
  if (n > kMaxTruthTableVars) throw std::invalid_argument("truth tables are limited to 20 variables");
  const std::uint64_t bits = std::uint64_t{1} << n;
  if (hex.size() != std::max<std::uint64_t>(1, bits / 4)) throw std::invalid_argument("hex truth table has wrong length");
  std::vector<std::uint64_t> words(word_count(n), 0);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[k])));
    std::uint64_t v;
    if (c >= '0' && c <= '9') v = static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<std::uint64_t>(c - 'a' + 10);
    else throw std::invalid_argument("bad hex digit in truth table");
    const std::uint64_t bit = 4 * k;
    words[bit / 64] |= v << (bit % 64);
  }
  if (n < 2 && (words[0] & ~low_mask(n))) throw std::invalid_argument("hex truth table sets bits beyond 2^n");
  return BooleanFunction::from_truth_table(n, std::move(words));
}

void Hypergraph::validate() const {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::set<std::vector<int>> seen;
  for (auto e : edges) {
    if (e.empty()) throw std::invalid_argument("empty hyperedge");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw std::invalid_argument("repeated vertex in hyperedge");
    if (e.front() < 0 || e.back() >= n) throw std::invalid_argument("hyperedge vertex out of range");
    if (!seen.insert(e).second) throw std::invalid_argument("duplicate hyperedge");
  }
}

BooleanFunction Hypergraph::characteristic() const {
  validate();
  return BooleanFunction::from_monomials(n, edges);
}

Hypergraph Hypergraph::from_function(const BooleanFunction& f) {
  Hypergraph h{f.n(), {}};
  for (const auto& m : f.monomials()) {
    if (m.empty()) throw std::invalid_argument("constant term is a global phase, not a hyperedge");
    h.edges.push_back(m);
  }
  return h;
}

DenseState function_state(const BooleanFunction& f) {
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(f.n(), 2));
  const double a = std::pow(2.0, -0.5 * f.n());
  Vector v(dim);
  for (Eigen::Index x = 0; x < dim; ++x) v[x] = f.eval(static_cast<std::uint64_t>(x)) ? -a : a;
  return DenseState{f.n(), 2, std::move(v)};
}

DenseState hypergraph_state(const Hypergraph& h) {
  if (h.n > kMaxTruthTableVars) throw std::invalid_argument("dense hypergraph states are limited to 20 qubits");
  return function_state(h.characteristic());
}

double overlap_from_weight(const BooleanFunction& f, const BooleanFunction& g) {
  const auto diff = f + g;
  return 1.0 - std::ldexp(static_cast<double>(diff.weight()), 1 - f.n());
}

BooleanFunction quadratic_from_code(int n, std::uint64_t code) {
  std::vector<Monomial> ms;
  if (code & 1) ms.push_back({});
  int bit = 1;
  for (int i = 0; i < n; ++i, ++bit)
    if ((code >> bit) & 1) ms.push_back({i});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((code >> bit) & 1) ms.push_back({i, j});
  return BooleanFunction::from_monomials(n, ms);
}

NonquadraticityResult nonquadraticity(const BooleanFunction& f) {
  if (f.n() > kMaxChiVars)
    throw std::invalid_argument("exhaustive nonquadraticity is limited to n <= 6; use decomposition_bound for larger n");
  if (f.n() < 1) throw std::invalid_argument("nonquadraticity needs at least one variable");
  std::array<std::uint64_t, 2> table{f.truth_table()[0], 0};
  const auto r = kernels::chi_search_parallel(f.n(), table);
  return {r.weight, quadratic_from_code(f.n(), r.code)};
}

double dmin_bound_from_chi(int n, std::uint64_t chi) {
  const double ratio = std::ldexp(static_cast<double>(chi), 1 - n);
  if (ratio >= 1.0) throw std::domain_error("chi >= 2^{n-1}: bound undefined");
  return -2.0 * std::log2(1.0 - ratio);
}

double dmin_bound_from_chi(const BooleanFunction& f) { return dmin_bound_from_chi(f.n(), nonquadraticity(f).chi); }

BooleanFunction welch_function(int n) {
  if (n % 2 == 0 || n < 3 || n > kMaxFieldDegree) throw std::invalid_argument("Welch function needs odd n in [3, 15]");
  const int r = (n + 1) / 2;
  const std::uint64_t e = (std::uint64_t{1} << r) + 3;
  return BooleanFunction::from_evaluator(n, [&](std::uint64_t x) {
    return field_trace(field_pow(FieldElement::make(n, static_cast<std::uint32_t>(x)), e)) == 1;
  });
}

}  // namespace magiclab

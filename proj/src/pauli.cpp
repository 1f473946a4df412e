#include "magiclab/pauli.hpp"

#include "magiclab/gf2m.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace magiclab {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

cplx phase_unit(int d, int p) {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(mod(p, 2 * d)) / static_cast<double>(2 * d));
}

void require_same_shape(const PauliOperator& p, const PauliOperator& q) {
  if (p.n != q.n || p.d != q.d) throw std::invalid_argument("Pauli operators differ in n or d");
}

void require_supported(int n, int d) {
  if (n < 0) throw std::invalid_argument("negative site count");
  if (d != 2 && d != 3) throw std::invalid_argument("local dimension must be 2 or 3");
}

int dot(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int inverse_mod(int a, int d) {
  for (int k = 1; k < d; ++k)
    if (mod(a * k, d) == 1) return k;
  throw std::invalid_argument("no inverse");
}

std::uint8_t& sym_entry(PauliOperator& p, int col) {
  return col < p.n ? p.x[static_cast<std::size_t>(col)] : p.z[static_cast<std::size_t>(col - p.n)];
}

}  // namespace

PauliOperator PauliOperator::identity(int n, int d) {
  require_supported(n, d);
  return PauliOperator{n, d, std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0),
                       std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), 0};
}

PauliOperator PauliOperator::from_symplectic(int n, int d, const std::vector<std::uint8_t>& x,
                                             const std::vector<std::uint8_t>& z) {
  require_supported(n, d);
  if (x.size() != static_cast<std::size_t>(n) || z.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("symplectic vector length mismatch");
  PauliOperator p{n, d, x, z, 0};
  if (d == 2) p.phase = mod(dot(x, z), 4);
  return p;
}

PauliOperator PauliOperator::single(int n, int site, char kind, int d) {
  auto p = identity(n, d);
  if (site < 0 || site >= n) throw std::out_of_range("site index");
  const auto s = static_cast<std::size_t>(site);
  switch (kind) {
    case 'X': p.x[s] = 1; break;
    case 'Z': p.z[s] = 1; break;
    case 'Y':
      if (d != 2) throw std::invalid_argument("Y is only defined for qubits");
      p.x[s] = 1;
      p.z[s] = 1;
      p.phase = 1;
      break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return p;
}

bool PauliOperator::is_identity_up_to_phase() const {
  for (int i = 0; i < n; ++i)
    if (x[static_cast<std::size_t>(i)] || z[static_cast<std::size_t>(i)]) return false;
  return true;
}

PauliOperator parse_pauli(std::string_view text, int d) {
  require_supported(0, d);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::size_t pos = 0;
  int phase = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase += d;  // -1 = unit^d
    ++pos;
  }
  PauliOperator p{0, d, {}, {}, 0};
  if (d == 2) {
    if (pos < s.size() && s[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    for (; pos < s.size(); ++pos) {
      std::uint8_t xb = 0, zb = 0;
      switch (s[pos]) {
        case 'I': break;
        case 'X': xb = 1; break;
        case 'Z': zb = 1; break;
        case 'Y': xb = zb = 1; phase += 1; break;
        default: throw std::invalid_argument("bad Pauli string: " + std::string(text));
      }
      p.x.push_back(xb);
      p.z.push_back(zb);
    }
  } else {
    if (pos < s.size() && s[pos] == 'w') {
      ++pos;
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw std::invalid_argument("bad omega exponent in: " + std::string(text));
      phase += 2 * (s[pos] - '0');
      ++pos;
    }
    while (pos < s.size()) {
      if (s[pos] == 'I') {
        p.x.push_back(0);
        p.z.push_back(0);
        ++pos;
        continue;
      }
      if (pos + 3 >= s.size() || s[pos] != 'X' || s[pos + 2] != 'Z' ||
          !std::isdigit(static_cast<unsigned char>(s[pos + 1])) || !std::isdigit(static_cast<unsigned char>(s[pos + 3])))
        throw std::invalid_argument("bad qutrit Pauli string: " + std::string(text));
      p.x.push_back(static_cast<std::uint8_t>(mod(s[pos + 1] - '0', 3)));
      p.z.push_back(static_cast<std::uint8_t>(mod(s[pos + 3] - '0', 3)));
      pos += 4;
    }
  }
  if (p.x.empty()) throw std::invalid_argument("empty Pauli string");
  p.n = static_cast<int>(p.x.size());
  p.phase = mod(phase, 2 * d);
  return p;
}

std::string to_string(const PauliOperator& p) {
  std::string out;
  if (p.d == 2) {
    int ys = 0;
    for (int i = 0; i < p.n; ++i) ys += p.x[static_cast<std::size_t>(i)] & p.z[static_cast<std::size_t>(i)];
    static const char* prefix[] = {"+", "+i", "-", "-i"};
    out = prefix[mod(p.phase - ys, 4)];
    for (int i = 0; i < p.n; ++i) {
      const auto s = static_cast<std::size_t>(i);
      out.push_back(p.x[s] ? (p.z[s] ? 'Y' : 'X') : (p.z[s] ? 'Z' : 'I'));
    }
  } else {
    const int ph = mod(p.phase, 6);
    const int sign = ph % 2;
    const int k = mod(ph - 3 * sign, 6) / 2;
    out = sign ? "-" : "+";
    if (k) out += "w" + std::to_string(k);
    for (int i = 0; i < p.n; ++i) {
      const auto s = static_cast<std::size_t>(i);
      out += "X" + std::to_string(p.x[s]) + "Z" + std::to_string(p.z[s]);
    }
  }
  return out;
}

int symplectic_product(const PauliOperator& p, const PauliOperator& q) {
  require_same_shape(p, q);
  return mod(dot(p.x, q.z) - dot(p.z, q.x), p.d);
}

bool pauli_commutes(const PauliOperator& p, const PauliOperator& q) { return symplectic_product(p, q) == 0; }

PauliOperator operator*(const PauliOperator& p, const PauliOperator& q) {
  require_same_shape(p, q);
  // X^a Z^b X^c Z^e = omega^{b.c} X^{a+c} Z^{b+e}, and omega = unit^2.
  PauliOperator r = p;
  r.phase = mod(p.phase + q.phase + 2 * dot(p.z, q.x), 2 * p.d);
  for (int i = 0; i < p.n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    r.x[s] = static_cast<std::uint8_t>((p.x[s] + q.x[s]) % p.d);
    r.z[s] = static_cast<std::uint8_t>((p.z[s] + q.z[s]) % p.d);
  }
  return r;
}

PauliOperator pauli_power(const PauliOperator& p, int k) {
  if (k < 0) throw std::invalid_argument("negative Pauli power");
  auto r = PauliOperator::identity(p.n, p.d);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

Vector apply_pauli(const PauliOperator& p, const Vector& v) {
  const std::size_t dim = hilbert_dim(p.n, p.d);
  if (static_cast<std::size_t>(v.size()) != dim) throw std::invalid_argument("apply_pauli: dimension mismatch");
  Vector out = Vector::Zero(v.size());
  const cplx global = phase_unit(p.d, p.phase);
  std::vector<cplx> omega(static_cast<std::size_t>(p.d));
  for (int k = 0; k < p.d; ++k) omega[static_cast<std::size_t>(k)] = phase_unit(p.d, 2 * k);
  std::vector<std::size_t> stride(static_cast<std::size_t>(p.n));
  for (int j = 0, s = 1; j < p.n; ++j, s *= p.d) stride[static_cast<std::size_t>(j)] = static_cast<std::size_t>(s);
  for (std::size_t b = 0; b < dim; ++b) {
    if (v[static_cast<Eigen::Index>(b)] == cplx(0.0)) continue;
    std::size_t target = 0, rem = b;
    int zphase = 0;
    for (int j = 0; j < p.n; ++j) {
      const auto s = static_cast<std::size_t>(j);
      const int digit = static_cast<int>(rem % static_cast<std::size_t>(p.d));
      rem /= static_cast<std::size_t>(p.d);
      zphase += p.z[s] * digit;
      target += static_cast<std::size_t>((digit + p.x[s]) % p.d) * stride[s];
    }
    out[static_cast<Eigen::Index>(target)] +=
        global * omega[static_cast<std::size_t>(zphase % p.d)] * v[static_cast<Eigen::Index>(b)];
  }
  return out;
}

Matrix pauli_matrix(const PauliOperator& p) {
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(p.n, p.d));
  Matrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vector e = Vector::Zero(dim);
    e[c] = 1.0;
    m.col(c) = apply_pauli(p, e);
  }
  return m;
}

cplx pauli_expectation(const PauliOperator& p, const Matrix& rho) {
  const std::size_t dim = hilbert_dim(p.n, p.d);
  if (static_cast<std::size_t>(rho.rows()) != dim) throw std::invalid_argument("pauli_expectation: dimension mismatch");
  cplx acc = 0.0;
  std::vector<cplx> omega(static_cast<std::size_t>(p.d));
  for (int k = 0; k < p.d; ++k) omega[static_cast<std::size_t>(k)] = phase_unit(p.d, 2 * k);
  std::vector<std::size_t> stride(static_cast<std::size_t>(p.n));
  for (int j = 0, s = 1; j < p.n; ++j, s *= p.d) stride[static_cast<std::size_t>(j)] = static_cast<std::size_t>(s);
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t target = 0, rem = b;
    int zphase = 0;
    for (int j = 0; j < p.n; ++j) {
      const auto s = static_cast<std::size_t>(j);
      const int digit = static_cast<int>(rem % static_cast<std::size_t>(p.d));
      rem /= static_cast<std::size_t>(p.d);
      zphase += p.z[s] * digit;
      target += static_cast<std::size_t>((digit + p.x[s]) % p.d) * stride[s];
    }
    // P|b> = phase |target>, so Tr(rho P) = sum_b <b|rho|target> phase.
    acc += rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(target)) *
           omega[static_cast<std::size_t>(zphase % p.d)];
  }
  return acc * phase_unit(p.d, p.phase);
}

std::vector<PauliOperator> all_paulis(int n, int d) {
  require_supported(n, d);
  const std::size_t count = hilbert_dim(2 * n, d);
  std::vector<PauliOperator> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto digits = basis_digits(idx, 2 * n, d);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(digits[static_cast<std::size_t>(j)]);
      z[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(digits[static_cast<std::size_t>(n + j)]);
    }
    out.push_back(PauliOperator::from_symplectic(n, d, x, z));
  }
  return out;
}

void StabilizerTableau::validate() const {
  require_supported(n, d);
  if (generators.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("tableau must have exactly n generators");
  for (const auto& g : generators) {
    if (g.n != n || g.d != d) throw std::invalid_argument("generator shape mismatch");
    const auto gd = pauli_power(g, d);
    if (gd.phase != 0) throw std::invalid_argument("generator " + to_string(g) + " has no +1 eigenspace (group contains a nontrivial scalar)");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (!pauli_commutes(generators[i], generators[j]))
        throw std::invalid_argument("generators " + to_string(generators[i]) + " and " + to_string(generators[j]) +
                                    " do not commute");
  const auto canon = canonical();
  for (const auto& g : canon.generators)
    if (g.is_identity_up_to_phase()) {
      if (g.phase != 0) throw std::invalid_argument("tableau group contains a nontrivial scalar");
      throw std::invalid_argument("tableau generators are not independent");
    }
}

StabilizerTableau StabilizerTableau::canonical() const {
  StabilizerTableau out = *this;
  auto& rows = out.generators;
  std::size_t r = 0;
  for (int col = 0; col < 2 * n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && sym_entry(rows[p], col) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const int lead = sym_entry(rows[r], col);
    if (lead != 1) rows[r] = pauli_power(rows[r], inverse_mod(lead, d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const int e = sym_entry(rows[i], col);
      if (e) rows[i] = rows[i] * pauli_power(rows[r], mod(-e, d));
    }
    ++r;
  }
  return out;
}

std::vector<PauliOperator> StabilizerTableau::group_elements() const {
  std::vector<PauliOperator> elems{PauliOperator::identity(n, d)};
  for (const auto& g : generators) {
    std::vector<PauliOperator> next;
    next.reserve(elems.size() * static_cast<std::size_t>(d));
    for (const auto& e : elems) {
      auto acc = e;
      for (int k = 0; k < d; ++k) {
        next.push_back(acc);
        acc = acc * g;
      }
    }
    elems = std::move(next);
  }
  return elems;
}

StabilizerTableau parse_tableau(const std::vector<std::string>& generators, int d) {
  StabilizerTableau t{0, d, {}};
  for (const auto& s : generators) t.generators.push_back(parse_pauli(s, d));
  if (t.generators.empty()) throw std::invalid_argument("empty tableau");
  t.n = t.generators.front().n;
  return t;
}

DenseState tableau_to_state(const StabilizerTableau& t) {
  t.validate();
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(t.n, t.d));
  std::vector<std::vector<PauliOperator>> powers;
  for (const auto& g : t.generators) {
    std::vector<PauliOperator> pw;
    for (int k = 1; k < t.d; ++k) pw.push_back(pauli_power(g, k));
    powers.push_back(std::move(pw));
  }
  for (Eigen::Index b = 0; b < dim; ++b) {
    Vector v = Vector::Zero(dim);
    v[b] = 1.0;
    for (const auto& pw : powers) {
      Vector acc = v;
      for (const auto& g : pw) acc += apply_pauli(g, v);
      v = acc / static_cast<double>(t.d);
    }
    const double nrm = v.norm();
    if (nrm > 1e-6) return DenseState{t.n, t.d, canonical_phase(v / nrm)};
  }
  throw std::logic_error("tableau_to_state: empty joint eigenspace");
}

std::vector<StabilizerTableau> mub_partition(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("mub_partition supports 1 <= n <= 5");
  const std::uint32_t size = 1u << n;
  std::vector<FieldElement> alpha_pow;
  for (int i = 0; i < 2 * n; ++i)
    alpha_pow.push_back(field_pow(FieldElement::make(n, n == 1 ? 1u : 2u), static_cast<std::uint64_t>(i)));
  std::vector<StabilizerTableau> out;
  // Symplectic spread {(X, aX)} with z measured in the trace-dual basis, plus {(0, Z)}.
  for (std::uint32_t a = 0; a < size; ++a) {
    const auto fa = FieldElement::make(n, a);
    StabilizerTableau t{n, 2, {}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint8_t> x(static_cast<std::size_t>(n), 0), z(static_cast<std::size_t>(n), 0);
      x[static_cast<std::size_t>(i)] = 1;
      for (int j = 0; j < n; ++j)
        z[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>(field_trace(fa * alpha_pow[static_cast<std::size_t>(i + j)]));
      t.generators.push_back(PauliOperator::from_symplectic(n, 2, x, z));
    }
    out.push_back(std::move(t));
  }
  StabilizerTableau zs{n, 2, {}};
  for (int i = 0; i < n; ++i) zs.generators.push_back(PauliOperator::single(n, i, 'Z'));
  out.push_back(std::move(zs));
  return out;
}

}  // namespace magiclab

#include "magiclab/gf2m.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace magiclab {

namespace {

// Conway polynomials over GF(2) for degrees 1..15.
constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kModuli = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x5B,   0x83,
    0x11D,   0x211,  0x46F,  0x805,  0x10EB, 0x201B, 0x40A9, 0x8035,
};

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t r = 0;
  a = poly_mod(a, m);
  const int dm = degree(m);
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (degree(a) >= dm) a ^= m;
  }
  return r;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

std::uint32_t field_modulus(int m) {
  if (m < 1 || m > kMaxFieldDegree) throw std::invalid_argument("field degree must be in 1..15");
  return kModuli[static_cast<std::size_t>(m)];
}

// Ben-Or: p of degree m is irreducible iff gcd(x^(2^i) - x, p) = 1 for i <= m/2.
bool is_irreducible(std::uint32_t poly) {
  const int m = degree(poly);
  if (m < 1) return false;
  if (m == 1) return true;
  std::uint64_t xpow = 2;  // x
  for (int i = 1; i <= m / 2; ++i) {
    xpow = poly_mulmod(xpow, xpow, poly);
    if (poly_gcd(poly, xpow ^ 2u) != 1) return false;
  }
  return true;
}

FieldElement FieldElement::make(int m, std::uint32_t value) {
  const auto mod = field_modulus(m);
  if (m < 32 && (value >> m) != 0) throw std::invalid_argument("field element has too many bits");
  return FieldElement{m, value, mod};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.modulus != b.modulus || a.m != b.m) throw std::invalid_argument("field elements use different moduli");
  return FieldElement{a.m, a.value ^ b.value, a.modulus};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.modulus != b.modulus || a.m != b.m) throw std::invalid_argument("field elements use different moduli");
  return FieldElement{a.m, static_cast<std::uint32_t>(poly_mulmod(a.value, b.value, a.modulus)), a.modulus};
}

FieldElement field_pow(FieldElement x, std::uint64_t e) {
  FieldElement result{x.m, 1, x.modulus};
  while (e) {
    if (e & 1u) result = result * x;
    x = x * x;
    e >>= 1;
  }
  return result;
}

int field_trace(const FieldElement& x) {
  FieldElement acc{x.m, 0, x.modulus};
  FieldElement frob = x;
  for (int i = 0; i < x.m; ++i) {
    acc = acc + frob;
    frob = frob * frob;
  }
  // The trace lies in the prime subfield, so acc is 0 or 1.
  if (acc.value > 1) throw std::logic_error("field_trace: result outside GF(2); modulus not irreducible?");
  return static_cast<int>(acc.value);
}

}  // namespace magiclab

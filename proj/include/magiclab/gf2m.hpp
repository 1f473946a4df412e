#pragma once

#include <cstdint>

namespace magiclab {

inline constexpr int kMaxFieldDegree = 15;

// Fixed modulus for GF(2^m), m = 1..15, as a bitmask including the x^m term.
std::uint32_t field_modulus(int m);

// True iff poly (bitmask, degree = highest set bit) is irreducible over GF(2).
bool is_irreducible(std::uint32_t poly);

// Element of GF(2^m) in the polynomial basis; bit i is the coefficient of alpha^i.
struct FieldElement {
  int m = 1;
  std::uint32_t value = 0;
  std::uint32_t modulus = 3;

  static FieldElement make(int m, std::uint32_t value);
  static FieldElement zero(int m) { return make(m, 0); }
  static FieldElement one(int m) { return make(m, 1); }

  bool operator==(const FieldElement&) const = default;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);

FieldElement field_pow(FieldElement x, std::uint64_t e);

// Absolute trace to GF(2): sum of the Frobenius orbit x^(2^i), i < m.
int field_trace(const FieldElement& x);

}  // namespace magiclab

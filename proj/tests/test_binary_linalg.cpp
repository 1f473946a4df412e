#include "magiclab/gf2.hpp"
#include "magiclab/gf2m.hpp"

#include <doctest.h>

#include <random>

using namespace magiclab;

namespace {

BitMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1U);
  return m;
}

}  // namespace

TEST_CASE("rank of small matrices") {
  CHECK(gf2_rank(BitMatrix::identity(3)) == 3);
  CHECK(gf2_rank(BitMatrix(4, 4)) == 0);
  CHECK(gf2_rank(BitMatrix()) == 0);

  // Q + Q^T for the hexagon cycle x1x2 + x2x3 + ... + x6x1 is the cycle adjacency matrix.
  BitMatrix cyc(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    cyc.set(i, (i + 1) % 6, true);
    cyc.set((i + 1) % 6, i, true);
  }
  // Kernel: v_{i-1} = v_{i+1}, spanned by 101010 and 010101, so the rank is 4.
  CHECK(gf2_rank(cyc) == 4);
}

TEST_CASE("rank is invariant under transpose") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_matrix(1 + rng() % 70, 1 + rng() % 70, rng);
    CHECK(gf2_rank(m) == gf2_rank(m.transpose()));
    CHECK(gf2_rank(m) <= std::min(m.rows(), m.cols()));
  }
}

TEST_CASE("solve and nullspace") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_matrix(1 + rng() % 20, 1 + rng() % 20, rng);
    BitVector x(m.cols());
    for (auto& b : x) b = rng() & 1U;
    const auto b = m.apply(x);
    const auto sol = gf2_solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == b);
    const auto ker = gf2_nullspace(m);
    CHECK(ker.rows() + gf2_rank(m) == m.cols());
    for (std::size_t r = 0; r < ker.rows(); ++r)
      for (auto v : m.apply(ker.row(r))) CHECK(v == 0);
  }
  // x = 0 and x = 1 on the same variable.
  auto m = BitMatrix::from_rows({{1}, {1}}, 1);
  CHECK_FALSE(gf2_solve(m, {0, 1}).has_value());
}

TEST_CASE("field moduli are irreducible") {
  for (int m = 1; m <= kMaxFieldDegree; ++m) CHECK(is_irreducible(field_modulus(m)));
  CHECK_FALSE(is_irreducible(0b101));  // x^2 + 1 = (x + 1)^2
}

TEST_CASE("field trace") {
  for (int m = 1; m <= 8; ++m) {
    CHECK(field_trace(FieldElement::zero(m)) == 0);
    // tr(1) is m mod 2: the Frobenius orbit of 1 is m copies of 1.
    CHECK(field_trace(FieldElement::one(m)) == m % 2);
    const std::uint32_t size = 1U << m;
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b) {
        const auto x = FieldElement::make(m, a), y = FieldElement::make(m, b);
        CHECK(field_trace(x + y) == (field_trace(x) ^ field_trace(y)));
      }
  }
}

TEST_CASE("field arithmetic") {
  for (int m = 1; m <= 4; ++m) {
    const std::uint32_t size = 1U << m;
    for (std::uint32_t a = 0; a < size; ++a) {
      const auto x = FieldElement::make(m, a);
      CHECK(field_pow(x, 0) == FieldElement::one(m));
      CHECK(field_pow(x, size) == x);
      for (std::uint32_t b = 0; b < size; ++b)
        for (std::uint32_t c = 0; c < size; ++c) {
          const auto y = FieldElement::make(m, b), z = FieldElement::make(m, c);
          CHECK((x * y) * z == x * (y * z));
        }
    }
  }
  // GF(8): x^7 = 1 and x^{2^2+3} = x^7 for nonzero x.
  for (std::uint32_t a = 1; a < 8; ++a) {
    const auto x = FieldElement::make(3, a);
    CHECK(field_pow(x, 7) == FieldElement::one(3));
    CHECK(field_pow(x, (1U << 2) + 3) == FieldElement::one(3));
  }
  CHECK_THROWS(FieldElement::make(3, 1) + FieldElement::make(4, 1));
}

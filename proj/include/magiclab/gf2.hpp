#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace magiclab {

using BitVector = std::vector<std::uint8_t>;

// Dense GF(2) matrix, row-major, 64 columns per word. Bit i of a row is column i.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c);

  BitVector row(std::size_t r) const;
  BitMatrix transpose() const;
  BitMatrix operator+(const BitMatrix& other) const;
  BitMatrix operator*(const BitMatrix& other) const;
  BitVector apply(const BitVector& v) const;

  bool operator==(const BitMatrix& other) const = default;

  // Raw word access for elimination routines.
  std::uint64_t* row_words(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * words_; }
  std::size_t words_per_row() const { return words_; }

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Rank over GF(2) by Gaussian elimination. Empty matrix has rank 0.
std::size_t gf2_rank(const BitMatrix& m);

// One solution of m x = b, or nullopt when inconsistent.
std::optional<BitVector> gf2_solve(const BitMatrix& m, const BitVector& b);

// Rows of the result form a basis of {x : m x = 0}.
BitMatrix gf2_nullspace(const BitMatrix& m);

}  // namespace magiclab

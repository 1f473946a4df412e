#include "magiclab/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace magiclab {

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(BitMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t words = m.words_per_row();
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t w = 0; w < words; ++w) std::swap(m.row_words(p)[w], m.row_words(r)[w]);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) {
        for (std::size_t w = 0; w < words; ++w) m.row_words(i)[w] ^= m.row_words(r)[w];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] & 1u) m.set(r, c, true);
  }
  return m;
}

void BitMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix index out of range");
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  check(r, c);
  auto& w = bits_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  w = value ? (w | mask) : (w & ~mask);
}

void BitMatrix::flip(std::size_t r, std::size_t c) {
  check(r, c);
  bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = get(r, c);
  return v;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix BitMatrix::operator+(const BitMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("BitMatrix +: shape mismatch");
  BitMatrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
  return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("BitMatrix *: shape mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(r, k))
        for (std::size_t w = 0; w < out.words_; ++w) out.row_words(r)[w] ^= other.row_words(k)[w];
  return out;
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix::apply: length mismatch");
  BitVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= static_cast<std::uint8_t>(get(r, c) & (v[c] & 1u));
    out[r] = acc;
  }
  return out;
}

std::size_t gf2_rank(const BitMatrix& m) {
  BitMatrix work = m;
  return rref(work).size();
}

std::optional<BitVector> gf2_solve(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("gf2_solve: rhs length mismatch");
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) aug.set(r, c, true);
    if (b[r] & 1u) aug.set(r, m.cols(), true);
  }
  const auto pivots = rref(aug);
  BitVector x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = aug.get(i, m.cols());
  }
  return x;
}

BitMatrix gf2_nullspace(const BitMatrix& m) {
  BitMatrix work = m;
  const auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (work.get(i, free)) v[pivots[i]] = 1;
    basis.push_back(std::move(v));
  }
  return BitMatrix::from_rows(basis, m.cols());
}

}  // namespace magiclab

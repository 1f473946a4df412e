#pragma once

#include "magiclab/state.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace magiclab {

// Sorted 0-based variable indices; the empty monomial is the constant 1.
using Monomial = std::vector<int>;

inline constexpr int kMaxTruthTableVars = 20;

// Algebraic normal form with a packed truth table cached for n <= 20.
// Table bit i is f(x) where x_1 is bit 0 of i.
class BooleanFunction {
 public:
  BooleanFunction() = default;
  explicit BooleanFunction(int n);  // the zero function

  static BooleanFunction from_monomials(int n, const std::vector<Monomial>& monomials);
  static BooleanFunction from_truth_table(int n, std::vector<std::uint64_t> words);
  static BooleanFunction from_evaluator(int n, const std::function<bool(std::uint64_t)>& f);

  int n() const { return n_; }
  const std::set<Monomial>& monomials() const { return monomials_; }
  int degree() const;  // -1 for the zero function
  bool has_truth_table() const { return n_ <= kMaxTruthTableVars; }
  const std::vector<std::uint64_t>& truth_table() const;

  bool eval(std::uint64_t x) const;
  std::uint64_t weight() const;

  BooleanFunction operator+(const BooleanFunction& other) const;  // pointwise XOR
  bool operator==(const BooleanFunction& other) const { return n_ == other.n_ && monomials_ == other.monomials_; }

  // Part of the ANF made of monomials of exactly / at most the given degree.
  BooleanFunction homogeneous_part(int degree) const;
  BooleanFunction truncated(int max_degree) const;

 private:
  void rebuild_table();

  int n_ = 0;
  std::set<Monomial> monomials_;
  std::vector<std::uint64_t> table_;
};

// "x1*x2*x3 + x2 + 1"; n = 0 infers the variable count from the largest index.
BooleanFunction parse_anf(std::string_view text, int n = 0);
std::string to_anf_string(const BooleanFunction& f);

// 2^n bits LSB first, as hex digits where digit k holds bits 4k..4k+3.
std::string truth_table_hex(const BooleanFunction& f);
BooleanFunction parse_truth_table_hex(std::string_view hex, int n);

// Moebius transform over GF(2) on a packed table (it is an involution).
std::vector<std::uint64_t> moebius_transform(int n, std::vector<std::uint64_t> words);

struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;  // 0-based vertices, size >= 1

  void validate() const;
  BooleanFunction characteristic() const;
  static Hypergraph from_function(const BooleanFunction& f);
};

// 2^{-n/2} sum_x (-1)^{f(x)} |x>
DenseState function_state(const BooleanFunction& f);
DenseState hypergraph_state(const Hypergraph& h);

// 1 - 2^{1-n} wt(f + g), the inner product of the two function states.
double overlap_from_weight(const BooleanFunction& f, const BooleanFunction& g);

struct NonquadraticityResult {
  std::uint64_t chi = 0;
  BooleanFunction argmin;  // a nearest function of degree <= 2
};

inline constexpr int kMaxChiVars = 6;

// Distance to the nearest degree <= 2 function by exhaustive search (n <= 6).
NonquadraticityResult nonquadraticity(const BooleanFunction& f);

// -2 log2(1 - 2^{1-n} chi).
double dmin_bound_from_chi(int n, std::uint64_t chi);
double dmin_bound_from_chi(const BooleanFunction& f);

// x -> tr(x^{2^r + 3}) on GF(2^n), r = (n + 1) / 2, n odd in [3, 15].
BooleanFunction welch_function(int n);

// Quadratic with coefficients packed as in kernels::quadratic_table.
BooleanFunction quadratic_from_code(int n, std::uint64_t code);

}  // namespace magiclab

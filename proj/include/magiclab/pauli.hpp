#pragma once

#include "magiclab/state.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace magiclab {

// Generalized Pauli  e^{2 pi i phase / (2d)} * X^{x_1} Z^{z_1} (x) ... (x) X^{x_n} Z^{z_n}.
// For d = 2 the phase unit is i, so Y = i X Z carries phase 1.
struct PauliOperator {
  int n = 0;
  int d = 2;
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  int phase = 0;  // mod 2d

  static PauliOperator identity(int n, int d = 2);
  // Hermitian-normalized operator for the given symplectic vector (d = 2 picks i^{x.z}).
  static PauliOperator from_symplectic(int n, int d, const std::vector<std::uint8_t>& x,
                                       const std::vector<std::uint8_t>& z);
  static PauliOperator single(int n, int site, char kind, int d = 2);  // kind in {X, Y, Z}

  bool is_identity_up_to_phase() const;
  bool operator==(const PauliOperator&) const = default;
};

// Text format. Qubits: optional "+", "-", "+i", "-i" then one of I,X,Y,Z per site ("-iYY").
// Qutrits: optional "+"/"-", optional "w<k>" (omega^k), then "X<a>Z<b>" per site ("X2Z1X0Z1").
PauliOperator parse_pauli(std::string_view text, int d = 2);
std::string to_string(const PauliOperator& p);

// Symplectic form  x_P . z_Q - z_P . x_Q  mod d.
int symplectic_product(const PauliOperator& p, const PauliOperator& q);
bool pauli_commutes(const PauliOperator& p, const PauliOperator& q);

PauliOperator operator*(const PauliOperator& p, const PauliOperator& q);
PauliOperator pauli_power(const PauliOperator& p, int k);

Vector apply_pauli(const PauliOperator& p, const Vector& v);
Matrix pauli_matrix(const PauliOperator& p);

// Tr(rho P) evaluated without forming P.
cplx pauli_expectation(const PauliOperator& p, const Matrix& rho);

// All d^{2n} Hermitian-normalized Paulis (d = 2) ordered by symplectic index.
std::vector<PauliOperator> all_paulis(int n, int d = 2);

struct StabilizerTableau {
  int n = 0;
  int d = 2;
  std::vector<PauliOperator> generators;

  // Throws if generators are not n independent commuting operators generating a
  // group free of nontrivial scalars.
  void validate() const;

  // Reduced row echelon form of the symplectic matrix [x | z] with the phases the
  // group assigns to each echelon row. Unique per stabilizer group.
  StabilizerTableau canonical() const;

  // Every element of the generated group (d^n operators with phases).
  std::vector<PauliOperator> group_elements() const;

  bool operator==(const StabilizerTableau&) const = default;
};

StabilizerTableau parse_tableau(const std::vector<std::string>& generators, int d = 2);

// Unique joint +1 eigenstate; global phase fixed so the first nonzero amplitude is positive.
DenseState tableau_to_state(const StabilizerTableau& t);

// 2^n + 1 maximal abelian subgroups pairwise intersecting in the identity (qubits, n <= 5).
std::vector<StabilizerTableau> mub_partition(int n);

}  // namespace magiclab

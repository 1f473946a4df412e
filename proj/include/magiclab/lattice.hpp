#pragma once

#include "magiclab/boolfn.hpp"

#include <array>
#include <string>
#include <vector>

namespace magiclab {

enum class LatticeKind { Triangular, UnionJack };
enum class Boundary { Periodic, Open };
enum class LatticePhase { CczOnly, LevinGu };

LatticeKind parse_lattice_kind(const std::string& s);   // "triangular" | "union-jack"
Boundary parse_boundary(const std::string& s);          // "periodic" | "open"
LatticePhase parse_lattice_phase(const std::string& s);  // "ccz-only" | "levin-gu"
std::string to_string(LatticeKind k);
std::string to_string(Boundary b);
std::string to_string(LatticePhase p);

// A vertex is identified by its unit cell and sublattice.
// index = (cell_row * cols + cell_col) * sublattices + sublattice.
//
// Triangular (3 sublattices), axial coordinates (r, c) with neighbours
// (0,+-1), (+-1,0), (1,-1), (-1,1). Cell (i, j) is centred at (i, i + 3j);
// sublattice k is the vertex (i, i + 3j + k). Centres have sublattice 0 and
// each sees a hexagon of 6 triangles.
//
// Union Jack (4 sublattices), square lattice with both diagonals in every
// square. Cell (i, j) is centred at the square-lattice vertex (i + j, i - j);
// sublattices are: 0 centre, 1 the vertex at +(1, 0), 2 the face at
// +(1/2, 1/2), 3 the face at +(1/2, -1/2). Centres see 8 triangles.
struct Lattice {
  LatticeKind kind = LatticeKind::Triangular;
  int rows = 0;  // unit cells
  int cols = 0;
  Boundary boundary = Boundary::Periodic;
  int sublattices = 3;
  std::vector<std::array<int, 3>> triangles;  // sorted vertex triples
  std::vector<int> centers;                   // one per cell

  int num_vertices() const { return rows * cols * sublattices; }
  int index(int cell_row, int cell_col, int sublattice) const;
  std::array<int, 3> site(int index) const;  // (cell_row, cell_col, sublattice)
};

Lattice make_lattice(LatticeKind kind, int rows, int cols, Boundary boundary);

struct LatticeState {
  Hypergraph hypergraph;
  BooleanFunction function;
};

// CCZ on every triangle; LevinGu adds CZ on every edge and Z on every vertex.
LatticeState build_lattice_state(const Lattice& lattice, LatticePhase phase);

// f = sum_i x_{centers[i]} q_i + residual.
struct CellDecomposition {
  BooleanFunction f;
  std::vector<int> centers;  // 0-based variables
  std::vector<BooleanFunction> q;
  BooleanFunction residual;

  std::size_t order() const { return centers.size(); }
  // Throws unless the identity above holds and every q_i is quadratic and center-free.
  void verify() const;
};

// Cubic monomials go to the q of their single center; lower-degree terms form the residual.
CellDecomposition cell_decompose(const BooleanFunction& f, const std::vector<int>& centers);

// Half the GF(2) rank of Q + Q^T for a function of degree <= 2.
int h_invariant(const BooleanFunction& q);

struct DecompositionBound {
  int n = 0;
  int s = 0;
  std::vector<int> h;
  double chi_bound = 0.0;    // 2^{n-1} - 2^{n-s-1} prod (1 + 2^{-h_i})
  double magic_bound = 0.0;  // 2s - 2 sum log2(1 + 2^{-h_i})
};

DecompositionBound decomposition_bound(const CellDecomposition& d);

// (2 - (2/3) log2 6) n, the value reached by n/3 disjoint CCZ states.
double separable_bound(int n);

}  // namespace magiclab

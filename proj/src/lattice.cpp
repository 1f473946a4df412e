#include "magiclab/lattice.hpp"

#include "magiclab/gf2.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace magiclab {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int mod(int a, int m) { return ((a % m) + m) % m; }

struct CellRef {
  int i, j, sub;
};

// Doubled coordinates for Union Jack: square vertices have both even, faces both odd.
std::optional<CellRef> union_jack_cell(int X, int Y) {
  if (mod(X, 2) != mod(Y, 2)) return std::nullopt;
  int cx, cy, sub;
  if (mod(X, 2) == 0) {
    const int x = X / 2, y = Y / 2;
    if (mod(x + y, 2) == 0) {
      cx = X, cy = Y, sub = 0;
    } else {
      cx = X - 2, cy = Y, sub = 1;
    }
  } else {
    // Face: try the centre at -(1/2, 1/2), otherwise at -(1/2, -1/2).
    if (mod((X - 1) / 2 + (Y - 1) / 2, 2) == 0) {
      cx = X - 1, cy = Y - 1, sub = 2;
    } else {
      cx = X - 1, cy = Y + 1, sub = 3;
    }
  }
  const int x = cx / 2, y = cy / 2;
  return CellRef{(x + y) / 2, (x - y) / 2, sub};
}

CellRef triangular_cell(int r, int c) {
  const int k = mod(c - r, 3);
  return CellRef{r, floor_div(c - k - r, 3), k};
}

}  // namespace

LatticeKind parse_lattice_kind(const std::string& s) {
  if (s == "triangular") return LatticeKind::Triangular;
  if (s == "union-jack") return LatticeKind::UnionJack;
  throw std::invalid_argument("unknown lattice kind: " + s);
}

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  throw std::invalid_argument("unknown boundary: " + s);
}

LatticePhase parse_lattice_phase(const std::string& s) {
  if (s == "ccz-only") return LatticePhase::CczOnly;
  if (s == "levin-gu") return LatticePhase::LevinGu;
  throw std::invalid_argument("unknown lattice phase: " + s);
}

std::string to_string(LatticeKind k) { return k == LatticeKind::Triangular ? "triangular" : "union-jack"; }
std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }
std::string to_string(LatticePhase p) { return p == LatticePhase::CczOnly ? "ccz-only" : "levin-gu"; }

int Lattice::index(int cell_row, int cell_col, int sublattice) const {
  if (cell_row < 0 || cell_row >= rows || cell_col < 0 || cell_col >= cols || sublattice < 0 ||
      sublattice >= sublattices)
    throw std::out_of_range("lattice site out of range");
  return (cell_row * cols + cell_col) * sublattices + sublattice;
}

std::array<int, 3> Lattice::site(int idx) const {
  if (idx < 0 || idx >= num_vertices()) throw std::out_of_range("lattice index out of range");
  const int cell = idx / sublattices;
  return {cell / cols, cell % cols, idx % sublattices};
}

Lattice make_lattice(LatticeKind kind, int rows, int cols, Boundary boundary) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("lattice needs at least 2 x 2 unit cells");
  if (static_cast<long long>(rows) * cols > 1'000'000) throw std::invalid_argument("lattice too large");
  Lattice L;
  L.kind = kind;
  L.rows = rows;
  L.cols = cols;
  L.boundary = boundary;
  L.sublattices = kind == LatticeKind::Triangular ? 3 : 4;

  auto resolve = [&](CellRef c) -> std::optional<int> {
    if (boundary == Boundary::Periodic) return L.index(mod(c.i, rows), mod(c.j, cols), c.sub);
    if (c.i < 0 || c.i >= rows || c.j < 0 || c.j >= cols) return std::nullopt;
    return L.index(c.i, c.j, c.sub);
  };

  std::set<std::array<int, 3>> seen;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int center = L.index(i, j, 0);
      L.centers.push_back(center);
      std::vector<std::optional<int>> ring;
      if (kind == LatticeKind::Triangular) {
        static constexpr int hex[6][2] = {{0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}};
        const int r = i, c = i + 3 * j;
        for (const auto& o : hex) ring.push_back(resolve(triangular_cell(r + o[0], c + o[1])));
      } else {
        static constexpr int oct[8][2] = {{2, 0}, {1, 1}, {0, 2}, {-1, 1}, {-2, 0}, {-1, -1}, {0, -2}, {1, -1}};
        const int X = 2 * (i + j), Y = 2 * (i - j);
        for (const auto& o : oct) {
          const auto cell = union_jack_cell(X + o[0], Y + o[1]);
          if (!cell) throw std::logic_error("union jack neighbour is not a lattice point");
          ring.push_back(resolve(*cell));
        }
      }
      for (std::size_t k = 0; k < ring.size(); ++k) {
        const auto& a = ring[k];
        const auto& b = ring[(k + 1) % ring.size()];
        if (!a || !b) continue;
        std::array<int, 3> tri{center, *a, *b};
        std::sort(tri.begin(), tri.end());
        if (tri[0] == tri[1] || tri[1] == tri[2])
          throw std::invalid_argument("lattice too small: a triangle wraps onto itself");
        if (!seen.insert(tri).second) throw std::invalid_argument("lattice too small: duplicate triangle");
        L.triangles.push_back(tri);
      }
    }
  }
  return L;
}

LatticeState build_lattice_state(const Lattice& lattice, LatticePhase phase) {
  Hypergraph h{lattice.num_vertices(), {}};
  for (const auto& t : lattice.triangles) h.edges.push_back({t[0], t[1], t[2]});
  if (phase == LatticePhase::LevinGu) {
    std::set<std::vector<int>> edges;
    for (const auto& t : lattice.triangles) {
      edges.insert({t[0], t[1]});
      edges.insert({t[0], t[2]});
      edges.insert({t[1], t[2]});
    }
    for (const auto& e : edges) h.edges.push_back(e);
    for (int v = 0; v < lattice.num_vertices(); ++v) h.edges.push_back({v});
  }
  auto f = h.characteristic();
  return {std::move(h), std::move(f)};
}

void CellDecomposition::verify() const {
  if (q.size() != centers.size()) throw std::logic_error("decomposition has mismatched center and q counts");
  std::set<int> center_set(centers.begin(), centers.end());
  if (center_set.size() != centers.size()) throw std::invalid_argument("duplicate center");
  BooleanFunction sum = residual;
  if (residual.degree() > 2) throw std::logic_error("residual has degree above 2");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (q[i].degree() > 2) throw std::logic_error("q_i has degree above 2");
    std::vector<Monomial> prod;
    for (const auto& m : q[i].monomials()) {
      for (int v : m)
        if (center_set.count(v)) throw std::logic_error("q_i contains a center variable");
      auto mm = m;
      mm.push_back(centers[i]);
      prod.push_back(std::move(mm));
    }
    sum = sum + BooleanFunction::from_monomials(f.n(), prod);
  }
  if (!(sum == f)) throw std::logic_error("decomposition does not reproduce f");
}

CellDecomposition cell_decompose(const BooleanFunction& f, const std::vector<int>& centers) {
  if (f.degree() > 3) throw std::invalid_argument("cell decomposition needs a function of degree <= 3");
  std::map<int, std::size_t> slot;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i] < 0 || centers[i] >= f.n()) throw std::invalid_argument("center variable out of range");
    if (!slot.emplace(centers[i], i).second) throw std::invalid_argument("duplicate center");
  }
  std::vector<std::vector<Monomial>> parts(centers.size());
  std::vector<Monomial> rest;
  for (const auto& m : f.monomials()) {
    if (m.size() < 3) {
      rest.push_back(m);
      continue;
    }
    std::optional<std::size_t> owner;
    for (int v : m) {
      auto it = slot.find(v);
      if (it == slot.end()) continue;
      if (owner) throw std::invalid_argument("cubic monomial contains two centers");
      owner = it->second;
    }
    if (!owner) throw std::invalid_argument("cubic monomial contains no center");
    Monomial reduced;
    for (int v : m)
      if (v != centers[*owner]) reduced.push_back(v);
    parts[*owner].push_back(std::move(reduced));
  }
  CellDecomposition d{f, centers, {}, BooleanFunction::from_monomials(f.n(), rest)};
  for (const auto& p : parts) d.q.push_back(BooleanFunction::from_monomials(f.n(), p));
  d.verify();
  return d;
}

int h_invariant(const BooleanFunction& q) {
  if (q.degree() > 2) throw std::invalid_argument("h invariant needs a function of degree <= 2");
  std::map<int, std::size_t> compact;
  for (const auto& m : q.monomials())
    if (m.size() == 2)
      for (int v : m) compact.emplace(v, compact.size());
  BitMatrix b(compact.size(), compact.size());
  for (const auto& m : q.monomials()) {
    if (m.size() != 2) continue;
    const auto a = compact.at(m[0]), c = compact.at(m[1]);
    b.set(a, c, true);
    b.set(c, a, true);
  }
  return static_cast<int>(gf2_rank(b) / 2);
}

DecompositionBound decomposition_bound(const CellDecomposition& d) {
  d.verify();
  DecompositionBound out;
  out.n = d.f.n();
  out.s = static_cast<int>(d.order());
  double log_prod = 0.0;
  for (const auto& q : d.q) {
    const int h = h_invariant(q);
    out.h.push_back(h);
    log_prod += std::log2(1.0 + std::ldexp(1.0, -h));
  }
  out.magic_bound = 2.0 * out.s - 2.0 * log_prod;
  out.chi_bound = std::ldexp(1.0, out.n - 1) - std::ldexp(std::exp2(log_prod), out.n - out.s - 1);
  return out;
}

double separable_bound(int n) {
  if (n < 3) throw std::invalid_argument("separable bound needs n >= 3");
  return (2.0 - (2.0 / 3.0) * std::log2(6.0)) * n;
}

}  // namespace magiclab

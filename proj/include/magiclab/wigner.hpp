#pragma once

#include "magiclab/kernels.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/state.hpp"

#include <string>
#include <vector>

namespace magiclab {

struct StabilizerDictionary;

// Qutrit phase space. Point index u = sum_k (a1_k + 3 a2_k) 9^k for sites k.
inline constexpr int kMaxWignerSites = 3;

std::size_t phase_space_size(int n);
std::vector<int> phase_space_point(std::size_t u, int n);  // a1_1, a2_1, a1_2, a2_2, ...

// T_u = (x)_k omega^{-a1 a2 / 2} Z^{a1} X^{a2}, with 1/2 taken mod 3.
PauliOperator heisenberg_weyl(std::size_t u, int n);

// A_u = T_u A_0 T_u^dagger with A_0 = 3^{-n} sum_u T_u.
Matrix phase_point_operator(std::size_t u, int n);

// Shared sparse form of every A_u (each has one nonzero per column).
const std::vector<kernels::MonomialOperator>& phase_point_table(int n);

struct WignerFunction {
  int n = 0;
  std::vector<double> values;  // W(u) = 3^{-n} Tr(A_u rho)

  double total() const;
};

WignerFunction wigner(const DensityMatrix& rho);
WignerFunction wigner_serial(const DensityMatrix& rho);

// sum_u W(u) A_u
Matrix reconstruct(const WignerFunction& w);

// Total negative mass, and log2(2N + 1).
double sum_negativity(const WignerFunction& w);
double mana(const WignerFunction& w);

struct ManaCheck {
  double negativity = 0.0;
  double mana = 0.0;
  double robustness = 0.0;
  double lr = 0.0;
  bool negativity_below_robustness = false;
  bool mana_below_lr_plus_one = false;
};

ManaCheck mana_lr_check(const DensityMatrix& rho, const StabilizerDictionary& dict, double tol = 1e-7);

// "u,a1_1,a2_1,...,value" lines with a header.
std::string wigner_csv(const WignerFunction& w);

}  // namespace magiclab

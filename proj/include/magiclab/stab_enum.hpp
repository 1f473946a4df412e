#pragma once

#include "magiclab/boolfn.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/state.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magiclab {

inline constexpr std::uint32_t kConventionVersion = 1;

// Thrown when a request would exceed the configured memory budget.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// d^n prod_{k=0}^{n-1} (d^{n-k} + 1)
std::uint64_t count_stabilizer_states(int n, int d);

// Number of maximal isotropic subspaces of F_d^{2n}: prod_{k=1}^{n} (d^k + 1).
std::uint64_t count_lagrangians(int n, int d);

struct StabilizerDictionary {
  int n = 0;
  int d = 2;
  std::vector<StabilizerTableau> tableaux;
  Matrix states;  // one column per entry, d^n rows
  std::string generated_at;
  std::uint32_t convention_version = kConventionVersion;

  std::size_t size() const { return tableaux.size(); }
  Vector state(std::size_t i) const { return states.col(static_cast<Eigen::Index>(i)); }

  // Index of the entry equal to v up to global phase, if any.
  std::optional<std::size_t> find(const Vector& v) const;
};

inline constexpr std::size_t kDefaultDictionaryMemoryLimit = std::size_t{512} << 20;

// Calls visit(tableau, state) for every pure stabilizer state, in canonical order.
// Supported: d = 2 with n <= 5, d = 3 with n <= 2.
void for_each_stabilizer_state(int n, int d,
                               const std::function<void(const StabilizerTableau&, const Vector&)>& visit);

// Materialized dictionary. Throws ResourceLimitError when the dense table would
// exceed memory_limit (n = 5 qubits must use for_each_stabilizer_state).
StabilizerDictionary enumerate_stabilizer_states(int n, int d,
                                                 std::size_t memory_limit = kDefaultDictionaryMemoryLimit);

// Cache root: $MAGICLAB_CACHE_DIR if set, else ./magic-stab-cache.
std::filesystem::path cache_root();
std::filesystem::path cache_path(int n, int d);

void save_dictionary(const StabilizerDictionary& dict, const std::filesystem::path& path);
// nullopt when the file is missing, truncated, or built under another convention.
std::optional<StabilizerDictionary> load_dictionary(const std::filesystem::path& path, int n, int d);

// Process-wide shared dictionary; loads the disk cache or regenerates and writes it.
const StabilizerDictionary& stabilizer_dictionary(int n, int d);

struct QuadraticStateSet {
  int n = 0;
  std::vector<BooleanFunction> functions;
  Matrix states;  // column i is 2^{-n/2} (-1)^{f_i(x)}

  std::size_t size() const { return functions.size(); }
  // Number of entries distinct up to global phase.
  std::size_t distinct_rays() const;
};

QuadraticStateSet enumerate_quadratic_states(int n);

}  // namespace magiclab

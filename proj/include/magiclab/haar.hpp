#pragma once

#include "magiclab/stab_enum.hpp"
#include "magiclab/state.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace magiclab {

inline constexpr int kMaxHaarQubits = 20;

// Sample `index` of the stream seeded by `seed`; same vectors the kernels draw.
DenseState haar_sample(int n, std::uint64_t seed, std::uint64_t index);

// Pr{|<phi|psi>|^2 >= beta} = (1 - beta)^{2^n - 1} for any fixed phi.
double overlap_survival(int n, double beta);
double overlap_cdf(int n, double beta);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t samples = 0;
  bool pass = false;  // p_value >= alpha
};

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, double alpha = 0.01);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha = 0.01);

// exp(0.54 n^2 - 2^{n - gamma})
double dmin_tail_curve(int n, double gamma);
// min(1, |STAB_n| (1 - 2^{-gamma})^{2^n - 1}), the union bound before the n >= 6 simplification.
double dmin_union_bound(int n, double gamma);

struct ExperimentConfig {
  int n = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  bool with_measures = false;  // also extent and robustness per sample
};

struct HaarRecord {
  std::size_t id = 0;
  double dmin = 0.0;
  std::optional<double> dmax;
  std::optional<double> lr;
};

struct CurvePoint {
  double gamma = 0.0;
  double empirical = 0.0;  // fraction of samples with dmin <= gamma
  double curve = 0.0;
  double union_bound = 0.0;
};

struct DminDistribution {
  ExperimentConfig config;
  std::vector<HaarRecord> records;
  double mean = 0.0;
  double max = 0.0;
  std::vector<CurvePoint> points;  // one per distinct sample value
  bool curve_respected = true;     // empirical <= curve wherever curve < 1, pointwise
  // Empirical CDF within a DKW band (confidence 0.999) of the union bound.
  double band = 0.0;
  bool union_bound_respected = true;
  bool chain_ok = true;  // dmin <= dmax <= lr on every sample with measures
};

DminDistribution dmin_distribution(const ExperimentConfig& cfg, const StabilizerDictionary& dict);

// "id,dmin,dmax,lr" with empty fields when not computed.
std::string haar_csv(const DminDistribution& dist);

}  // namespace magiclab

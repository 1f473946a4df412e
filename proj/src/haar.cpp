#include "magiclab/haar.hpp"

#include "magiclab/kernels.hpp"
#include "magiclab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace magiclab {

DenseState haar_sample(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1 || n > kMaxHaarQubits) throw std::invalid_argument("haar_sample supports 1 <= n <= 20");
  return DenseState{n, 2, kernels::haar_vector(hilbert_dim(n, 2), seed, index)};
}

double overlap_survival(int n, double beta) {
  if (beta <= 0.0) return 1.0;
  if (beta >= 1.0) return 0.0;
  return std::pow(1.0 - beta, std::exp2(n) - 1.0);
}

double overlap_cdf(int n, double beta) { return 1.0 - overlap_survival(n, beta); }

double kolmogorov_tail(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double tail_pvalue(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf, double alpha) {
  if (samples.empty()) throw std::invalid_argument("ks_test needs samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / m - f, f - static_cast<double>(i) / m});
  }
  KsResult out{d, tail_pvalue(d, m), samples.size(), false};
  out.pass = out.p_value >= alpha;
  return out;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample needs samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out{d, tail_pvalue(d, na * nb / (na + nb)), a.size() + b.size(), false};
  out.pass = out.p_value >= alpha;
  return out;
}

double dmin_tail_curve(int n, double gamma) { return std::exp(0.54 * n * n - std::exp2(n - gamma)); }

double dmin_union_bound(int n, double gamma) {
  const double count = static_cast<double>(count_stabilizer_states(n, 2));
  const double log_bound = std::log(count) + (std::exp2(n) - 1.0) * std::log1p(-std::exp2(-gamma));
  return std::min(1.0, std::exp(log_bound));
}

DminDistribution dmin_distribution(const ExperimentConfig& cfg, const StabilizerDictionary& dict) {
  if (cfg.samples < 1) throw std::invalid_argument("experiment needs at least one sample");
  if (dict.d != 2 || dict.n != cfg.n) throw std::invalid_argument("dictionary does not match the experiment");
  DminDistribution out;
  out.config = cfg;
  const auto best = kernels::haar_max_overlaps_parallel(dict.states, cfg.samples, cfg.seed);
  out.records.resize(cfg.samples);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    auto& r = out.records[s];
    r.id = s;
    r.dmin = std::max(0.0, -std::log2(std::min(1.0, best[s])));
    if (cfg.with_measures) {
      const auto psi = haar_sample(cfg.n, cfg.seed, s);
      r.dmax = extent(psi, dict).dmax;
      r.lr = free_robustness(DensityMatrix::pure(psi), dict).lr;
      out.chain_ok = out.chain_ok && consistency_chain(r.dmin, *r.dmax, *r.lr);
    }
    out.mean += r.dmin;
    out.max = std::max(out.max, r.dmin);
  }
  out.mean /= static_cast<double>(cfg.samples);

  std::vector<double> sorted;
  for (const auto& r : out.records) sorted.push_back(r.dmin);
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  out.band = std::sqrt(std::log(2.0 / 1e-3) / (2.0 * total));
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    CurvePoint p{sorted[i], (static_cast<double>(i) + 1.0) / total, dmin_tail_curve(cfg.n, sorted[i]),
                 dmin_union_bound(cfg.n, sorted[i])};
    if (p.curve < 1.0 && p.empirical > p.curve) out.curve_respected = false;
    if (p.empirical > p.union_bound + out.band) out.union_bound_respected = false;
    out.points.push_back(p);
  }
  return out;
}

std::string haar_csv(const DminDistribution& dist) {
  std::ostringstream os;
  os.precision(17);
  os << "id,dmin,dmax,lr\n";
  for (const auto& r : dist.records) {
    os << r.id << "," << r.dmin << ",";
    if (r.dmax) os << *r.dmax;
    os << ",";
    if (r.lr) os << *r.lr;
    os << "\n";
  }
  return os.str();
}

}  // namespace magiclab

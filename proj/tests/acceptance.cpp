// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include "magiclab/boolfn.hpp"
#include "magiclab/haar.hpp"
#include "magiclab/kernels.hpp"
#include "magiclab/lattice.hpp"
#include "magiclab/mbqc.hpp"
#include "magiclab/measures.hpp"
#include "magiclab/stab_enum.hpp"
#include "magiclab/wigner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace magiclab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

// Every state touched here also goes through the consistency chain.
std::size_t chain_states = 0;
bool chain_all_ok = true;

void record_chain(const DenseState& psi) {
  const auto& dict = stabilizer_dictionary(psi.n, 2);
  const auto rep = magic_report(psi, dict);
  ++chain_states;
  chain_all_ok = chain_all_ok && rep.chain_ok;
}

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs <= limit_seconds, "time limit " + std::to_string(limit_seconds) + " s");
  if (!out.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), secs, out.detail.str().c_str());
  std::fflush(stdout);
}

BooleanFunction random_function(int n, std::mt19937_64& rng) {
  return BooleanFunction::from_evaluator(n, [&](std::uint64_t) { return (rng() & 1U) != 0; });
}

DenseState random_state(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(hilbert_dim(n, d)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return DenseState{n, d, v / v.norm()};
}

}  // namespace

int main() {
  const double golden = std::log2(3.0 - std::sqrt(3.0));
  const double ccz_dmin = std::log2(16.0 / 9.0);

  criterion(1, "stabilizer counts", 60.0, [](Outcome& o) {
    const std::uint64_t qubits[] = {6, 60, 1080, 36720};
    for (int n = 1; n <= 4; ++n) {
      const auto dict = enumerate_stabilizer_states(n, 2);
      o.require(dict.size() == qubits[n - 1] && count_stabilizer_states(n, 2) == qubits[n - 1],
                "qubit count n=" + std::to_string(n));
    }
    const std::uint64_t qutrits[] = {12, 360};
    for (int n = 1; n <= 2; ++n) {
      const auto dict = enumerate_stabilizer_states(n, 3);
      o.require(dict.size() == qutrits[n - 1] && count_stabilizer_states(n, 3) == qutrits[n - 1],
                "qutrit count n=" + std::to_string(n));
    }
    o.detail << " 6/60/1080/36720, 12/360";
  });

  criterion(2, "golden state", 10.0, [&](Outcome& o) {
    const auto& d1 = stabilizer_dictionary(1, 2);
    const auto g = golden_state();
    const double dm = dmin(g, d1).dmin;
    const double dx = extent(g, d1).dmax;
    const double gg = dmin(tensor(g, g), stabilizer_dictionary(2, 2)).dmin;
    o.require(std::abs(dm - golden) < 1e-5, "dmin");
    o.require(std::abs(dx - golden) < 1e-5, "dmax");
    o.require(std::abs(gg - 2.0 * dm) < 1e-5, "dmin(G x G) = 2 dmin(G)");
    o.detail << " dmin=" << dm << " dmax=" << dx << " dmin(GxG)=" << gg;
    record_chain(g);
    record_chain(tensor(g, g));
  });

  criterion(3, "CCZ magic state", 120.0, [&](Outcome& o) {
    const auto& d3 = stabilizer_dictionary(3, 2);
    const auto psi = ccz_state();
    const auto dm = dmin(psi, d3);
    const auto ex = extent(psi, d3);
    o.require(std::abs(dm.fidelity - 9.0 / 16.0) < 1e-12, "overlap 3/4");
    o.require(std::abs(dm.dmin - ccz_dmin) < 1e-12, "dmin");
    o.require(std::abs(ex.xi - 16.0 / 9.0) < 1e-5, "extent");
    o.require(std::abs(ex.dmax - dm.dmin) < 1e-5, "dmax = dmin");
    o.detail << " dmin=" << dm.dmin << " xi=" << ex.xi;
    record_chain(psi);
  });

  criterion(4, "Boolean cross-check", 5.0, [&](Outcome& o) {
    const auto f = parse_anf("x1*x2*x3", 3);
    const auto chi = nonquadraticity(f);
    const double bound = dmin_bound_from_chi(f);
    const double measured = dmin(function_state(f), stabilizer_dictionary(3, 2)).dmin;
    o.require(chi.chi == 1, "chi = 1");
    o.require(std::abs(bound - measured) < 1e-12, "bound equals measured dmin");
    o.detail << " chi=" << chi.chi << " bound=" << bound << " dmin=" << measured;
  });

  criterion(5, "lattice decomposition bounds", 5.0, [](Outcome& o) {
    struct Case {
      LatticeKind kind;
      int h;
      int cell;
      double per_site;
    };
    const Case cases[] = {
        {LatticeKind::Triangular, 3, 3, 2.0 / 3.0 - (2.0 / 3.0) * std::log2(9.0 / 8.0)},
        {LatticeKind::UnionJack, 4, 4, 0.5 - 0.5 * std::log2(17.0 / 16.0)},
    };
    for (const auto& c : cases) {
      const auto lat = make_lattice(c.kind, 3, 3, Boundary::Periodic);
      const auto st = build_lattice_state(lat, LatticePhase::CczOnly);
      const auto dec = cell_decompose(st.function, lat.centers);
      dec.verify();
      const auto b = decomposition_bound(dec);
      bool all_h = true;
      for (int h : b.h) all_h = all_h && h == c.h;
      const std::string tag = to_string(c.kind);
      o.require(all_h, tag + " h_i = " + std::to_string(c.h) + " (measured " + std::to_string(b.h.front()) + ")");
      o.require(b.s * c.cell == b.n, tag + " s = n/" + std::to_string(c.cell));
      o.require(std::abs(b.magic_bound / b.n - c.per_site) < 1e-12, tag + " magic_bound/n");
      o.detail << " " << tag << ": h=" << b.h.front() << " s=" << b.s << " n=" << b.n
               << " bound/n=" << b.magic_bound / b.n << " (expected " << c.per_site << ")";
    }
  });

  criterion(6, "robustness bound and LP duality", 600.0, [](Outcome& o) {
    const std::pair<int, int> tiers[] = {{1, 50}, {2, 50}, {3, 10}};
    double worst_gap = 0.0;
    for (auto [n, count] : tiers) {
      const auto& dict = stabilizer_dictionary(n, 2);
      for (int s = 0; s < count; ++s) {
        const auto psi = haar_sample(n, 600 + n, static_cast<std::uint64_t>(s));
        const auto rho = DensityMatrix::pure(psi);
        const auto rob = free_robustness(rho, dict);
        const double bound = std::sqrt(std::exp2(n) * (std::exp2(n) + 1.0));
        o.require(rob.r <= bound + 1e-9, "R bound n=" + std::to_string(n));
        worst_gap = std::max(worst_gap, rob.lp.duality_gap());
        record_chain(psi);
      }
    }
    o.require(worst_gap < 1e-8, "duality gap");
    o.detail << " max duality gap=" << worst_gap;
  });

  criterion(7, "qutrit Wigner suite", 300.0, [](Outcome& o) {
    std::mt19937_64 rng(700);
    double worst_sum = 0.0, worst_rec = 0.0, min_stab = 1.0;
    for (int n = 1; n <= 2; ++n)
      for (int t = 0; t < 10; ++t) {
        const auto rho = DensityMatrix::pure(random_state(n, 3, rng));
        const auto w = wigner(rho);
        worst_sum = std::max(worst_sum, std::abs(w.total() - 1.0));
        worst_rec = std::max(worst_rec, (reconstruct(w) - rho.rho).cwiseAbs().maxCoeff());
      }
    o.require(worst_sum < 1e-10, "sum W = 1");
    o.require(worst_rec < 1e-10, "reconstruction");
    const auto& d1 = stabilizer_dictionary(1, 3);
    for (std::size_t j = 0; j < d1.size(); ++j)
      for (double v : wigner(DensityMatrix::pure(DenseState{1, 3, d1.state(j)})).values) min_stab = std::min(min_stab, v);
    o.require(d1.size() == 12 && min_stab >= -1e-12, "Hudson");
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
      const auto c = mana_lr_check(DensityMatrix::pure(random_state(1, 3, rng)), d1);
      bad += !(c.negativity_below_robustness && c.mana_below_lr_plus_one);
    }
    const auto& d2 = stabilizer_dictionary(2, 3);
    for (int t = 0; t < 10; ++t) {
      const auto c = mana_lr_check(DensityMatrix::pure(random_state(2, 3, rng)), d2);
      bad += !(c.negativity_below_robustness && c.mana_below_lr_plus_one);
    }
    o.require(bad == 0, "N <= R and M < LR + 1");
    o.detail << " min W on stabilizers=" << min_stab << " violations=" << bad;
  });

  criterion(8, "MBQC suite", 120.0, [](Outcome& o) {
    std::mt19937_64 rng(800);
    const auto& d3 = stabilizer_dictionary(3, 2);
    double worst_total = 0.0, worst_ratio = 0.0;
    for (int s = 0; s < 5; ++s) {
      const auto psi = s == 0 ? ccz_state() : random_state(3, 2, rng);
      const double dm = dmin(psi, d3).dmin;
      for (int l = 0; l < 20; ++l) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto dist = outcome_distribution(psi, random_layout(3, k, rng));
        worst_total = std::max(worst_total, std::abs(dist.total() - 1.0));
        const auto c = pbound_check(dist, dm);
        o.require(c.pass, "p(y) bound");
        worst_ratio = std::max(worst_ratio, c.max_p / c.bound);
      }
      record_chain(psi);
    }
    o.require(worst_total < 1e-10, "sum p = 1");
    // Single-shot success rate of a uniform guess against |G| accepted strings.
    const int k = 12;
    const std::uint64_t good = 300;
    const PlantedVerifier verifier(k, good, 801);
    const std::size_t trials = 20000;
    const auto res = search_trials(verifier, k, 1, trials, 802);
    std::size_t wins = 0;
    for (const auto& r : res) wins += r.success;
    const double q = static_cast<double>(good) / std::exp2(k);
    const double rate = static_cast<double>(wins) / static_cast<double>(trials);
    const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
    o.require(std::abs(rate - q) <= 3.0 * sigma, "search success rate");
    o.detail << " max p/bound=" << worst_ratio << " rate=" << rate << " expected=" << q << " sigma=" << sigma;
  });

  criterion(9, "Haar statistics", 600.0, [](Outcome& o) {
    for (int n = 1; n <= 3; ++n) {
      const auto ov = kernels::haar_overlaps_parallel(DenseState::basis(n, 2, 0).amplitudes, 10000, 900 + n);
      const auto ks = ks_test(ov, [n](double b) { return overlap_cdf(n, b); });
      o.require(ks.pass, "KS n=" + std::to_string(n));
      o.detail << " KS n=" << n << " p=" << ks.p_value;
    }
    for (int n = 1; n <= 3; ++n) {
      const auto dist = dmin_distribution(ExperimentConfig{n, 2000, 910 + static_cast<std::uint64_t>(n), false},
                                          stabilizer_dictionary(n, 2));
      double excess = 0.0;
      for (const auto& p : dist.points)
        if (p.curve < 1.0) excess = std::max(excess, p.empirical - p.curve);
      o.require(dist.curve_respected, "dmin CDF under curve n=" + std::to_string(n));
      o.detail << " n=" << n << " max excess over curve=" << excess
               << " union bound " << (dist.union_bound_respected ? "respected" : "violated");
    }
  });

  criterion(10, "property suites", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(1000);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const auto f = random_function(n, rng), g = random_function(n, rng);
      const cplx direct = function_state(f).amplitudes.dot(function_state(g).amplitudes);
      worst = std::max(worst, std::abs(direct.real() - overlap_from_weight(f, g)) + std::abs(direct.imag()));
    }
    o.require(worst < 1e-12, "overlap from Hamming weight");
    for (int t = 0; t < 10; ++t) record_chain(random_state(1 + t % 3, 2, rng));
    o.require(chain_all_ok, "dmin <= dmax <= lr");
    o.detail << " overlap error=" << worst << " chain states=" << chain_states;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

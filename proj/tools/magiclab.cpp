#include "magiclab/boolfn.hpp"
#include "magiclab/haar.hpp"
#include "magiclab/io.hpp"
#include "magiclab/lattice.hpp"
#include "magiclab/mbqc.hpp"
#include "magiclab/measures.hpp"
#include "magiclab/stab_enum.hpp"
#include "magiclab/wigner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace magiclab;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  Tolerances tol;
};

json envelope(const std::string& command, const Common& c) {
  return json{{"command", command}, {"version", kToolkitVersion}, {"seed", c.seed}, {"tolerances", to_json(c.tol)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

json function_summary(const BooleanFunction& f) {
  json j{{"n", f.n()}, {"anf", to_anf_string(f)}, {"degree", f.degree()}, {"weight", f.weight()}};
  if (f.n() <= 10) j["truth_table"] = truth_table_hex(f);
  return j;
}

json chi_report(const BooleanFunction& f) {
  const auto r = nonquadraticity(f);
  return json{{"chi", r.chi},
              {"nearest_quadratic", to_anf_string(r.argmin)},
              {"dmin_bound", dmin_bound_from_chi(f.n(), r.chi)}};
}

// --- subcommands ---------------------------------------------------------

struct MeasuresArgs {
  std::string state;
};

json run_measures(const MeasuresArgs& a, const Common& c) {
  const auto psi = read_state_file(a.state);
  const auto& dict = stabilizer_dictionary(psi.n, psi.d);
  auto out = envelope("measures", c);
  if (psi.d == 2) {
    const auto rep = magic_report(psi, dict, c.tol);
    out["report"] = to_json(rep, dict);
  } else {
    // Qutrits: dmin and robustness; the extent is a qubit-only quantity here.
    MagicReport rep;
    rep.n = psi.n;
    rep.d = psi.d;
    rep.tolerances = c.tol;
    rep.dmin = dmin(psi, dict);
    LPOptions lpo;
    lpo.tolerance = c.tol.lp;
    rep.robustness = free_robustness(DensityMatrix::pure(psi), dict, lpo);
    rep.chain_ok = rep.dmin.dmin <= rep.robustness.lr + c.tol.chain;
    out["report"] = to_json(rep, dict);
  }
  return out;
}

struct ChiArgs {
  std::string anf;
  std::string table;
  int n = 0;
};

json run_chi(const ChiArgs& a, const Common& c) {
  if (a.anf.empty() == a.table.empty()) throw CLI::ValidationError("chi", "give exactly one of --anf or --table");
  const auto f = a.anf.empty() ? parse_truth_table_hex(a.table, a.n) : parse_anf(a.anf, a.n);
  auto out = envelope("chi", c);
  out["function"] = function_summary(f);
  out.update(chi_report(f));
  return out;
}

struct LatticeArgs {
  std::string kind = "triangular";
  int rows = 3;
  int cols = 3;
  std::string boundary = "periodic";
  std::string phase = "ccz-only";
  bool measures = false;
  std::string dump_state;
};

json run_lattice(const LatticeArgs& a, const Common& c) {
  const auto lat = make_lattice(parse_lattice_kind(a.kind), a.rows, a.cols, parse_boundary(a.boundary));
  const auto st = build_lattice_state(lat, parse_lattice_phase(a.phase));
  const auto dec = cell_decompose(st.function, lat.centers);
  dec.verify();
  const auto b = decomposition_bound(dec);
  const int n = lat.num_vertices();

  auto out = envelope("lattice", c);
  out["lattice"] = {{"kind", to_string(lat.kind)},
                    {"rows", lat.rows},
                    {"cols", lat.cols},
                    {"boundary", to_string(lat.boundary)},
                    {"phase", a.phase},
                    {"n", n},
                    {"triangles", lat.triangles.size()}};
  json h = b.h;
  out["bound"] = {{"s", b.s},
                  {"h", h},
                  {"chi_bound", b.chi_bound},
                  {"magic_bound", b.magic_bound},
                  {"magic_bound_per_site", b.magic_bound / n},
                  {"separable_bound", separable_bound(n)}};
  if (a.measures) {
    if (n > 4) throw std::invalid_argument("dense measures need n <= 4 (lattice has " + std::to_string(n) + ")");
    const auto psi = function_state(st.function);
    const auto& dict = stabilizer_dictionary(n, 2);
    out["measures"] = to_json(magic_report(psi, dict, c.tol), dict);
  }
  if (!a.dump_state.empty()) {
    if (n > 12) throw std::invalid_argument("state dump needs n <= 12 (lattice has " + std::to_string(n) + ")");
    write_state_file(function_state(st.function), a.dump_state);
    out["state_file"] = a.dump_state;
  }
  return out;
}

struct WignerArgs {
  std::string state;
  std::string csv;
};

json run_wigner(const WignerArgs& a, const Common& c) {
  const auto psi = read_state_file(a.state);
  if (psi.d != 3) throw std::invalid_argument("wigner needs a qutrit state (d = 3)");
  const auto rho = DensityMatrix::pure(psi);
  const auto w = wigner(rho);
  const auto check = mana_lr_check(rho, stabilizer_dictionary(psi.n, 3));
  if (!a.csv.empty()) {
    std::ofstream os(a.csv);
    if (!os) throw std::runtime_error("cannot write " + a.csv);
    os << wigner_csv(w);
  }
  auto out = envelope("wigner", c);
  out["n"] = psi.n;
  out["wigner"] = w.values;
  out["total"] = w.total();
  out["reconstruction_error"] = (reconstruct(w) - rho.rho).cwiseAbs().maxCoeff();
  out["sum_negativity"] = check.negativity;
  out["mana"] = check.mana;
  out["robustness"] = check.robustness;
  out["lr"] = check.lr;
  out["checks"] = {{"negativity_below_robustness", check.negativity_below_robustness},
                   {"mana_below_lr_plus_one", check.mana_below_lr_plus_one}};
  return out;
}

struct MbqcArgs {
  std::string state;
  std::string layout;
  int random_k = 0;
  std::uint64_t budget = 0;
};

json run_mbqc(const MbqcArgs& a, const Common& c) {
  const auto psi = read_state_file(a.state);
  if (psi.d != 2) throw std::invalid_argument("mbqc needs a qubit state");
  std::mt19937_64 rng(c.seed);
  if (a.layout.empty() == (a.random_k == 0))
    throw CLI::ValidationError("mbqc", "give exactly one of --layout or --random-layout");
  const auto layout = a.layout.empty() ? random_layout(psi.n, a.random_k, rng) : parse_layout(split(a.layout, ','));
  const auto dist = outcome_distribution(psi, layout);
  const double dm = dmin(psi, stabilizer_dictionary(psi.n, 2)).dmin;
  const auto pb = pbound_check(dist, dm);
  auto out = envelope("mbqc", c);
  out.update(to_json(dist));
  out["dmin"] = dm;
  out["pbound"] = {{"max_p", pb.max_p}, {"bound", pb.bound}, {"pass", pb.pass}};
  out["repetition_bound"] = repetition_bound(psi.n, dm);
  if (a.budget > 0) {
    // Search for the most likely outcome by uniform guessing.
    std::uint64_t target = 0;
    for (std::uint64_t y = 1; y < dist.probabilities.size(); ++y)
      if (dist.probabilities[y] > dist.probabilities[target]) target = y;
    const auto r = randomized_search([target](std::uint64_t y) { return y == target; }, layout.k(), a.budget, rng);
    out["search"] = {{"target", target}, {"success", r.success}, {"repetitions", r.repetitions}};
  }
  return out;
}

struct HaarArgs {
  int n = 1;
  std::size_t samples = 1000;
  bool measures = false;
  std::string summary;
};

std::string run_haar(const HaarArgs& a, const Common& c) {
  ExperimentConfig cfg{a.n, a.samples, c.seed, a.measures};
  const auto dist = dmin_distribution(cfg, stabilizer_dictionary(a.n, 2));
  if (!a.summary.empty()) {
    auto out = envelope("haar", c);
    out.update(to_json(dist));
    std::ofstream os(a.summary);
    if (!os) throw std::runtime_error("cannot write " + a.summary);
    os << out.dump(2) << "\n";
  }
  return haar_csv(dist);
}

struct EnumArgs {
  int n = 1;
  int d = 2;
};

json run_enum(const EnumArgs& a, const Common& c) {
  auto out = envelope("enum", c);
  out["n"] = a.n;
  out["d"] = a.d;
  out["expected_count"] = count_stabilizer_states(a.n, a.d);
  const auto& dict = stabilizer_dictionary(a.n, a.d);
  out["count"] = dict.size();
  out["cache"] = cache_path(a.n, a.d).string();
  out["generated_at"] = dict.generated_at;
  return out;
}

json run_welch(int n, const Common& c) {
  const auto f = welch_function(n);
  auto out = envelope("welch", c);
  out["function"] = function_summary(f);
  if (n <= kMaxChiVars) out.update(chi_report(f));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer-magic toolkit"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Master seed for randomized steps");
  app.add_option("--tol-lp", common.tol.lp, "Simplex optimality tolerance");
  app.add_option("--tol-bp-gap", common.tol.bp_gap, "Basis-pursuit certified gap");
  app.add_option("--tol-chain", common.tol.chain, "Tolerance on dmin <= dmax <= lr");

  MeasuresArgs ma;
  auto* measures = app.add_subcommand("measures", "dmin, extent and robustness of a state file");
  measures->add_option("--state", ma.state, "State JSON file")->required()->check(CLI::ExistingFile);

  ChiArgs ca;
  auto* chi = app.add_subcommand("chi", "Nonquadraticity of a Boolean function");
  chi->add_option("--anf", ca.anf, "ANF such as \"x1*x2*x3 + x1\"");
  chi->add_option("--table", ca.table, "Truth table in hex");
  chi->add_option("--n", ca.n, "Number of variables")->check(CLI::Range(0, kMaxChiVars));

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "Decomposition bounds for lattice hypergraph states");
  lattice->add_option("--kind", la.kind)->check(CLI::IsMember({"triangular", "union-jack"}));
  lattice->add_option("--rows", la.rows)->check(CLI::PositiveNumber);
  lattice->add_option("--cols", la.cols)->check(CLI::PositiveNumber);
  lattice->add_option("--boundary", la.boundary)->check(CLI::IsMember({"periodic", "open"}));
  lattice->add_option("--phase", la.phase)->check(CLI::IsMember({"ccz-only", "levin-gu"}));
  lattice->add_flag("--measures", la.measures, "Dense measures (n <= 4)");
  lattice->add_option("--dump-state", la.dump_state, "Write the state file (n <= 12)");

  WignerArgs wa;
  auto* wig = app.add_subcommand("wigner", "Discrete Wigner function of a qutrit state");
  wig->add_option("--state", wa.state)->required()->check(CLI::ExistingFile);
  wig->add_option("--csv", wa.csv, "Also write the Wigner values as CSV");

  MbqcArgs ba;
  auto* mbqc = app.add_subcommand("mbqc", "Outcome distribution of commuting Pauli measurements");
  mbqc->add_option("--state", ba.state)->required()->check(CLI::ExistingFile);
  mbqc->add_option("--layout", ba.layout, "Comma separated Paulis, e.g. XII,IXI");
  mbqc->add_option("--random-layout", ba.random_k, "Draw k random observables")->check(CLI::PositiveNumber);
  mbqc->add_option("--search-budget", ba.budget, "Run a randomized search for the likeliest outcome");

  HaarArgs ha;
  auto* haar = app.add_subcommand("haar", "dmin of Haar-random states as CSV");
  haar->add_option("--n", ha.n)->required()->check(CLI::Range(1, 4));
  haar->add_option("--samples", ha.samples)->check(CLI::PositiveNumber);
  haar->add_flag("--measures", ha.measures, "Also compute dmax and lr per sample");
  haar->add_option("--summary", ha.summary, "Write a JSON summary here");

  EnumArgs ea;
  auto* en = app.add_subcommand("enum", "Build the stabilizer-state cache");
  en->add_option("--n", ea.n)->required()->check(CLI::PositiveNumber);
  en->add_option("--d", ea.d)->check(CLI::IsMember({2, 3}));

  int welch_n = 3;
  auto* welch = app.add_subcommand("welch", "Welch power function");
  welch->add_option("--n", welch_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*measures) emit(run_measures(ma, common));
    else if (*chi) emit(run_chi(ca, common));
    else if (*lattice) emit(run_lattice(la, common));
    else if (*wig) emit(run_wigner(wa, common));
    else if (*mbqc) emit(run_mbqc(ba, common));
    else if (*haar) std::cout << run_haar(ha, common);
    else if (*en) emit(run_enum(ea, common));
    else if (*welch) emit(run_welch(welch_n, common));
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    auto err = envelope(app.get_subcommands().front()->get_name(), common);
    err["error"] = e.what();
    emit(err);
    return 1;
  }
  return 0;
}

#include "magiclab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magiclab {

using nlohmann::json;

json state_to_json(const DenseState& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
    amps.push_back({psi.amplitudes[i].real(), psi.amplitudes[i].imag()});
  return json{{"n", psi.n}, {"d", psi.d}, {"amplitudes", amps}};
}

DenseState state_from_json(const json& j, double norm_tol) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j.contains("amplitudes"))
    throw std::invalid_argument("state file needs n, d and amplitudes");
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  if (d != 2 && d != 3) throw std::invalid_argument("state file: d must be 2 or 3");
  if (n < 1) throw std::invalid_argument("state file: n must be positive");
  const auto& amps = j.at("amplitudes");
  const std::size_t dim = hilbert_dim(n, d);
  if (!amps.is_array() || amps.size() != dim)
    throw std::invalid_argument("state file: expected " + std::to_string(dim) + " amplitudes");
  Vector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& a = amps[i];
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("state file: amplitude must be [re, im]");
    v[static_cast<Eigen::Index>(i)] = cplx(a[0].get<double>(), a[1].get<double>());
  }
  if (std::abs(v.norm() - 1.0) > norm_tol) throw std::invalid_argument("state file: state is not normalized");
  return DenseState{n, d, v};
}

DenseState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return state_from_json(json::parse(in));
}

std::string dump_state(const DenseState& psi) { return state_to_json(psi).dump() + "\n"; }

void write_state_file(const DenseState& psi, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_state(psi);
}

json to_json(const Tolerances& t) {
  return json{{"lp", t.lp},
              {"bp_residual", t.bp_residual},
              {"bp_gap", t.bp_gap},
              {"chain", t.chain},
              {"support_eigenvalue", t.support_eigenvalue}};
}

json to_json(const LPSolution& s) {
  return json{{"status", to_string(s.status)},          {"objective", s.objective},
              {"dual_objective", s.dual_objective},     {"duality_gap", s.duality_gap()},
              {"iterations", s.iterations},             {"dropped_rows", s.dropped_rows},
              {"primal_residual", s.primal_residual},   {"dual_infeasibility", s.dual_infeasibility},
              {"complementarity", s.complementarity}};
}

json to_json(const BasisPursuitResult& r) {
  return json{{"l1_value", r.l1_value},       {"lower_bound", r.lower_bound},
              {"gap", r.gap()},               {"iterations", r.iterations},
              {"primal_residual", r.primal_residual}, {"dual_residual", r.dual_residual},
              {"final_rho", r.final_rho}, {"polished", r.polished}};
}

json to_json(const MagicReport& report, const StabilizerDictionary& dict) {
  json generators = json::array();
  for (const auto& g : dict.tableaux.at(report.dmin.argmax).generators) generators.push_back(to_string(g));

  const auto& rob = report.robustness;
  json mixture = json::array();
  for (const auto& [idx, c] : rob.pseudomixture) mixture.push_back({{"index", idx}, {"coefficient", c}});
  json witness = json::array();
  for (Eigen::Index i = 0; i < rob.witness.size(); ++i) witness.push_back(rob.witness[i]);

  json out{{"n", report.n},
           {"d", report.d},
           {"dmin", report.dmin.dmin},
           {"fidelity", report.dmin.fidelity},
           {"best_stabilizer", {{"index", report.dmin.argmax}, {"generators", generators}}},
           {"lr", rob.lr},
           {"r", rob.r},
           {"robustness",
            {{"pseudomixture", mixture},
             {"positive_mass", rob.positive_mass},
             {"negative_mass", rob.negative_mass},
             {"witness_basis", rob.witness_basis},
             {"witness", witness},
             {"witness_on_state", rob.witness_on_state},
             {"witness_max_on_stab", rob.witness_max_on_stab},
             {"lp", to_json(rob.lp)}}},
           {"chain_ok", report.chain_ok},
           {"tolerances", to_json(report.tolerances)}};
  if (report.extent) {
    out["dmax"] = report.extent->dmax;
    out["xi"] = report.extent->xi;
    out["xi_lower"] = report.extent->xi_lower;
    out["extent_solver"] = to_json(report.extent->solver);
  } else {
    out["dmax"] = nullptr;
  }
  return out;
}

json to_json(const OutcomeDistribution& dist) {
  json layout = json::array();
  for (const auto& p : dist.layout.observables) layout.push_back(to_string(p));
  return json{{"layout", layout}, {"distribution", dist.probabilities}, {"total", dist.total()}};
}

json to_json(const DminDistribution& dist) {
  json points = json::array();
  for (const auto& p : dist.points)
    points.push_back(
        {{"gamma", p.gamma}, {"empirical", p.empirical}, {"curve", p.curve}, {"union_bound", p.union_bound}});
  return json{{"n", dist.config.n},
              {"samples", dist.config.samples},
              {"seed", dist.config.seed},
              {"mean_dmin", dist.mean},
              {"max_dmin", dist.max},
              {"curve_respected", dist.curve_respected},
              {"union_bound_respected", dist.union_bound_respected},
              {"band", dist.band},
              {"chain_ok", dist.chain_ok},
              {"cdf", points}};
}

}  // namespace magiclab

#pragma once

#include "magiclab/haar.hpp"
#include "magiclab/measures.hpp"
#include "magiclab/mbqc.hpp"
#include "magiclab/state.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace magiclab {

inline constexpr const char* kToolkitVersion = "0.3.1";

// {"n": .., "d": .., "amplitudes": [[re, im], ...]} in basis order.
nlohmann::json state_to_json(const DenseState& psi);
DenseState state_from_json(const nlohmann::json& j, double norm_tol = 1e-9);

DenseState read_state_file(const std::filesystem::path& path);
void write_state_file(const DenseState& psi, const std::filesystem::path& path);
std::string dump_state(const DenseState& psi);

nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const LPSolution& s);
nlohmann::json to_json(const BasisPursuitResult& r);
nlohmann::json to_json(const MagicReport& report, const StabilizerDictionary& dict);
nlohmann::json to_json(const OutcomeDistribution& dist);
nlohmann::json to_json(const DminDistribution& dist);

}  // namespace magiclab

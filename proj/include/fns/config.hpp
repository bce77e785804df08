#pragma once

#include <string>

#include "fns/solver.hpp"
#include "json.hpp"

namespace fns {

// JSON <-> SolverConfig. Parsing is strict: unknown keys (at any level) and
// wrong value types are errors naming the offending key, so config typos
// cannot silently fall back to defaults. q_list entries may be numbers or
// the string "inf".
SolverConfig parse_solver_config(const nlohmann::json& j);
SolverConfig load_solver_config(const std::string& path);

// Canonical resolved dump: every field explicit, defaults filled in, keys
// sorted (nlohmann object order). Digesting this yields a stable identity
// for a run's configuration.
nlohmann::json config_to_json(const SolverConfig& cfg);

}  // namespace fns

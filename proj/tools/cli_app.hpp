#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "phasefold/experiments.hpp"

namespace phasefold::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kGate = 2;  // also NonSummableTail from tau/classify
inline constexpr int kNotConverged = 3;

// Builds an experiment from a JSON config. Keys: family, params, schedule, pipeline, profiles,
// testfns, predicted, tol; anything else is rejected with BadParams.
ExperimentSpec spec_from_config(const nlohmann::json& config, const std::string& name);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasefold::cli

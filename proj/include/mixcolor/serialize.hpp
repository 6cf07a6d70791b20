#pragma once

// JSON round-trips for models, plans, measurement sets (debugging path), and
// decoder diagnostics. Plans store only their seed and shape; r-vectors,
// adjacency, and sign matrices are regenerated on load.

#include <string>

#include <json.hpp>

#include "mixcolor/decode.hpp"
#include "mixcolor/model.hpp"
#include "mixcolor/robust.hpp"
#include "mixcolor/simulate.hpp"

namespace mixcolor {

nlohmann::json to_json(const MixtureModel& model);
MixtureModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SparseVector& v);
SparseVector sparse_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiselessQueryPlan& plan);
NoiselessQueryPlan noiseless_plan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RobustQueryPlan& plan);
RobustQueryPlan robust_plan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiselessMeasurements& ms);
NoiselessMeasurements noiseless_measurements_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RobustMeasurements& ms);
RobustMeasurements robust_measurements_from_json(const nlohmann::json& j);

// flat CSV dumps of the same content (debugging path, not for re-loading)
std::string to_csv(const NoiselessMeasurements& ms);
std::string to_csv(const RobustMeasurements& ms);

nlohmann::json to_json(const NoiselessDiagnostics& d);
nlohmann::json to_json(const RobustDiagnostics& d);

}  // namespace mixcolor

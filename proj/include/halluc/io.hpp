#pragma once

// JSON encodings of the domain types.
//   Dist          {"universe_size": n, "weights": {"<atom>": w, ...}}
//   EventSet      {"universe_size": n, "members": [atoms...]}
//   ConceptClass  {"name": s, "universe_size": n, "concepts": [[atoms...], ...]}
//   AnchoredFamily {"name": s, "universe_size": n, "anchors": [...], "concept_size": k}
//   Sample        {"universe_size": n, "points": [...], "seed": s}

#include <json.hpp>

#include "halluc/adversaries.hpp"
#include "halluc/concepts.hpp"
#include "halluc/harness.hpp"
#include "halluc/measure.hpp"
#include "halluc/solvers.hpp"

namespace halluc {

using ojson = nlohmann::ordered_json;

ojson to_json(const Dist& p);
ojson to_json(const EventSet& s);
ojson to_json(const ConceptClass& c);
ojson to_json(const AnchoredFamily& f);
ojson to_json(const ConceptPrior& prior);
ojson to_json(const Sample& s);
ojson to_json(const FeasibleRegion& r);
ojson to_json(const SolverReport& r);
ojson to_json(const HardInstance& h);
ojson to_json(const PackingResult& p);
ojson to_json(const LearnerConfig& c);
ojson to_json(const ExperimentConfig& c);
ojson to_json(const TrialRecord& r);
ojson to_json(const SummaryRow& r);

/// Parsers take the universe from "universe_size" unless one is supplied.
Universe universe_from_json(const nlohmann::json& j);
Dist dist_from_json(const nlohmann::json& j);
Dist dist_from_json(const nlohmann::json& j, const Universe& u);
EventSet event_set_from_json(const nlohmann::json& j);
EventSet event_set_from_json(const nlohmann::json& j, const Universe& u);
ConceptClass concept_class_from_json(const nlohmann::json& j);
ConceptClass concept_class_from_json(const nlohmann::json& j, const Universe& u);
Sample sample_from_json(const nlohmann::json& j);
Sample sample_from_json(const nlohmann::json& j, const Universe& u);
/// {"universe_size": n, "constraints": [{"concept": [...], "eps": e}, ...],
///  "families": [{"anchors": [...], "concept_size": k, "eps": e}, ...]}
FeasibleRegion region_from_json(const nlohmann::json& j);
LearnerConfig learner_config_from_json(const nlohmann::json& j);
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace halluc

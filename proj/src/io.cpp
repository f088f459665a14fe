#include "halluc/io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace halluc {

namespace {

std::vector<Atom> atoms_of(std::span<const Atom> members) { return {members.begin(), members.end()}; }

/// Non-finite doubles have no JSON literal; they become strings.
ojson number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

ojson to_json(const Dist& p) {
  ojson weights = ojson::object();
  for (const auto& e : p.support()) weights[std::to_string(e.atom)] = e.weight;
  return {{"universe_size", p.universe().size()}, {"weights", std::move(weights)}};
}

ojson to_json(const EventSet& s) {
  return {{"universe_size", s.universe().size()}, {"members", atoms_of(s.members())}};
}

ojson to_json(const ConceptClass& c) {
  ojson concepts = ojson::array();
  for (const auto& t : c.concepts()) concepts.push_back(atoms_of(t.members()));
  return {{"name", c.name()}, {"universe_size", c.universe().size()}, {"concepts", std::move(concepts)}};
}

ojson to_json(const AnchoredFamily& f) {
  return {{"name", f.name()},
          {"universe_size", f.universe().size()},
          {"anchors", atoms_of(f.anchors().members())},
          {"concept_size", f.concept_size()},
          {"count", f.count()}};
}

ojson to_json(const ConceptPrior& prior) {
  return std::visit([](const auto& p) { return to_json(p); }, prior);
}

ojson to_json(const Sample& s) {
  return {{"universe_size", s.universe().size()}, {"points", atoms_of(s.points())}, {"seed", s.seed()}};
}

ojson to_json(const FeasibleRegion& r) {
  ojson constraints = ojson::array();
  for (const auto& [t, eps] : r.constraints()) constraints.push_back({{"concept", atoms_of(t.members())}, {"eps", eps}});
  ojson families = ojson::array();
  for (const auto& [f, eps] : r.families()) {
    families.push_back({{"anchors", atoms_of(f.anchors().members())}, {"concept_size", f.concept_size()}, {"eps", eps}});
  }
  return {{"universe_size", r.universe().size()}, {"constraints", std::move(constraints)}, {"families", std::move(families)}};
}

ojson to_json(const SolverReport& r) {
  return {{"status", to_string(r.status)},
          {"value", number(r.value)},
          {"iterations", r.iterations},
          {"residual", number(r.residual)},
          {"argmax", r.argmax ? to_json(*r.argmax) : ojson(nullptr)}};
}

ojson to_json(const HardInstance& h) {
  return {{"meta", h.meta}, {"q", to_json(h.q)}, {"facts", to_json(h.truth)}};
}

ojson to_json(const PackingResult& p) {
  return {{"seed", p.seed},
          {"tries", p.tries},
          {"achieved_size", p.achieved_size},
          {"target_size", p.target_size},
          {"class", to_json(p.cls)}};
}

ojson to_json(const LearnerConfig& c) {
  return {{"kind", to_string(c.kind)},
          {"measure", c.measure.name()},
          {"eps", c.eps},
          {"strict", c.strict},
          {"fixed_choice_seed", c.fixed_choice_seed}};
}

ojson to_json(const ExperimentConfig& c) {
  return {{"schema", c.schema},
          {"construction", {{"name", c.construction}, {"params", c.construction_params}}},
          {"learner", to_json(c.learner)},
          {"n_values", c.n_values},
          {"trials", c.trials},
          {"epsilon", c.epsilon},
          {"delta", c.delta},
          {"gamma", c.gamma},
          {"base_seed", c.base_seed},
          {"output_dir", c.output_dir},
          {"workers", c.workers},
          {"adversarial", c.adversarial},
          {"record_wall_time", c.record_wall_time},
          {"provenance", c.provenance}};
}

ojson to_json(const TrialRecord& r) {
  ojson j = {{"trial_index", r.trial_index},
             {"seed", {r.seed.hi, r.seed.lo}},
             {"n", r.n},
             {"hall_value", r.hall_value},
             {"info_learned", r.info_learned},
             {"info_demonstrator", r.info_demonstrator},
             {"version_space_size", r.version_space_size},
             {"feasibility_flag", r.feasibility_flag},
             {"relaxed_flag", r.relaxed_flag},
             {"sample_repeats", r.sample_repeats}};
  if (r.hypothesis_index) j["hypothesis_index"] = *r.hypothesis_index;
  if (!r.solver_status.empty()) j["solver_status"] = r.solver_status;
  if (r.wall_time) j["wall_time"] = *r.wall_time;
  if (r.error) j["error"] = *r.error;
  return j;
}

ojson to_json(const SummaryRow& r) {
  return {{"n", r.n},
          {"trials", r.trials},
          {"completed", r.completed},
          {"failures", r.failures},
          {"hall_ge_eps", r.hall_ge_eps},
          {"prob_hall_ge_eps", r.prob_hall_ge_eps},
          {"wilson_lo", r.wilson_lo},
          {"wilson_hi", r.wilson_hi},
          {"mean_hall", r.mean_hall},
          {"se_hall", r.se_hall},
          {"hall_positive", r.hall_positive},
          {"feasible", r.feasible},
          {"dominance_holds", r.dominance_holds},
          {"dominance_rate", r.dominance_rate},
          {"relaxed", r.relaxed},
          {"repeats", r.repeats}};
}

// ---------------------------------------------------------------------------

Universe universe_from_json(const nlohmann::json& j) { return Universe(j.at("universe_size").get<std::size_t>()); }

Dist dist_from_json(const nlohmann::json& j) { return dist_from_json(j, universe_from_json(j)); }

Dist dist_from_json(const nlohmann::json& j, const Universe& u) {
  std::vector<WeightedAtom> entries;
  const auto& w = j.at("weights");
  if (w.is_array()) {
    // Dense form: one weight per atom.
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].get<double>() != 0.0) entries.push_back({static_cast<Atom>(i), w[i].get<double>()});
    }
  } else {
    for (const auto& [key, value] : w.items()) {
      entries.push_back({static_cast<Atom>(std::stoul(key)), value.get<double>()});
    }
  }
  return Dist(u, std::move(entries));
}

EventSet event_set_from_json(const nlohmann::json& j) { return event_set_from_json(j, universe_from_json(j)); }

EventSet event_set_from_json(const nlohmann::json& j, const Universe& u) {
  const auto& members = j.is_array() ? j : j.at("members");
  return EventSet(u, members.get<std::vector<Atom>>());
}

ConceptClass concept_class_from_json(const nlohmann::json& j) {
  return concept_class_from_json(j, universe_from_json(j));
}

ConceptClass concept_class_from_json(const nlohmann::json& j, const Universe& u) {
  std::vector<Concept> concepts;
  for (const auto& c : j.at("concepts")) concepts.emplace_back(u, c.get<std::vector<Atom>>());
  return ConceptClass(u, std::move(concepts), j.value("name", std::string{}));
}

Sample sample_from_json(const nlohmann::json& j) { return sample_from_json(j, universe_from_json(j)); }

Sample sample_from_json(const nlohmann::json& j, const Universe& u) {
  const auto& points = j.is_array() ? j : j.at("points");
  const std::uint64_t seed = j.is_object() ? j.value("seed", std::uint64_t{0}) : 0;
  return Sample(u, points.get<std::vector<Atom>>(), seed);
}

FeasibleRegion region_from_json(const nlohmann::json& j) {
  const Universe u = universe_from_json(j);
  FeasibleRegion r(u);
  if (j.contains("constraints")) {
    for (const auto& c : j.at("constraints")) r.add(Concept(u, c.at("concept").get<std::vector<Atom>>()), c.at("eps").get<double>());
  }
  if (j.contains("families")) {
    for (const auto& f : j.at("families")) {
      r.add(AnchoredFamily(EventSet(u, f.at("anchors").get<std::vector<Atom>>()), f.at("concept_size").get<std::size_t>()),
            f.at("eps").get<double>());
    }
  }
  return r;
}

LearnerConfig learner_config_from_json(const nlohmann::json& j) {
  LearnerConfig c;
  c.kind = parse_learner_kind(j.at("kind").get<std::string>());
  if (j.contains("measure")) c.measure = InfoMeasure::parse(j.at("measure").get<std::string>());
  c.eps = j.value("eps", c.eps);
  c.strict = j.value("strict", c.strict);
  c.fixed_choice_seed = j.value("fixed_choice_seed", c.fixed_choice_seed);
  return c;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.schema = j.value("schema", std::string{});
  const auto& construction = j.at("construction");
  if (construction.is_string()) {
    c.construction = construction.get<std::string>();
  } else {
    c.construction = construction.at("name").get<std::string>();
    if (construction.contains("params")) c.construction_params = construction.at("params");
  }
  c.learner = learner_config_from_json(j.at("learner"));
  c.n_values = j.at("n_values").get<std::vector<std::size_t>>();
  c.trials = j.value("trials", c.trials);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.delta = j.value("delta", c.delta);
  c.gamma = j.value("gamma", c.gamma);
  c.base_seed = j.value("base_seed", c.base_seed);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.workers = j.value("workers", c.workers);
  c.adversarial = j.value("adversarial", c.adversarial);
  c.record_wall_time = j.value("record_wall_time", c.record_wall_time);
  if (j.contains("provenance")) c.provenance = j.at("provenance");
  validate(c);
  return c;
}

}  // namespace halluc

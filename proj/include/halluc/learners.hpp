#pragma once

// Learning rules: maps from a training sample to a distribution.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halluc/concepts.hpp"
#include "halluc/measure.hpp"
#include "halluc/solvers.hpp"

namespace halluc {

enum class LearnerKind { empirical, improper_max_info, proper_max_info, fixed };
std::string to_string(LearnerKind kind);
LearnerKind parse_learner_kind(const std::string& name);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::empirical;
  InfoMeasure measure = InfoMeasure::out_of_sample();
  double eps = 0.0;
  std::optional<ConceptPrior> prior;  ///< required by the max-info kinds
  std::vector<Dist> hypotheses;       ///< required by proper and fixed
  std::uint64_t fixed_choice_seed = 0;
  /// Safety means hall < eps (a model at exactly eps counts as violating).
  /// The improper learner then optimizes over hall <= eps - 1e-9.
  bool strict = true;
};

/// Throws std::domain_error when kind-dependent fields are missing or eps is outside [0,1].
void validate(const LearnerSpec& spec);

struct LearnedModel {
  Dist dist;
  std::optional<SolverReport> solver_report;
  std::uint64_t version_space_size = 0;
  /// Proper learner only: no hypothesis met the constraints; dist minimizes
  /// the worst version-space hallucination instead.
  bool relaxed = false;
  /// Position in spec.hypotheses for proper and fixed learners.
  std::optional<std::size_t> hypothesis_index;
};

/// Empirical distribution count(x)/n. Throws on an empty sample.
LearnedModel learn_empirical(const Sample& sample);

/// Info-maximizer over the distributions that keep every version-space
/// concept at or below the hallucination budget.
LearnedModel learn_improper(const LearnerSpec& spec, const Sample& sample);

/// Info-maximizer restricted to the hypotheses within budget on the version
/// space; ties keep the earliest hypothesis.
LearnedModel learn_proper(const LearnerSpec& spec, const Sample& sample);

/// Hypothesis chosen by a seeded hash of the sample's point multiset.
LearnedModel learn_fixed(const LearnerSpec& spec, const Sample& sample);

LearnedModel learn(const LearnerSpec& spec, const Sample& sample);

/// The budget the improper learner actually imposes for this spec.
double effective_budget(const LearnerSpec& spec);

}  // namespace halluc

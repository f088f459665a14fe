#pragma once

// Monte Carlo orchestration: seeded sampling, trial execution over a worker
// pool, summary statistics and flat-file outputs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "halluc/adversaries.hpp"
#include "halluc/learners.hpp"
#include "halluc/measure.hpp"
#include "halluc/rng.hpp"

namespace halluc {

/// Inverse-CDF sampler over the canonical atom order.
class Sampler {
 public:
  explicit Sampler(Dist q);
  const Dist& dist() const { return q_; }
  /// n i.i.d. draws from the counter-based stream keyed by `seed`.
  Sample draw(std::size_t n, std::uint64_t seed) const;

 private:
  Dist q_;
  std::vector<double> cdf_;
};

Sample sample_from(const Dist& q, std::size_t n, std::uint64_t seed);

/// ceil((4/eps) (d log2(16/eps) + log2(2/delta))).
std::uint64_t required_n(std::uint64_t d, double eps, double delta);

/// Root in (0, 0.5) of h(2x) + 5x = 1 by bisection, h the binary entropy in `base`.
double entropy_threshold(LogBase base, double tol = 1e-6);

/// Learner settings of a config; the prior and hypotheses come from the construction.
struct LearnerConfig {
  LearnerKind kind = LearnerKind::improper_max_info;
  InfoMeasure measure = InfoMeasure::out_of_sample();
  double eps = 0.1;
  bool strict = true;
  std::uint64_t fixed_choice_seed = 0;
};

LearnerSpec make_learner(const LearnerConfig& cfg, const InstanceEnsemble& ensemble);

struct ExperimentConfig {
  std::string schema = "v1";
  std::string construction;
  nlohmann::json construction_params = nlohmann::json::object();
  LearnerConfig learner;
  std::vector<std::size_t> n_values;
  std::size_t trials = 1;
  double epsilon = 0.1;
  double delta = 0.1;
  double gamma = 0.0;
  std::uint64_t base_seed = 0;
  std::string output_dir;
  std::size_t workers = 1;  ///< 0 selects the hardware concurrency
  /// Let adaptive constructions answer the learner's choice.
  bool adversarial = true;
  /// Wall time breaks byte-identical reruns, so it is opt-in.
  bool record_wall_time = false;
  nlohmann::json provenance = nlohmann::json::object();
};

/// Throws std::domain_error for trials < 1, epsilon or delta outside (0,1), or empty n_values.
void validate(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t trial_index = 0;
  TrialKey seed;
  std::size_t n = 0;
  double hall_value = 0.0;
  double info_learned = 0.0;
  double info_demonstrator = 0.0;
  std::uint64_t version_space_size = 0;
  /// The demonstrator lies inside the learner's constraint set.
  bool feasibility_flag = false;
  bool relaxed_flag = false;
  bool sample_repeats = false;
  std::optional<std::size_t> hypothesis_index;
  std::string solver_status;
  std::optional<double> wall_time;
  std::optional<std::string> error;

  bool completed() const { return !error.has_value(); }
  /// info_learned >= info_demonstrator - 1e-9.
  bool info_dominates() const;
};

struct SummaryRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t completed = 0;
  std::size_t failures = 0;
  std::size_t hall_ge_eps = 0;
  double prob_hall_ge_eps = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double mean_hall = 0.0;
  double se_hall = 0.0;
  std::size_t hall_positive = 0;
  std::size_t feasible = 0;
  std::size_t dominance_holds = 0;  ///< among feasible trials
  double dominance_rate = 1.0;
  std::size_t relaxed = 0;
  std::size_t repeats = 0;
};

constexpr double kWilsonZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t total, double z = kWilsonZ95);

/// One trial. Never throws: failures become error records.
TrialRecord run_trial(const ExperimentConfig& cfg, const InstanceEnsemble& ensemble, const LearnerSpec& spec,
                      std::size_t n, std::size_t trial_index);

struct ExperimentResult {
  std::vector<TrialRecord> records;  ///< ordered by n position, then trial index
  std::vector<SummaryRow> summary;   ///< one row per n
};

SummaryRow summarize(std::size_t n, std::span<const TrialRecord> records, double epsilon);

ExperimentResult run_trials(const ExperimentConfig& cfg);

/// run_trials over strictly increasing n_values.
ExperimentResult complexity_curve(const ExperimentConfig& cfg);

void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
/// trials.jsonl, summary.csv, config.json and plot/*.dat under `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& result);

}  // namespace halluc

#include "halluc/learners.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "halluc/numeric.hpp"
#include "halluc/rng.hpp"

namespace halluc {

namespace {

constexpr double kStrictMargin = 1e-9;

}  // namespace

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::empirical: return "empirical";
    case LearnerKind::improper_max_info: return "improper_max_info";
    case LearnerKind::proper_max_info: return "proper_max_info";
    case LearnerKind::fixed: return "fixed";
  }
  return "unknown";
}

LearnerKind parse_learner_kind(const std::string& name) {
  if (name == "empirical") return LearnerKind::empirical;
  if (name == "improper_max_info" || name == "improper") return LearnerKind::improper_max_info;
  if (name == "proper_max_info" || name == "proper") return LearnerKind::proper_max_info;
  if (name == "fixed") return LearnerKind::fixed;
  throw std::domain_error("unknown learner kind '" + name + "'");
}

void validate(const LearnerSpec& spec) {
  if (!(spec.eps >= 0.0 && spec.eps <= 1.0)) throw std::domain_error("LearnerSpec: eps must lie in [0,1]");
  const bool needs_prior = spec.kind == LearnerKind::improper_max_info || spec.kind == LearnerKind::proper_max_info;
  const bool needs_hypotheses = spec.kind == LearnerKind::proper_max_info || spec.kind == LearnerKind::fixed;
  if (needs_prior && !spec.prior) throw std::domain_error("LearnerSpec: " + to_string(spec.kind) + " needs a concept prior");
  if (needs_hypotheses && spec.hypotheses.empty()) {
    throw std::domain_error("LearnerSpec: " + to_string(spec.kind) + " needs a nonempty hypothesis list");
  }
}

double effective_budget(const LearnerSpec& spec) {
  return spec.strict ? std::max(0.0, spec.eps - kStrictMargin) : spec.eps;
}

LearnedModel learn_empirical(const Sample& sample) {
  if (sample.is_empty()) throw std::domain_error("learn_empirical: empty sample");
  std::map<Atom, std::size_t> counts;
  for (Atom x : sample.points()) ++counts[x];
  const auto n = static_cast<double>(sample.size());
  std::vector<WeightedAtom> entries;
  entries.reserve(counts.size());
  for (const auto& [x, c] : counts) entries.push_back({x, static_cast<double>(c) / n});
  return LearnedModel{Dist(sample.universe(), std::move(entries)), std::nullopt, 0, false, std::nullopt};
}

LearnedModel learn_improper(const LearnerSpec& spec, const Sample& sample) {
  if (spec.kind != LearnerKind::improper_max_info) throw std::domain_error("learn_improper: wrong learner kind");
  validate(spec);
  const ConceptPrior vs = version_space(*spec.prior, sample);
  const FeasibleRegion region = FeasibleRegion::from_prior(vs, effective_budget(spec));
  SolverReport report = max_info(spec.measure, region, sample);
  if (!report.argmax) {
    throw std::runtime_error("learn_improper: solver returned no distribution (" + to_string(report.status) + ")");
  }
  Dist dist = *report.argmax;
  return LearnedModel{std::move(dist), std::move(report), prior_size(vs), false, std::nullopt};
}

LearnedModel learn_proper(const LearnerSpec& spec, const Sample& sample) {
  if (spec.kind != LearnerKind::proper_max_info) throw std::domain_error("learn_proper: wrong learner kind");
  validate(spec);
  const ConceptPrior vs = version_space(*spec.prior, sample);
  const double budget = effective_budget(spec);
  const double slack = spec.strict ? 0.0 : kNormTol;

  std::optional<std::size_t> best;
  double best_info = -std::numeric_limits<double>::infinity();
  std::size_t fallback = 0;
  double fallback_hall = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.hypotheses.size(); ++i) {
    const Dist& p = spec.hypotheses[i];
    const double worst = max_hall(vs, p);
    if (worst < fallback_hall) {
      fallback_hall = worst;
      fallback = i;
    }
    if (worst > budget + slack) continue;
    const double value = info(spec.measure, p, sample);
    if (!best || value > best_info) {
      best = i;
      best_info = value;
    }
  }
  const bool relaxed = !best.has_value();
  const std::size_t index = relaxed ? fallback : *best;
  return LearnedModel{spec.hypotheses[index], std::nullopt, prior_size(vs), relaxed, index};
}

LearnedModel learn_fixed(const LearnerSpec& spec, const Sample& sample) {
  if (spec.hypotheses.empty()) throw std::domain_error("learn_fixed: empty hypothesis list");
  std::vector<Atom> points(sample.points().begin(), sample.points().end());
  std::sort(points.begin(), points.end());
  std::uint64_t h = hash_words({spec.fixed_choice_seed, points.size()});
  for (Atom x : points) h = mix64(h ^ (static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL));
  const std::size_t index = static_cast<std::size_t>(h % spec.hypotheses.size());
  return LearnedModel{spec.hypotheses[index], std::nullopt, 0, false, index};
}

LearnedModel learn(const LearnerSpec& spec, const Sample& sample) {
  switch (spec.kind) {
    case LearnerKind::empirical: return learn_empirical(sample);
    case LearnerKind::improper_max_info: return learn_improper(spec, sample);
    case LearnerKind::proper_max_info: return learn_proper(spec, sample);
    case LearnerKind::fixed: return learn_fixed(spec, sample);
  }
  throw std::logic_error("learn: unknown learner kind");
}

}  // namespace halluc

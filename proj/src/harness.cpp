#include "halluc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "halluc/io.hpp"
#include "halluc/numeric.hpp"

namespace halluc {

namespace {

constexpr std::uint64_t kSampleStream = 0x73616d70ULL;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Sampler::Sampler(Dist q) : q_(std::move(q)) {
  cdf_.reserve(q_.support_size());
  CompensatedSum running;
  for (const auto& e : q_.support()) {
    running.add(e.weight);
    cdf_.push_back(running.value());
  }
}

Sample Sampler::draw(std::size_t n, std::uint64_t seed) const {
  CounterRng rng(seed, kSampleStream);
  std::vector<Atom> points;
  points.reserve(n);
  const auto support = q_.support();
  const double total = cdf_.back();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), support.size() - 1);
    points.push_back(support[idx].atom);
  }
  return Sample(q_.universe(), std::move(points), seed);
}

Sample sample_from(const Dist& q, std::size_t n, std::uint64_t seed) { return Sampler(q).draw(n, seed); }

std::uint64_t required_n(std::uint64_t d, double eps, double delta) {
  if (d < 1) throw std::domain_error("required_n: d must be at least 1");
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("required_n: eps and delta must lie in (0,1)");
  }
  const double v = (4.0 / eps) * (static_cast<double>(d) * std::log2(16.0 / eps) + std::log2(2.0 / delta));
  return static_cast<std::uint64_t>(std::ceil(v));
}

double entropy_threshold(LogBase base, double tol) {
  auto f = [base](double x) { return binary_entropy(2.0 * x, base) + 5.0 * x - 1.0; };
  double lo = 0.0, hi = 0.5;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LearnerSpec make_learner(const LearnerConfig& cfg, const InstanceEnsemble& ensemble) {
  LearnerSpec spec;
  spec.kind = cfg.kind;
  spec.measure = cfg.measure;
  spec.eps = cfg.eps;
  spec.strict = cfg.strict;
  spec.fixed_choice_seed = cfg.fixed_choice_seed;
  spec.prior = ensemble.prior;
  spec.hypotheses = ensemble.hypotheses;
  return spec;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.schema != "v1") throw std::domain_error("ExperimentConfig: unsupported schema '" + cfg.schema + "'");
  if (cfg.trials < 1) throw std::domain_error("ExperimentConfig: trials must be at least 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw std::domain_error("ExperimentConfig: epsilon must lie in (0,1)");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::domain_error("ExperimentConfig: delta must lie in (0,1)");
  if (cfg.n_values.empty()) throw std::domain_error("ExperimentConfig: n_values is empty");
}

bool TrialRecord::info_dominates() const { return info_learned >= info_demonstrator - kCompareTol; }

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t total, double z) {
  if (successes > total) throw std::domain_error("wilson_interval: successes exceed total");
  if (total == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(total);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The interval always contains p; clamp rounding at the ends.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0), std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

TrialRecord run_trial(const ExperimentConfig& cfg, const InstanceEnsemble& ensemble, const LearnerSpec& spec,
                      std::size_t n, std::size_t trial_index) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.n = n;
  rec.seed = derive_trial_key(cfg.base_seed, trial_index, n);
  const auto start = std::chrono::steady_clock::now();
  try {
    const HardInstance instance = ensemble.draw(hash_words({rec.seed.hi, rec.seed.lo, 1}));
    const Sample sample = sample_from(instance.q, n, hash_words({rec.seed.hi, rec.seed.lo, 2}));
    const LearnedModel model = learn(spec, sample);
    std::optional<HardInstance> response;
    if (cfg.adversarial && ensemble.respond && model.hypothesis_index) {
      response = ensemble.respond(*model.hypothesis_index, sample);
    }
    const Concept& truth = response ? response->truth : instance.truth;
    rec.hall_value = hall(model.dist, truth);
    rec.info_learned = info(spec.measure, model.dist, sample);
    rec.info_demonstrator = info(spec.measure, instance.q, sample);
    if (spec.prior) {
      const ConceptPrior vs = version_space(*spec.prior, sample);
      rec.version_space_size = prior_size(vs);
      rec.feasibility_flag = max_hall(vs, instance.q) <= effective_budget(spec) + kCompareTol;
    } else {
      rec.feasibility_flag = true;
    }
    rec.relaxed_flag = model.relaxed;
    rec.hypothesis_index = model.hypothesis_index;
    if (model.solver_report) rec.solver_status = to_string(model.solver_report->status);
    rec.sample_repeats = sample.distinct().size() < sample.size();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  if (cfg.record_wall_time) {
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

SummaryRow summarize(std::size_t n, std::span<const TrialRecord> records, double epsilon) {
  SummaryRow row;
  row.n = n;
  row.trials = records.size();
  CompensatedSum sum;
  std::vector<double> halls;
  for (const auto& r : records) {
    if (!r.completed()) {
      ++row.failures;
      continue;
    }
    ++row.completed;
    halls.push_back(r.hall_value);
    sum.add(r.hall_value);
    if (r.hall_value >= epsilon) ++row.hall_ge_eps;
    if (r.hall_value > 0.0) ++row.hall_positive;
    if (r.relaxed_flag) ++row.relaxed;
    if (r.sample_repeats) ++row.repeats;
    if (r.feasibility_flag) {
      ++row.feasible;
      if (r.info_dominates()) ++row.dominance_holds;
    }
  }
  if (row.completed > 0) {
    const double c = static_cast<double>(row.completed);
    row.prob_hall_ge_eps = static_cast<double>(row.hall_ge_eps) / c;
    row.mean_hall = sum.value() / c;
    if (row.completed > 1) {
      CompensatedSum sq;
      for (double h : halls) sq.add((h - row.mean_hall) * (h - row.mean_hall));
      row.se_hall = std::sqrt(sq.value() / (c - 1.0) / c);
    }
  }
  std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(row.hall_ge_eps, row.completed);
  row.dominance_rate = row.feasible > 0 ? static_cast<double>(row.dominance_holds) / static_cast<double>(row.feasible) : 1.0;
  return row;
}

ExperimentResult run_trials(const ExperimentConfig& cfg) {
  validate(cfg);
  const InstanceEnsemble ensemble = make_ensemble(cfg.construction, cfg.construction_params);
  const LearnerSpec spec = make_learner(cfg.learner, ensemble);
  validate(spec);

  const std::size_t tasks = cfg.n_values.size() * cfg.trials;
  ExperimentResult result;
  result.records.resize(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      result.records[t] = run_trial(cfg, ensemble, spec, cfg.n_values[t / cfg.trials], t % cfg.trials);
    }
  };
  std::size_t workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  workers = std::min(workers, tasks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    const std::span<const TrialRecord> slice(result.records.data() + i * cfg.trials, cfg.trials);
    result.summary.push_back(summarize(cfg.n_values[i], slice, cfg.epsilon));
  }
  return result;
}

ExperimentResult complexity_curve(const ExperimentConfig& cfg) {
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i) {
    if (cfg.n_values[i] <= cfg.n_values[i - 1]) {
      throw std::domain_error("complexity_curve: n_values must be strictly increasing");
    }
  }
  return run_trials(cfg);
}

void write_trials_jsonl(std::ostream& out, std::span<const TrialRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "n,trials,completed,failures,hall_ge_eps,prob_hall_ge_eps,wilson_lo,wilson_hi,mean_hall,se_hall,"
         "hall_positive,feasible,dominance_holds,dominance_rate,relaxed,repeats\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.trials << ',' << r.completed << ',' << r.failures << ',' << r.hall_ge_eps << ','
        << fmt_double(r.prob_hall_ge_eps) << ',' << fmt_double(r.wilson_lo) << ',' << fmt_double(r.wilson_hi) << ','
        << fmt_double(r.mean_hall) << ',' << fmt_double(r.se_hall) << ',' << r.hall_positive << ',' << r.feasible
        << ',' << r.dominance_holds << ',' << fmt_double(r.dominance_rate) << ',' << r.relaxed << ',' << r.repeats
        << '\n';
  }
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& result) {
  std::filesystem::create_directories(dir / "plot");
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(dir / "trials.jsonl");
    write_trials_jsonl(f, result.records);
  }
  {
    auto f = open(dir / "summary.csv");
    write_summary_csv(f, result.summary);
  }
  {
    auto f = open(dir / "config.json");
    f << to_json(cfg).dump(2) << '\n';
  }
  struct Series {
    const char* file;
    const char* column;
    double SummaryRow::*field;
  };
  for (const Series s : {Series{"prob_hall_ge_eps.dat", "prob_hall_ge_eps", &SummaryRow::prob_hall_ge_eps},
                         Series{"wilson_hi.dat", "wilson_hi", &SummaryRow::wilson_hi},
                         Series{"mean_hall.dat", "mean_hall", &SummaryRow::mean_hall},
                         Series{"dominance_rate.dat", "dominance_rate", &SummaryRow::dominance_rate}}) {
    auto f = open(dir / "plot" / s.file);
    f << "# n " << s.column << '\n';
    for (const auto& row : result.summary) f << row.n << ' ' << fmt_double(row.*(s.field)) << '\n';
  }
}

}  // namespace halluc

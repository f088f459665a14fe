// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Thresholds are pinned below as named constants; the independent oracles live
// in oracles.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "halluc/adversaries.hpp"
#include "halluc/harness.hpp"
#include "halluc/io.hpp"
#include "oracles.hpp"

using namespace halluc;

namespace {

// Criterion 1
constexpr int kC1Universes = 200;
constexpr std::size_t kC1MaxAtoms = 12;
constexpr double kC1TvTol = 1e-12;
constexpr double kC1HallEpsTol = 1e-9;
constexpr double kC1Seconds = 60.0;
// Criterion 2
constexpr int kC2Triples = 10'000;
constexpr double kC2Tol = 1e-12;
// Criterion 3
constexpr std::size_t kC3D = 8;
constexpr double kC3Eps = 0.1;
constexpr double kC3Delta = 0.1;
constexpr double kC3EpsPrime = 0.5;
constexpr std::size_t kC3Trials = 2'000;
constexpr double kC3Seconds = 600.0;
// Criterion 4
constexpr std::size_t kC4D = 32;
constexpr double kC4Eps = 0.02;
constexpr double kC4EpsPrime = 0.22;
constexpr std::size_t kC4Trials = 20'000;
constexpr double kC4Seconds = 900.0;
// Criterion 5
constexpr std::size_t kC5Rounds = 2'000;
constexpr double kC5LearnerEps = 0.1;
constexpr std::size_t kC5SampleSize = 10;
// Criterion 6
constexpr std::size_t kC6N = 20;
constexpr std::size_t kC6M = 10 * kC6N * kC6N;
constexpr std::size_t kC6AtomsPerSide = 100 * kC6M;
constexpr std::size_t kC6Draws = 10'000;
constexpr std::size_t kC6LearnerTrials = 250;
constexpr std::uint64_t kC6FixedSeeds[] = {0, 1, 2, 3, 4};
constexpr double kC6EpsGrid[] = {0.1, 0.25, 0.4};
// Criterion 7
constexpr double kC7Alphas[] = {1.0, 2.0, 5.0};
constexpr int kC7Trials = 200;
// Criterion 8
constexpr std::size_t kC8D = 64;
constexpr double kC8KlTol = 1e-12;
constexpr int kC8SplitInputs = 1'000;
constexpr double kC8SplitTol = 1e-9;
constexpr double kC8RootTol = 1e-6;
// Criterion 9
constexpr std::size_t kC9ASize = 1'000;
constexpr std::size_t kC9D = 8;
constexpr double kC9Tol = 1e-12;
// Criterion 10
constexpr std::size_t kC10Workers = 4;

constexpr std::uint64_t kBaseSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  std::string out(static_cast<std::size_t>(std::snprintf(nullptr, 0, f, args...)), '\0');
  std::snprintf(out.data(), out.size() + 1, f, args...);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Dist dense(const Universe& u, const std::vector<double>& w) { return Dist::from_dense(u, w); }

ExperimentConfig c3_config(std::size_t workers) {
  ExperimentConfig c;
  c.construction = "theorem3";
  c.construction_params = {{"d", kC3D}, {"eps_prime", kC3EpsPrime}, {"explicit_class", true}};
  c.learner.kind = LearnerKind::improper_max_info;
  c.learner.measure = InfoMeasure::out_of_sample();
  c.learner.eps = kC3Eps;
  c.n_values = {static_cast<std::size_t>(required_n(kC3D, kC3Eps, kC3Delta))};
  c.trials = kC3Trials;
  c.epsilon = kC3Eps;
  c.delta = kC3Delta;
  c.base_seed = kBaseSeed;
  c.workers = workers;
  return c;
}

std::string jsonl(const ExperimentResult& r) {
  std::ostringstream out;
  write_trials_jsonl(out, r.records);
  return out.str();
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(kBaseSeed, 1);
  double worst_tv = 0.0, worst_he = 0.0;
  std::size_t hall_eps_checks = 0;
  for (int k = 0; k < kC1Universes; ++k) {
    const std::size_t n = 1 + rng.below(kC1MaxAtoms);
    const Universe u(n);
    const auto pw = oracle::random_weights(rng, n, 0.25);
    const auto qw = oracle::random_weights(rng, n, 0.25);
    const Dist p = dense(u, pw), q = dense(u, qw);
    worst_tv = std::max(worst_tv, std::fabs(tv(p, q) - oracle::tv_by_events(pw, qw)));
    for (double eps : {0.0, rng.uniform01() * 0.5, rng.uniform01()}) {
      worst_he = std::max(worst_he, std::fabs(hall_eps(p, q, eps) - oracle::hall_eps_by_events(pw, qw, eps)));
      ++hall_eps_checks;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_tv <= kC1TvTol && worst_he <= kC1HallEpsTol && secs < kC1Seconds;
  return {pass, fmt("%d universes, %zu hall_eps checks; max |tv - oracle| = %.3g (tol %.0e), max |hall_eps - oracle| = "
                    "%.3g (tol %.0e); %.2f s (limit %.0f s)",
                    kC1Universes, hall_eps_checks, worst_tv, kC1TvTol, worst_he, kC1HallEpsTol, secs, kC1Seconds)};
}

Outcome criterion2() {
  CounterRng rng(kBaseSeed, 2);
  int violations = 0, tight = 0;
  double worst = -1.0;
  for (int k = 0; k < kC2Triples; ++k) {
    const std::size_t n = 2 + rng.below(11);
    const Universe u(n);
    auto members = oracle::random_subset(rng, n, 0.5);
    if (members.empty()) members.push_back(static_cast<Atom>(rng.below(n)));
    const EventSet t(u, members);
    const auto qt = oracle::random_weights(rng, t.size(), 0.2);
    std::vector<double> qw(n, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) qw[t.members()[i]] = qt[i];
    const Dist q = dense(u, qw);
    // p = (1-λ) q + λ r with λ <= ε gives tv(p, q) = λ tv(r, q) <= ε.
    const double eps = rng.uniform01();
    const double lambda = (k % 4 == 0) ? eps : eps * rng.uniform01();
    const Dist r = (k % 4 == 0 && t.size() < n) ? Dist::uniform(t.complement()) : oracle::random_dist(rng, u, 0.3);
    const Dist p = Dist::mixture(1.0 - lambda, q, r);
    // The mixture is formed in floating point, so tv(p, q) may exceed λ by an ulp.
    if (hall(q, t) != 0.0 || tv(p, q) > eps + kC2Tol) {
      ++violations;  // generator broke its own precondition
      continue;
    }
    const double gap = hall(p, t) - eps;
    worst = std::max(worst, gap);
    if (gap > kC2Tol) ++violations;
    if (std::fabs(gap) <= 1e-12) ++tight;
  }
  return {violations == 0, fmt("%d triples, %d violations of hall(p,T) <= eps + %.0e; max hall(p,T) - eps = %.3g; "
                               "%d triples at equality",
                               kC2Triples, violations, kC2Tol, worst, tight)};
}

Outcome criterion3(ExperimentResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = c3_config(hardware_workers());
  out = run_trials(cfg);
  const double secs = seconds_since(t0);
  const SummaryRow& row = out.summary.at(0);
  const bool pass = row.failures == 0 && row.wilson_hi <= kC3Delta && row.dominance_holds == row.feasible &&
                    secs < kC3Seconds;
  return {pass, fmt("d=%zu eps=%.2f delta=%.2f n=%zu eps'=%.2f; %zu trials (%zu failed); Pr[hall>=eps] = %zu/%zu, "
                    "Wilson 95%% upper = %.4f (limit %.2f); mean hall = %.10f; dominance %zu/%zu feasible trials; "
                    "%.1f s (limit %.0f s)",
                    kC3D, kC3Eps, kC3Delta, cfg.n_values[0], kC3EpsPrime, row.trials, row.failures, row.hall_ge_eps,
                    row.completed, row.wilson_hi, kC3Delta, row.mean_hall, row.dominance_holds, row.feasible, secs,
                    kC3Seconds)};
}

ExperimentConfig c4_config(double learner_eps) {
  ExperimentConfig c;
  c.construction = "theorem3";
  c.construction_params = {{"d", kC4D}, {"eps_prime", kC4EpsPrime}};
  c.learner.kind = LearnerKind::improper_max_info;
  c.learner.measure = InfoMeasure::out_of_sample();
  c.learner.eps = learner_eps;
  c.n_values = {static_cast<std::size_t>(std::floor(kC4D / (4.0 * kC4EpsPrime)))};
  c.trials = kC4Trials;
  c.epsilon = kC4Eps;
  c.delta = kC4Eps;
  c.base_seed = kBaseSeed + 4;
  c.workers = hardware_workers();
  return c;
}

Outcome criterion4(std::string& contrast) {
  const double bound = 3.0 * kC4EpsPrime / 16.0;
  const auto t0 = std::chrono::steady_clock::now();
  // The learner runs at budget ε' so that the faithful q is inside its
  // constraint set; this is the information-dominant learner the bound is about.
  const ExperimentConfig cfg = c4_config(kC4EpsPrime);
  const ExperimentResult r = run_trials(cfg);
  const double secs = seconds_since(t0);
  const SummaryRow& row = r.summary.at(0);
  const double threshold = bound - 3.0 * row.se_hall;
  const bool pass = row.failures == 0 && row.mean_hall >= threshold && secs < kC4Seconds;

  const ExperimentResult low = run_trials(c4_config(kC4Eps));
  const SummaryRow& lr = low.summary.at(0);
  contrast = fmt("learner budget eps=%.2f: mean hall = %.6f (SE %.2g), below 3eps'/16 = %.5f; q* feasible on %zu/%zu "
                 "trials, so the information-dominance hypothesis never applies",
                 kC4Eps, lr.mean_hall, lr.se_hall, bound, lr.feasible, lr.completed);

  return {pass, fmt("d=%zu eps'=%.2f n=%zu learner budget=%.2f; %zu trials (%zu failed); mean hall = %.6f, SE = %.3g, "
                    "threshold 3eps'/16 - 3SE = %.6f; q* feasible %zu/%zu, dominance %zu/%zu; %.1f s (limit %.0f s)",
                    kC4D, kC4EpsPrime, cfg.n_values[0], kC4EpsPrime, row.trials, row.failures, row.mean_hall,
                    row.se_hall, threshold, row.feasible, row.completed, row.dominance_holds, row.feasible, secs,
                    kC4Seconds)};
}

Outcome criterion5() {
  ExperimentConfig c;
  c.construction = "example4";
  c.learner.kind = LearnerKind::proper_max_info;
  c.learner.measure = InfoMeasure::out_of_sample();
  c.learner.eps = kC5LearnerEps;
  c.n_values = {kC5SampleSize};
  c.trials = kC5Rounds;
  c.epsilon = kC5LearnerEps;
  c.base_seed = kBaseSeed + 5;
  c.workers = hardware_workers();
  c.adversarial = true;
  const ExperimentResult r = run_trials(c);
  std::size_t bad = 0, exact = 0, relaxed = 0;
  for (const auto& rec : r.records) {
    if (!rec.completed()) continue;
    relaxed += rec.relaxed_flag;
    if (rec.hall_value >= 0.99) {
      ++bad;
      exact += rec.hall_value == 0.99;
    }
  }
  const double freq = static_cast<double>(bad) / static_cast<double>(kC5Rounds);
  const double sigma = std::sqrt(0.25 / static_cast<double>(kC5Rounds));
  const bool pass = r.summary[0].failures == 0 && freq >= 0.5 - 3.0 * sigma && exact == bad;
  return {pass, fmt("%zu rounds; hall >= 0.99 on %zu (freq %.4f, threshold 0.5 - 3 sigma = %.4f); bit-exact 0.99 on "
                    "%zu/%zu failing rounds; relaxed fallback on %zu rounds",
                    kC5Rounds, bad, freq, 0.5 - 3.0 * sigma, exact, bad, relaxed)};
}

/// Block-collapsed oracle for hall_eps(p_i, q) on a Theorem 1 instance: the
/// A_i atoms carry (q, p) = (1/(2M), 1/M), the Ã atoms (1/(2m), 0), the rest
/// (0, 0). Only A_i atoms add p-mass, so the best event takes floor(2εM) of them.
double theorem1_collapsed(double eps, std::size_t atoms_per_side) {
  const double per_atom_q = 1.0 / (2.0 * static_cast<double>(atoms_per_side));
  const double k = std::floor((eps + 1e-9) / per_atom_q);
  return std::min(k, static_cast<double>(atoms_per_side)) / static_cast<double>(atoms_per_side);
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c;
  c.construction = "theorem1";
  c.construction_params = {{"n", kC6N}, {"tilde_size", kC6M}, {"atoms_per_side", kC6AtomsPerSide}, {"branch", 1}};
  c.learner.kind = LearnerKind::fixed;
  c.n_values = {kC6N};
  c.epsilon = 0.5;
  c.workers = hardware_workers();
  c.adversarial = true;

  bool all_adverse = true;
  std::string per_learner;
  double rep_rate = 0.0;
  std::size_t repeats = 0;
  for (std::uint64_t seed : kC6FixedSeeds) {
    c.learner.fixed_choice_seed = seed;
    c.trials = seed == kC6FixedSeeds[0] ? kC6Draws : kC6LearnerTrials;
    c.base_seed = kBaseSeed + 600 + seed;
    const ExperimentResult r = run_trials(c);
    double min_hall = 1.0;
    std::size_t picked_first = 0;
    for (const auto& rec : r.records) {
      if (!rec.completed()) {
        min_hall = 0.0;
        continue;
      }
      min_hall = std::min(min_hall, rec.hall_value);
      picked_first += rec.hypothesis_index == std::optional<std::size_t>(0);
    }
    all_adverse = all_adverse && min_hall >= 0.99;
    per_learner += fmt(" seed %llu: min hall %.4f over %zu (p1 chosen %zu);", static_cast<unsigned long long>(seed),
                       min_hall, r.records.size(), picked_first);
    if (seed == kC6FixedSeeds[0]) {
      repeats = r.summary[0].repeats;
      rep_rate = static_cast<double>(repeats) / static_cast<double>(kC6Draws);
    }
  }
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(kC6Draws));
  const bool birthday = rep_rate <= 0.25 + 3.0 * sigma;

  bool relative_ok = true;
  std::string rel;
  for (int branch : {1, 2}) {
    const InstanceEnsemble e = theorem1_ensemble(kC6N, kC6AtomsPerSide, kC6M, branch);
    const HardInstance inst = e.draw(kBaseSeed + static_cast<std::uint64_t>(branch));
    const Dist& home = e.hypotheses[static_cast<std::size_t>(branch - 1)];
    for (double eps : kC6EpsGrid) {
      const double v = hall_eps(home, inst.q, eps);
      const double o = theorem1_collapsed(eps, kC6AtomsPerSide);
      relative_ok = relative_ok && v <= 2.0 * eps && std::fabs(v - o) <= 1e-12;
      rel += fmt(" b%d eps=%.2f: %.6f (oracle %.6f);", branch, eps, v, o);
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = birthday && all_adverse && relative_ok;
  return {pass, fmt("n=%zu m=%zu M=%zu; repetition rate %zu/%zu = %.4f (limit 0.25 + 3 sigma = %.4f); adverse branch:%s "
                    "hall_eps(p_i,q) <= 2eps:%s %.1f s",
                    kC6N, kC6M, kC6AtomsPerSide, repeats, kC6Draws, rep_rate, 0.25 + 3.0 * sigma, per_learner.c_str(),
                    rel.c_str(), secs)};
}

Outcome criterion7() {
  CounterRng rng(kBaseSeed, 7);
  bool pass = true;
  std::string detail;
  for (double alpha : kC7Alphas) {
    const double eps = 1.0 / (2.0 * alpha + 1.0);
    const double required = 1.0 - 2.0 * alpha * eps;
    double min_excess = 1e300;
    for (int k = 0; k < kC7Trials; ++k) {
      const std::array<std::size_t, 3> sizes{1 + rng.below(20), 1 + rng.below(20), 1 + rng.below(20)};
      const InstanceEnsemble e = example1(sizes);
      LearnerSpec spec;
      spec.kind = LearnerKind::fixed;
      spec.hypotheses = e.hypotheses;
      spec.fixed_choice_seed = rng();
      const HardInstance inst = e.draw(rng());
      const Sample x = sample_from(inst.q, 1 + rng.below(50), rng());
      const LearnedModel m = learn(spec, x);
      const HardInstance adverse = e.respond(*m.hypothesis_index, x);
      const AgnosticExcess ex = agnostic_excess(m.dist, e.hypotheses, HallTarget{adverse.truth});
      min_excess = std::min(min_excess, ex.excess(alpha));
    }
    // At ε = 1/(2α+1) the requirement 1 - 2αε equals ε exactly.
    pass = pass && min_excess >= required && required >= eps - 1e-15;
    detail += fmt(" alpha=%g eps=1/%g: min excess %.6f >= 1-2*alpha*eps = %.6f;", alpha, 2 * alpha + 1, min_excess,
                  required);
  }
  return {pass, fmt("%d adversarial rounds per alpha;%s", kC7Trials, detail.c_str())};
}

Outcome criterion8() {
  bool pass = true;
  std::string detail;

  const PackingResult pk = packing_construct(kC8D, kBaseSeed);
  const Universe& u = pk.cls.universe();
  const Dist bar = Dist::uniform(EventSet::all(u));
  std::size_t max_inter = 0;
  double worst_kl = 0.0;
  bool sizes_ok = true;
  for (std::size_t i = 0; i < pk.cls.size(); ++i) {
    sizes_ok = sizes_ok && pk.cls[i].size() == kC8D / 2;
    worst_kl = std::max(worst_kl, std::fabs(kl(Dist::uniform(pk.cls[i]), bar) - std::numbers::ln2));
    for (std::size_t j = i + 1; j < pk.cls.size(); ++j) max_inter = std::max(max_inter, pk.cls[i].intersection_size(pk.cls[j]));
  }
  const bool packing_ok = pk.achieved_size >= 4 && max_inter <= kC8D / 4 && sizes_ok && worst_kl <= kC8KlTol;
  pass = pass && packing_ok;
  detail += fmt(" packing(d=%zu): %zu sets (target %.2f) after %zu draws, max intersection %zu (limit %zu), "
                "max |kl - log 2| = %.2g;",
                kC8D, pk.achieved_size, pk.target_size, pk.tries, max_inter, kC8D / 4, worst_kl);

  CounterRng rng(kBaseSeed, 8);
  double worst_split = 0.0;
  for (int k = 0; k < kC8SplitInputs; ++k) {
    const std::size_t n = 3 + rng.below(40);
    const Universe un(n);
    const auto w = oracle::random_weights(rng, n, 0.3);
    std::array<std::vector<Atom>, 3> parts;
    for (Atom a = 0; a < n; ++a) parts[rng.below(3)].push_back(a);
    const double v = entropy_split_bound(dense(un, w), EventSet(un, parts[0]), EventSet(un, parts[1]),
                                         EventSet(un, parts[2]));
    worst_split = std::max(worst_split, std::fabs(v - oracle::shannon_dense(w)));
  }
  pass = pass && worst_split <= kC8SplitTol;
  detail += fmt(" entropy split: %d inputs, max |split - H| = %.2g (tol %.0e);", kC8SplitInputs, worst_split, kC8SplitTol);

  const double root_bits = entropy_threshold(LogBase::bits, kC8RootTol);
  const double root_nats = entropy_threshold(LogBase::nats, kC8RootTol);
  pass = pass && root_bits >= 0.07 && root_bits <= 0.10;
  detail += fmt(" root of h(2e)+5e=1: bits %.6f in [0.07, 0.10], nats %.6f (recorded only);", root_bits, root_nats);

  const std::uint64_t big = std::uint64_t{1} << 40;
  const double f0 = fano_bound(0, big, std::numbers::ln2);
  const double f0_expected = 1.0 - std::log(2.0) / std::log(static_cast<double>(big));
  const double f_clamp = fano_bound(40, big, std::numbers::ln2);
  const double f_d64 = fano_bound(1, 4, std::numbers::ln2);
  const bool fano_ok = f0 == f0_expected && f_clamp == 0.0 && f_d64 == 0.0;
  pass = pass && fano_ok;
  detail += fmt(" fano: n=0 -> %.6f (expected %.6f), n=log|C|/log2 -> %g, |C|=4 n=1 -> %g; at achieved |C|=%zu n=1 -> %.4f",
                f0, f0_expected, f_clamp, f_d64, pk.achieved_size, fano_bound(1, pk.achieved_size, std::numbers::ln2));
  return {pass, detail};
}

Outcome criterion9() {
  const InstanceEnsemble e = example5(kC9D, kC9ASize);
  const auto& cls = std::get<ConceptClass>(*e.prior);
  const Dist& strategy = e.hypotheses.at(0);
  double worst_hall = 0.0;
  for (const auto& t : cls.concepts()) worst_hall = std::max(worst_hall, hall(strategy, t));
  const HardInstance inst = e.draw(kBaseSeed);
  double worst_oos = 0.0;
  double last = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Sample x = sample_from(inst.q, 1, kBaseSeed + s);
    last = out_of_sample_mass(strategy, x);
    worst_oos = std::max(worst_oos, std::fabs(last - 0.999));
  }
  const bool pass = worst_hall == 0.0 && worst_oos <= kC9Tol;
  return {pass, fmt("|A|=%zu d=%zu: max hall over %zu concepts = %g; out-of-sample mass at n=1 = %.15f "
                    "(max |v - 0.999| over 100 samples = %.2g)",
                    kC9ASize, kC9D, cls.size(), worst_hall, last, worst_oos)};
}

Outcome criterion10(const ExperimentResult& first) {
  const ExperimentConfig same = c3_config(hardware_workers());
  const ExperimentResult second = run_trials(same);
  const auto dir = std::filesystem::temp_directory_path() / "halluc_acceptance";
  std::filesystem::remove_all(dir);
  write_outputs(dir / "a", same, first);
  write_outputs(dir / "b", same, second);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string ja = slurp(dir / "a" / "trials.jsonl"), jb = slurp(dir / "b" / "trials.jsonl");
  const bool bytes_equal = !ja.empty() && ja == jb && slurp(dir / "a" / "summary.csv") == slurp(dir / "b" / "summary.csv");
  std::filesystem::remove_all(dir);

  // Compare explicit counts too, so the check means something on a single-core host.
  const std::string reference = jsonl(first);
  const bool workers_equal =
      jsonl(run_trials(c3_config(1))) == reference && jsonl(run_trials(c3_config(kC10Workers))) == reference;
  return {bytes_equal && workers_equal,
          fmt("criterion-3 config rerun: trials.jsonl %zu bytes, byte-identical %s; workers %zu vs 1 vs %zu: records "
              "identical %s",
              ja.size(), bytes_equal ? "yes" : "no", hardware_workers(), kC10Workers, workers_equal ? "yes" : "no")};
}

void report(int id, const char* name, const Outcome& o, bool& all) {
  std::printf("[%s] criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  all = all && o.pass;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  bool all = true;
  ExperimentResult c3;
  std::string contrast;
  report(1, "measure oracles", guarded(criterion1), all);
  report(2, "realizable learning bounds hallucination", guarded(criterion2), all);
  report(3, "upper bound at required_n", guarded([&] { return criterion3(c3); }), all);
  report(4, "lower bound 3eps'/16", guarded([&] { return criterion4(contrast); }), all);
  if (!contrast.empty()) std::printf("       contrast (not a criterion): %s\n", contrast.c_str());
  report(5, "proper learner failure on the shared-atom pair", guarded(criterion5), all);
  report(6, "birthday bound and adverse branch", guarded(criterion6), all);
  report(7, "agnostic excess", guarded(criterion7), all);
  report(8, "packing, entropy split, threshold, Fano", guarded(criterion8), all);
  report(9, "large-A sanity", guarded(criterion9), all);
  report(10, "reproducibility", guarded([&] { return criterion10(c3); }), all);
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}

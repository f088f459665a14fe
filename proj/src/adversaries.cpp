#include "halluc/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "halluc/rng.hpp"

namespace halluc {

HardInstance::HardInstance(Dist q_, Concept truth_, nlohmann::ordered_json meta_)
    : q(std::move(q_)), truth(std::move(truth_)), meta(std::move(meta_)) {
  require_same_universe(q.universe(), truth.universe(), "HardInstance");
  if (hall(q, truth) != 0.0) throw std::logic_error("HardInstance: demonstrator is not faithful to the facts set");
}

namespace {

constexpr std::uint64_t kTheorem1Stream = 0x7468316dULL;
constexpr std::uint64_t kTheorem3Stream = 0x7468336dULL;
constexpr std::uint64_t kAppendixStream = 0x6170706eULL;

std::vector<Atom> iota_atoms(std::size_t first, std::size_t count) {
  std::vector<Atom> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<Atom>(first + i);
  return out;
}

int check_branch(int i, const char* where) {
  if (i != 1 && i != 2) throw std::domain_error(std::string(where) + ": branch / output index must be 1 or 2");
  return i;
}

}  // namespace

// ---------------------------------------------------------------------------

InstanceEnsemble example1(std::array<std::size_t, 3> sizes, int learner_output) {
  check_branch(learner_output, "example1");
  const auto [a, a1, a2] = sizes;
  if (a == 0 || a1 == 0 || a2 == 0) throw std::domain_error("example1: block sizes must be positive");
  const Universe u(a + a1 + a2);
  const EventSet A(u, iota_atoms(0, a));
  const std::array<EventSet, 2> side{EventSet(u, iota_atoms(a, a1)), EventSet(u, iota_atoms(a + a1, a2))};
  const Dist q = Dist::uniform(A);

  InstanceEnsemble e;
  e.name = "example1";
  e.params = {{"sizes", {a, a1, a2}}, {"learner_output", learner_output}};
  e.hypotheses = {Dist::uniform(side[0]), Dist::uniform(side[1])};
  e.prior = ConceptPrior(ConceptClass(u, {A.united(side[0]), A.united(side[1])}, "example1"));
  auto make = [=](std::size_t chosen) {
    // Output p_{chosen+1} faces T = A ∪ A_{other}.
    const std::size_t other = 1 - chosen;
    nlohmann::ordered_json meta = {{"construction", "example1"},
                                   {"sizes", {a, a1, a2}},
                                   {"learner_output", chosen + 1},
                                   {"facts", "A+A" + std::to_string(other + 1)}};
    return HardInstance(q, A.united(side[other]), std::move(meta));
  };
  e.draw = [=](std::uint64_t) { return make(static_cast<std::size_t>(learner_output - 1)); };
  e.respond = [=](std::size_t chosen, const Sample&) {
    if (chosen > 1) throw std::domain_error("example1: hypothesis index out of range");
    return make(chosen);
  };
  return e;
}

HardInstance example1_instance(std::array<std::size_t, 3> sizes, int learner_output) {
  return example1(sizes, learner_output).draw(0);
}

// ---------------------------------------------------------------------------

namespace {

struct Theorem1Geometry {
  std::size_t n, M, m;
  Universe u;
  std::array<EventSet, 2> block;
};

HardInstance theorem1_from_tilde(const Theorem1Geometry& g, int branch, std::vector<Atom> tilde, std::uint64_t seed,
                                 const char* origin) {
  const std::size_t home = static_cast<std::size_t>(branch - 1);
  const EventSet tilde_set(g.u, std::move(tilde));
  std::vector<WeightedAtom> entries;
  entries.reserve(g.M + g.m);
  const double w_home = 0.5 / static_cast<double>(g.M);
  const double w_tilde = 0.5 / static_cast<double>(g.m);
  // Ã lies in the other block; emit the lower block first so entries arrive sorted.
  auto push_home = [&] { for (Atom x : g.block[home].members()) entries.push_back({x, w_home}); };
  auto push_tilde = [&] { for (Atom x : tilde_set.members()) entries.push_back({x, w_tilde}); };
  if (home == 0) {
    push_home();
    push_tilde();
  } else {
    push_tilde();
    push_home();
  }
  nlohmann::ordered_json meta = {{"construction", "theorem1"},
                                 {"n", g.n},
                                 {"atoms_per_side", g.M},
                                 {"tilde_size", g.m},
                                 {"branch", branch},
                                 {"seed", seed},
                                 {"origin", origin},
                                 {"discretization_gap", static_cast<double>(g.m) / static_cast<double>(g.M)}};
  return HardInstance(Dist(g.u, std::move(entries)), g.block[home].united(tilde_set), std::move(meta));
}

}  // namespace

InstanceEnsemble theorem1_ensemble(std::size_t n, std::size_t atoms_per_side, std::size_t tilde_size, int branch) {
  check_branch(branch, "theorem1_ensemble");
  if (n == 0) throw std::domain_error("theorem1_ensemble: n must be positive");
  if (tilde_size < 2 * n * n) throw std::domain_error("theorem1_ensemble: requires tilde_size >= 2 n^2");
  if (atoms_per_side < 100 * tilde_size) throw std::domain_error("theorem1_ensemble: requires atoms_per_side >= 100 tilde_size");
  const Universe u(2 * atoms_per_side);
  const auto side = static_cast<Atom>(atoms_per_side);
  auto g = std::make_shared<const Theorem1Geometry>(Theorem1Geometry{
      n, atoms_per_side, tilde_size, u, {EventSet::range(u, 0, side), EventSet::range(u, side, 2 * side)}});

  InstanceEnsemble e;
  e.name = "theorem1";
  e.params = {{"n", n}, {"atoms_per_side", atoms_per_side}, {"tilde_size", tilde_size}, {"branch", branch}};
  e.hypotheses = {Dist::uniform(g->block[0]), Dist::uniform(g->block[1])};
  e.draw = [g, branch](std::uint64_t seed) {
    const std::size_t away = static_cast<std::size_t>(2 - branch);
    CounterRng rng(seed, kTheorem1Stream);
    const Atom offset = static_cast<Atom>(away * g->M);
    std::vector<Atom> tilde;
    tilde.reserve(g->m);
    for (auto v : rng.distinct(g->M, g->m)) tilde.push_back(offset + static_cast<Atom>(v));
    return theorem1_from_tilde(*g, branch, std::move(tilde), seed, "draw");
  };
  e.respond = [g](std::size_t chosen, const Sample& sample) {
    if (chosen > 1) throw std::domain_error("theorem1: hypothesis index out of range");
    // Output p_j is worst on the branch whose Ã lies inside A_j; Ã keeps the
    // sample's points there so the sample stays possible.
    const int adverse = static_cast<int>(2 - chosen);
    const Atom lo = static_cast<Atom>(chosen * g->M);
    const Atom hi = static_cast<Atom>(lo + g->M);
    std::set<Atom> tilde;
    for (Atom x : sample.points()) {
      if (x >= lo && x < hi) tilde.insert(x);
    }
    std::uint64_t seed = hash_words({sample.seed(), chosen, sample.size()});
    for (Atom x : tilde) seed = mix64(seed ^ x);
    if (tilde.size() > g->m) throw std::domain_error("theorem1: sample has more distinct points than tilde_size");
    CounterRng rng(seed, kTheorem1Stream);
    while (tilde.size() < g->m) tilde.insert(lo + static_cast<Atom>(rng.below(g->M)));
    return theorem1_from_tilde(*g, adverse, std::vector<Atom>(tilde.begin(), tilde.end()), seed, "response");
  };
  return e;
}

HardInstance theorem1_instance(std::size_t n, std::size_t atoms_per_side, std::size_t tilde_size, int branch,
                               std::uint64_t seed) {
  return theorem1_ensemble(n, atoms_per_side, tilde_size, branch).draw(seed);
}

// ---------------------------------------------------------------------------

InstanceEnsemble example4() {
  const Universe u(199);
  const std::array<EventSet, 2> side{EventSet::range(u, 0, 100), EventSet::range(u, 99, 199)};
  const Dist q = Dist::point_mass(u, kExample4Shared);
  InstanceEnsemble e;
  e.name = "example4";
  e.params = nlohmann::ordered_json::object();
  e.prior = ConceptPrior(ConceptClass(u, {side[0], side[1]}, "example4"));
  e.hypotheses = {Dist::uniform(side[0]), Dist::uniform(side[1])};
  auto make = [=](std::size_t facts) {
    nlohmann::ordered_json meta = {{"construction", "example4"}, {"facts", "A" + std::to_string(facts + 1)}};
    return HardInstance(q, side[facts], std::move(meta));
  };
  e.draw = [=](std::uint64_t) { return make(0); };
  e.respond = [=](std::size_t chosen, const Sample&) {
    if (chosen > 1) throw std::domain_error("example4: hypothesis index out of range");
    return make(1 - chosen);
  };
  return e;
}

// ---------------------------------------------------------------------------

InstanceEnsemble theorem3_ensemble(std::size_t d, double eps_prime, bool explicit_class) {
  if (d < 2) throw std::domain_error("theorem3_ensemble: d must be at least 2");
  if (!(eps_prime > 0.0 && eps_prime < 1.0)) throw std::domain_error("theorem3_ensemble: eps_prime must lie in (0,1)");
  const Universe u(2 * d + 1);
  const AnchoredFamily family(EventSet(u, {kTheorem3Anchor}), d + 1, "theorem3");
  InstanceEnsemble e;
  e.name = "theorem3";
  e.params = {{"d", d}, {"eps_prime", eps_prime}, {"explicit_class", explicit_class}};
  e.prior = explicit_class ? ConceptPrior(family.enumerate()) : ConceptPrior(family);
  e.draw = [u, d, eps_prime](std::uint64_t seed) {
    CounterRng rng(seed, kTheorem3Stream);
    std::vector<Atom> members{kTheorem3Anchor};
    std::vector<WeightedAtom> entries{{kTheorem3Anchor, 1.0 - eps_prime}};
    const double w = eps_prime / static_cast<double>(d);
    for (auto v : rng.distinct(2 * d, d)) {
      members.push_back(static_cast<Atom>(v + 1));
      entries.push_back({static_cast<Atom>(v + 1), w});
    }
    nlohmann::ordered_json meta = {{"construction", "theorem3"}, {"d", d}, {"eps_prime", eps_prime}, {"seed", seed}};
    return HardInstance(Dist(u, std::move(entries)), Concept(u, std::move(members)), std::move(meta));
  };
  return e;
}

// ---------------------------------------------------------------------------

InstanceEnsemble example5(std::size_t d, std::size_t a_size) {
  if (d == 0) throw std::domain_error("example5: d must be positive");
  if (d > 16) throw std::domain_error("example5: d above the enumeration cap of 16");
  if (a_size < 10 * d) throw std::domain_error("example5: requires a_size >= 10 d");
  const Universe u(a_size + d);
  const EventSet A = EventSet::range(u, 0, static_cast<Atom>(a_size));
  std::vector<Concept> concepts;
  concepts.reserve(std::size_t{1} << d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<Atom> atoms(A.members().begin(), A.members().end());
    for (std::size_t i = 0; i < d; ++i) {
      if (mask & (std::size_t{1} << i)) atoms.push_back(static_cast<Atom>(a_size + i));
    }
    concepts.emplace_back(u, std::move(atoms));
  }
  const Dist q = Dist::uniform(A);
  InstanceEnsemble e;
  e.name = "example5";
  e.params = {{"d", d}, {"a_size", a_size}};
  e.prior = ConceptPrior(ConceptClass(u, std::move(concepts), "example5"));
  e.hypotheses = {q};
  e.draw = [=](std::uint64_t) {
    return HardInstance(q, A, nlohmann::ordered_json{{"construction", "example5"}, {"d", d}, {"a_size", a_size}});
  };
  return e;
}

// ---------------------------------------------------------------------------

InstanceEnsemble appendix_ensemble(std::size_t d, std::uint64_t packing_seed) {
  if (d < 8 || d % 4 != 0) throw std::domain_error("appendix_ensemble: d must be at least 8 and divisible by 4");
  auto packing = std::make_shared<PackingResult>(packing_construct(d, packing_seed));
  InstanceEnsemble e;
  e.name = "appendix";
  e.params = {{"d", d},
              {"packing_seed", packing_seed},
              {"packing_tries", packing->tries},
              {"packing_size", packing->achieved_size},
              {"packing_target", packing->target_size}};
  e.prior = ConceptPrior(packing->cls);
  e.draw = [packing, d](std::uint64_t seed) {
    CounterRng rng(seed, kAppendixStream);
    const std::size_t index = static_cast<std::size_t>(rng.below(packing->cls.size()));
    const Concept& t = packing->cls[index];
    nlohmann::ordered_json meta = {{"construction", "appendix"}, {"d", d}, {"seed", seed}, {"packing_index", index}};
    return HardInstance(Dist::uniform(t), t, std::move(meta));
  };
  return e;
}

double fano_bound(std::uint64_t n, std::uint64_t class_size, double kl_sup) {
  if (class_size < 2) throw std::domain_error("fano_bound: class_size must be at least 2");
  if (!(kl_sup >= 0.0)) throw std::domain_error("fano_bound: kl_sup must be nonnegative");
  const double v = 1.0 - (static_cast<double>(n) * kl_sup + std::log(2.0)) / std::log(static_cast<double>(class_size));
  return std::max(0.0, v);
}

// ---------------------------------------------------------------------------

InstanceEnsemble make_ensemble(const std::string& name, const nlohmann::json& params) {
  auto get = [&](const char* key, auto fallback) {
    return params.contains(key) ? params.at(key).get<decltype(fallback)>() : fallback;
  };
  if (name == "example1") {
    const auto sizes = get("sizes", std::array<std::size_t, 3>{10, 10, 10});
    return example1(sizes, get("learner_output", 1));
  }
  if (name == "theorem1") {
    const auto n = params.at("n").get<std::size_t>();
    const auto m = get("tilde_size", 10 * n * n);
    return theorem1_ensemble(n, get("atoms_per_side", 100 * m), m, get("branch", 1));
  }
  if (name == "example4") return example4();
  if (name == "theorem3") {
    return theorem3_ensemble(params.at("d").get<std::size_t>(), params.at("eps_prime").get<double>(),
                             get("explicit_class", false));
  }
  if (name == "example5") return example5(params.at("d").get<std::size_t>(), params.at("a_size").get<std::size_t>());
  if (name == "appendix") return appendix_ensemble(params.at("d").get<std::size_t>(), get("packing_seed", std::uint64_t{0}));
  throw std::domain_error("unknown construction '" + name + "'");
}

}  // namespace halluc

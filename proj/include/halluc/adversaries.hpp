#pragma once

// Hard instances and lower-bound ensembles. Every instance is faithful:
// hall(q, T) == 0 is checked when it is built.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "halluc/concepts.hpp"
#include "halluc/measure.hpp"

namespace halluc {

struct HardInstance {
  /// Throws std::logic_error unless hall(q, truth) is exactly zero.
  HardInstance(Dist q, Concept truth, nlohmann::ordered_json meta);

  Dist q;
  Concept truth;
  nlohmann::ordered_json meta;
};

/// A seeded family of instances together with the hypothesis list and
/// concept prior that learners facing it use.
struct InstanceEnsemble {
  std::string name;
  nlohmann::ordered_json params;
  std::optional<ConceptPrior> prior;
  std::vector<Dist> hypotheses;
  std::function<HardInstance(std::uint64_t seed)> draw;
  /// Adversary moving second: given the index of the hypothesis a learner
  /// returned and the sample it saw, an instance consistent with that sample
  /// on which the choice is bad. Empty for non-adaptive constructions.
  std::function<HardInstance(std::size_t chosen, const Sample& sample)> respond;
};

/// Disjoint blocks A = [0,a), A1 = [a, a+a1), A2 = [a+a1, a+a1+a2).
/// q = Uni(A), P = {Uni(A1), Uni(A2)}, T = A ∪ A_{3-i} for learner output i in {1,2}.
InstanceEnsemble example1(std::array<std::size_t, 3> sizes, int learner_output = 1);
HardInstance example1_instance(std::array<std::size_t, 3> sizes, int learner_output);

/// Blocks A1 = [0,M), A2 = [M,2M). Branch i draws Ã ⊂ A_{3-i} of size m
/// without replacement, T = A_i ∪ Ã, q = ½Uni(A_i) + ½Uni(Ã).
/// Requires n >= 1, m >= 2n², M >= 100m.
InstanceEnsemble theorem1_ensemble(std::size_t n, std::size_t atoms_per_side, std::size_t tilde_size, int branch);
HardInstance theorem1_instance(std::size_t n, std::size_t atoms_per_side, std::size_t tilde_size, int branch,
                               std::uint64_t seed);

/// 199 atoms; A1 = [0,100), A2 = [99,199) share x0 = 99; q = δ_{x0};
/// C = {A1, A2}; P = {Uni(A1), Uni(A2)}. The response to output i is A_{3-i}.
InstanceEnsemble example4();
constexpr Atom kExample4Shared = 99;

/// Universe of 2d+1 atoms with x0 = 0. T is x0 plus d uniformly drawn atoms;
/// q = (1-ε')δ_{x0} + ε' Uni(T \ {x0}). The prior is the family of all such T,
/// enumerated explicitly when `explicit_class` is set.
InstanceEnsemble theorem3_ensemble(std::size_t d, double eps_prime, bool explicit_class = false);
constexpr Atom kTheorem3Anchor = 0;

/// X = A ∪ D with A = [0,a_size), D = [a_size, a_size+d). C holds A ∪ B for
/// every B ⊆ D; q = Uni(A) = truth's uniform; P = {Uni(A)}. a_size >= 10d, d <= 16.
InstanceEnsemble example5(std::size_t d, std::size_t a_size);

/// Packing class over [d]; each draw picks T uniformly and sets q_T = Uni(T).
InstanceEnsemble appendix_ensemble(std::size_t d, std::uint64_t packing_seed);

/// max(0, 1 - (n kl_sup + log 2) / log class_size). class_size >= 2, kl_sup >= 0.
double fano_bound(std::uint64_t n, std::uint64_t class_size, double kl_sup);

/// Builds a construction by name ("example1", "theorem1", "example4",
/// "theorem3", "example5", "appendix") from a JSON parameter object.
InstanceEnsemble make_ensemble(const std::string& name, const nlohmann::json& params);

}  // namespace halluc

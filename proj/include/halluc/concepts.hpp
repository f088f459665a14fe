#pragma once

// Concept classes (candidate facts sets), version spaces, VC dimension,
// informativeness neighborhoods and the packing construction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "halluc/measure.hpp"

namespace halluc {

/// Explicit finite concept class. Order is the canonical tie-breaking order.
class ConceptClass {
 public:
  /// Rejects duplicate member sets and concepts from another universe.
  ConceptClass(Universe universe, std::vector<Concept> concepts, std::string name = "");

  static ConceptClass power_set(const Universe& universe, std::string name = "power_set");

  const Universe& universe() const { return universe_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return concepts_.size(); }
  bool empty() const { return concepts_.empty(); }
  const Concept& operator[](std::size_t i) const { return concepts_[i]; }

 private:
  Universe universe_;
  std::vector<Concept> concepts_;
  std::string name_;
};

/// Implicit class {T : anchors ⊆ T, |T| = concept_size}. Closed under taking
/// version spaces, which makes it usable where the explicit enumeration would
/// be astronomically large (x0 plus any d of 2d atoms at d = 32).
class AnchoredFamily {
 public:
  AnchoredFamily(EventSet anchors, std::size_t concept_size, std::string name = "");

  const Universe& universe() const { return anchors_.universe(); }
  const EventSet& anchors() const { return anchors_; }
  std::size_t concept_size() const { return concept_size_; }
  const std::string& name() const { return name_; }

  /// Atoms outside the anchors; complements X \ T range over subsets of these.
  EventSet free_atoms() const { return anchors_.complement(); }
  /// |X \ T| for every member T.
  std::size_t complement_size() const { return universe().size() - concept_size_; }
  bool empty() const { return anchors_.size() > concept_size_ || concept_size_ > universe().size(); }
  /// Number of members, saturating at UINT64_MAX.
  std::uint64_t count() const;
  bool contains(const Concept& t) const;
  /// Explicit enumeration in lexicographic order; throws if count() > limit.
  ConceptClass enumerate(std::size_t limit = 1'000'000) const;

 private:
  EventSet anchors_;
  std::size_t concept_size_;
  std::string name_;
};

/// Either kind of concept prior a learner can carry.
using ConceptPrior = std::variant<ConceptClass, AnchoredFamily>;

std::uint64_t prior_size(const ConceptPrior& prior);
const Universe& prior_universe(const ConceptPrior& prior);
bool prior_contains(const ConceptPrior& prior, const Concept& t);
/// max over T in the prior of hall(p, T); 0 for an empty prior.
double max_hall(const ConceptPrior& prior, const Dist& p);

/// {T in C : every sample point lies in T}, canonical order preserved.
ConceptClass version_space(const ConceptClass& cls, const Sample& sample);
AnchoredFamily version_space(const AnchoredFamily& family, const Sample& sample);
ConceptPrior version_space(const ConceptPrior& prior, const Sample& sample);

/// True iff {T ∩ S : T in C} realizes all 2^|S| patterns. |S| <= 20.
bool shatters(const ConceptClass& cls, const EventSet& set);

struct VcResult {
  std::size_t dimension = 0;
  /// Set when a set of size `cap` is shattered and larger sizes were not examined.
  bool at_least = false;
  /// A shattered set of size `dimension` (lexicographically first among the
  /// distinguishing atoms).
  std::vector<Atom> witness;
};

/// Largest k <= cap with a shattered k-set. Sizes ascend; k-subsets are
/// visited in lexicographic order. Atoms with constant membership, and all but
/// the lowest-index atom of each group with identical membership, cannot
/// belong to a shattered set of size >= 2 and are skipped.
VcResult vc_dimension(const ConceptClass& cls, std::size_t cap);

/// {T in C : hall(q, T) <= xi}.
ConceptClass neighborhood(const ConceptClass& cls, const Dist& q, double xi);

struct SufficiencyResult {
  double value = 0.0;
  bool empty_neighborhood = false;
  std::size_t best_index = 0;  ///< index in P attaining the min
};

/// min over p in P of max over T in neighborhood(C, q, xi) of hall(p, T).
/// An empty neighborhood yields 0 and sets the flag.
SufficiencyResult sufficiency_value(const ConceptClass& cls, std::span<const Dist> hypotheses,
                                    const Dist& q, double xi);

/// Tabulated ξ(ε) for the sufficient-informativeness condition.
class InformativenessProfile {
 public:
  explicit InformativenessProfile(std::vector<std::pair<double, double>> table);
  const std::vector<std::pair<double, double>>& table() const { return table_; }
  /// Step lookup: ξ at the largest tabulated ε <= eps.
  double xi(double eps) const;

 private:
  std::vector<std::pair<double, double>> table_;
};

/// Checks the condition row by row: sufficiency_value(C, P, q, ξ(ε)) <= ε for
/// every tabulated ε. Returns the first failing ε, if any.
std::optional<double> first_uninformative_eps(const ConceptClass& cls, std::span<const Dist> hypotheses,
                                              const Dist& q, const InformativenessProfile& profile);

struct PackingResult {
  ConceptClass cls;
  std::uint64_t seed;
  std::size_t tries;          ///< total draws
  std::size_t achieved_size;
  double target_size;         ///< sqrt(1/(4d)) * e^(d/16)
};

/// Rejection-sampled family of d/2-subsets of [d] with pairwise intersections
/// <= d/4. Stops after `max_tries` consecutive rejections. d >= 4, d % 4 == 0.
PackingResult packing_construct(std::size_t d, std::uint64_t seed, std::size_t max_tries = 10'000);

/// Σ_i p[A_i] log(1/p[A_i]) + p[A_i] H(p | A_i) for a partition A1, A2, A3 of
/// the universe. Throws if the sets do not partition it or if the result
/// disagrees with H(p) by more than 1e-9.
double entropy_split_bound(const Dist& p, const EventSet& a1, const EventSet& a2, const EventSet& a3);

}  // namespace halluc

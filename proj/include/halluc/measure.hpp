#pragma once

// Distributions over a finite universe and the scalar measures defined on them:
// hallucination rate, relative hallucination rate, total variation, KL,
// information measures and smoothness.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace halluc {

using Atom = std::uint32_t;

/// Finite instance space. Atoms are 0..size-1. Copies share storage.
class Universe {
 public:
  explicit Universe(std::size_t size, std::vector<std::string> labels = {});

  std::size_t size() const { return data_->size; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  bool contains(Atom a) const { return a < data_->size; }

  friend bool operator==(const Universe& a, const Universe& b);

 private:
  struct Data {
    std::size_t size;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Data> data_;
};

/// Throws std::domain_error unless both universes are equal.
void require_same_universe(const Universe& a, const Universe& b, const char* where);

/// A subset of the universe, stored as sorted distinct atoms.
class EventSet {
 public:
  EventSet(Universe universe, std::vector<Atom> members);

  static EventSet empty(const Universe& universe);
  static EventSet all(const Universe& universe);
  /// Atoms first, first+1, ..., last-1.
  static EventSet range(const Universe& universe, Atom first, Atom last);

  const Universe& universe() const { return universe_; }
  std::span<const Atom> members() const { return *members_; }
  std::size_t size() const { return members_->size(); }
  bool is_empty() const { return members_->empty(); }
  bool contains(Atom a) const;
  bool includes(const EventSet& other) const;

  EventSet complement() const;
  EventSet united(const EventSet& other) const;
  EventSet intersected(const EventSet& other) const;
  std::size_t intersection_size(const EventSet& other) const;

  friend bool operator==(const EventSet& a, const EventSet& b);

 private:
  Universe universe_;
  std::shared_ptr<const std::vector<Atom>> members_;
};

/// A candidate facts set T. Semantically just a subset of the universe.
using Concept = EventSet;

struct WeightedAtom {
  Atom atom;
  double weight;
  friend bool operator==(const WeightedAtom&, const WeightedAtom&) = default;
};

/// Probability distribution over a finite universe, stored sparsely as the
/// atoms of positive weight in ascending atom order. Immutable; copies share
/// storage.
class Dist {
 public:
  /// Validates nonnegativity and normalization (|sum - 1| <= 1e-12). Zero
  /// weights are dropped, duplicate atoms rejected.
  Dist(Universe universe, std::vector<WeightedAtom> entries);

  static Dist from_dense(const Universe& universe, std::span<const double> weights);
  /// Clips negatives above -1e-9 to zero and divides by the total. For solver output.
  static Dist renormalized(const Universe& universe, std::vector<WeightedAtom> entries);
  static Dist uniform(const EventSet& set);
  static Dist point_mass(const Universe& universe, Atom atom);
  /// w * a + (1 - w) * b.
  static Dist mixture(double w, const Dist& a, const Dist& b);

  const Universe& universe() const { return universe_; }
  std::span<const WeightedAtom> support() const { return *entries_; }
  std::size_t support_size() const { return entries_->size(); }
  EventSet support_set() const;

  double weight(Atom a) const;
  /// p[A], compensated summation.
  double mass(const EventSet& set) const;
  std::vector<double> dense() const;

  friend bool operator==(const Dist& a, const Dist& b);

 private:
  Universe universe_;
  std::shared_ptr<const std::vector<WeightedAtom>> entries_;
};

/// An ordered training sample x^n (duplicates allowed) and the seed it was drawn with.
class Sample {
 public:
  Sample(Universe universe, std::vector<Atom> points, std::uint64_t seed = 0);

  const Universe& universe() const { return universe_; }
  std::span<const Atom> points() const { return points_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return points_.size(); }
  bool is_empty() const { return points_.empty(); }
  /// The set {x_1, ..., x_n}.
  EventSet distinct() const;
  /// This sample followed by `more`.
  Sample extended(const Sample& more) const;

 private:
  Universe universe_;
  std::vector<Atom> points_;
  std::uint64_t seed_;
};

class InfoMeasure {
 public:
  enum class Kind { shannon, renyi, out_of_sample };

  static InfoMeasure shannon() { return InfoMeasure(Kind::shannon, 0.0); }
  /// Requires alpha > 0 and |alpha - 1| > 1e-9.
  static InfoMeasure renyi(double alpha);
  static InfoMeasure out_of_sample() { return InfoMeasure(Kind::out_of_sample, 0.0); }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  /// "shannon", "out_of_sample" or "renyi:<alpha>".
  std::string name() const;
  static InfoMeasure parse(const std::string& name);

  friend bool operator==(const InfoMeasure&, const InfoMeasure&) = default;

 private:
  InfoMeasure(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
  Kind kind_;
  double alpha_;
};

/// Raised when hall_eps would need a subset search beyond the exact limits.
class ExactSearchInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hallucination rate: mass p puts outside T.
double hall(const Dist& p, const EventSet& facts);

/// Relative hallucination rate: max p[A] over events A with q[A] <= eps.
/// Exact. Atoms that q does not charge are always taken; identical (q, p)
/// atoms are grouped and the rest is a 0/1 knapsack solved by enumeration
/// (<= 25 items) or meet-in-the-middle (<= 40 items). Larger residual problems
/// throw ExactSearchInfeasible.
double hall_eps(const Dist& p, const Dist& q, double eps);

double tv(const Dist& p, const Dist& q);
/// Natural-log KL divergence; +infinity when supp(p) is not inside supp(q).
double kl(const Dist& p, const Dist& q);
double shannon_entropy(const Dist& p);
double renyi_entropy(const Dist& p, double alpha);
/// p[X \ {x_1..x_n}].
double out_of_sample_mass(const Dist& p, const Sample& sample);
double info(const InfoMeasure& measure, const Dist& p, const Sample& sample);

enum class LogBase { nats, bits };
double binary_entropy(double x, LogBase base = LogBase::nats);

/// Relative target for agnostic scoring: hall_eps(., q, eps).
struct RelativeTarget {
  Dist q;
  double eps;
};
using HallTarget = std::variant<EventSet, RelativeTarget>;

struct AgnosticExcess {
  double learned;        ///< hall-value of the learned model
  double best_in_class;  ///< min over the hypothesis class
  double excess(double alpha) const { return learned - alpha * best_in_class; }
};

AgnosticExcess agnostic_excess(const Dist& learned, std::span<const Dist> hypotheses,
                               const HallTarget& target);

/// Largest sigma with p[A] <= q[A] / sigma for all A, i.e. min over supp(p) of q[x]/p[x].
double smoothness_certificate(const Dist& p, const Dist& q);

}  // namespace halluc

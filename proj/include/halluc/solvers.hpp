#pragma once

// Exact optimization over {p in Δ(X) : hall(p, T) <= ε_T for all constrained T}.
// Linear objectives go through a dense two-phase simplex; Shannon and Rényi
// objectives through a projected Newton method on the Lagrange dual.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halluc/concepts.hpp"
#include "halluc/measure.hpp"

namespace halluc {

/// Feasible region. Each concept constraint reads p[X \ T] <= ε. An anchored
/// family constraint applies the same ε to every member at once.
class FeasibleRegion {
 public:
  explicit FeasibleRegion(Universe universe) : universe_(std::move(universe)) {}

  /// Every concept of the prior at a common ε.
  static FeasibleRegion from_prior(const ConceptPrior& prior, double eps);

  /// ε must lie in [0,1]. A repeated concept keeps the smaller ε.
  void add(const Concept& t, double eps);
  /// Empty families contribute nothing. A repeated family keeps the smaller ε.
  void add(const AnchoredFamily& family, double eps);

  const Universe& universe() const { return universe_; }
  const std::vector<std::pair<Concept, double>>& constraints() const { return constraints_; }
  const std::vector<std::pair<AnchoredFamily, double>>& families() const { return families_; }
  bool unconstrained() const { return constraints_.empty() && families_.empty(); }

 private:
  Universe universe_;
  std::vector<std::pair<Concept, double>> constraints_;
  std::vector<std::pair<AnchoredFamily, double>> families_;
};

enum class SolverStatus { optimal, infeasible, tolerance_reached };
std::string to_string(SolverStatus status);

struct SolverReport {
  std::optional<Dist> argmax;  ///< empty only when infeasible
  double value = 0.0;
  SolverStatus status = SolverStatus::infeasible;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Largest constraint excess max(0, p[X\T] - ε) over the region.
double max_violation(const Dist& p, const FeasibleRegion& region);
/// max_violation(p, region) <= 1e-9.
bool feasible(const Dist& p, const FeasibleRegion& region);

/// Maximizes Σ_x c_x p_x, c given densely over the universe. Among optimal
/// solutions the lexicographically largest (p_0, p_1, ...) is returned, so
/// mass sits on the lowest-index optimal atoms.
SolverReport maximize_linear(const FeasibleRegion& region, std::span<const double> objective);

/// Maximizes p[X \ set(s)].
SolverReport max_out_of_sample(const FeasibleRegion& region, const Sample& sample);

/// Maximizes H(p) in nats. The reported residual is the projected dual
/// gradient norm (primal infeasibility plus complementary slackness).
SolverReport max_entropy(const FeasibleRegion& region);

/// Maximizes the Rényi entropy of order alpha. For alpha < 1 this maximizes
/// Σ p^α, for alpha > 1 it minimizes Σ p^α; both are convex programs.
SolverReport max_renyi(const FeasibleRegion& region, double alpha);

/// Dispatch on the measure. The value is info(measure, argmax, sample).
SolverReport max_info(const InfoMeasure& measure, const FeasibleRegion& region, const Sample& sample);

}  // namespace halluc

#include "halluc/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "halluc/numeric.hpp"
#include "simplex.hpp"

namespace halluc {

// ---------------------------------------------------------------------------
// Region

FeasibleRegion FeasibleRegion::from_prior(const ConceptPrior& prior, double eps) {
  FeasibleRegion region(prior_universe(prior));
  if (const auto* cls = std::get_if<ConceptClass>(&prior)) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("FeasibleRegion: eps must lie in [0,1]");
    // Members of a ConceptClass are already distinct.
    region.constraints_.reserve(cls->size());
    for (const auto& t : cls->concepts()) region.constraints_.emplace_back(t, eps);
  } else {
    region.add(std::get<AnchoredFamily>(prior), eps);
  }
  return region;
}

void FeasibleRegion::add(const Concept& t, double eps) {
  require_same_universe(universe_, t.universe(), "FeasibleRegion::add");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("FeasibleRegion: eps must lie in [0,1]");
  for (auto& [existing, e] : constraints_) {
    if (existing == t) {
      e = std::min(e, eps);
      return;
    }
  }
  constraints_.emplace_back(t, eps);
}

void FeasibleRegion::add(const AnchoredFamily& family, double eps) {
  require_same_universe(universe_, family.universe(), "FeasibleRegion::add");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("FeasibleRegion: eps must lie in [0,1]");
  if (family.empty()) return;
  for (auto& [existing, e] : families_) {
    if (existing.anchors() == family.anchors() && existing.concept_size() == family.concept_size()) {
      e = std::min(e, eps);
      return;
    }
  }
  families_.emplace_back(family, eps);
}

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::optimal: return "optimal";
    case SolverStatus::infeasible: return "infeasible";
    case SolverStatus::tolerance_reached: return "tolerance_reached";
  }
  return "unknown";
}

double max_violation(const Dist& p, const FeasibleRegion& region) {
  require_same_universe(p.universe(), region.universe(), "max_violation");
  double worst = 0.0;
  for (const auto& [t, eps] : region.constraints()) worst = std::max(worst, hall(p, t) - eps);
  for (const auto& [family, eps] : region.families()) worst = std::max(worst, max_hall(family, p) - eps);
  return worst;
}

bool feasible(const Dist& p, const FeasibleRegion& region) { return max_violation(p, region) <= kCompareTol; }

namespace {

// ---------------------------------------------------------------------------
// Atom classes: atoms no constraint or objective can tell apart share one
// variable.

struct AtomClasses {
  std::vector<std::vector<Atom>> members;  ///< ascending; members[c][0] is the representative
  std::vector<std::size_t> of_atom;        ///< class id or npos for excluded atoms
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

/// `signature_of[x]` lists the ids distinguishing atom x; `singleton[x]` keeps
/// x alone; excluded atoms get no class.
AtomClasses build_classes(std::size_t n, const std::vector<std::vector<std::uint32_t>>& signature_of,
                          const std::vector<double>& key, const std::vector<char>& singleton,
                          const std::vector<char>& excluded) {
  AtomClasses out;
  out.of_atom.assign(n, AtomClasses::npos);
  std::map<std::pair<double, std::vector<std::uint32_t>>, std::size_t> index;
  for (std::size_t x = 0; x < n; ++x) {
    if (excluded[x]) continue;
    std::size_t id;
    if (singleton[x]) {
      id = out.members.size();
      out.members.emplace_back();
    } else {
      auto [it, inserted] = index.try_emplace({key[x], signature_of[x]}, out.members.size());
      if (inserted) out.members.emplace_back();
      id = it->second;
    }
    out.members[id].push_back(static_cast<Atom>(x));
    out.of_atom[x] = id;
  }
  return out;
}

/// Concept constraints that can bind: ε < 1 and a nonempty complement.
std::vector<std::size_t> binding_concepts(const FeasibleRegion& region) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < region.constraints().size(); ++j) {
    const auto& [t, eps] = region.constraints()[j];
    if (eps < 1.0 && t.size() < region.universe().size()) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> binding_families(const FeasibleRegion& region) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < region.families().size(); ++f) {
    const auto& [family, eps] = region.families()[f];
    if (eps < 1.0 && !family.empty() && family.complement_size() > 0) out.push_back(f);
  }
  return out;
}

SolverReport solve_linear(const FeasibleRegion& region, std::span<const double> objective, bool tie_break) {
  const Universe& u = region.universe();
  const std::size_t n = u.size();
  if (objective.size() != n) throw std::domain_error("maximize_linear: objective size differs from universe");

  const auto concepts = binding_concepts(region);
  const auto families = binding_families(region);
  std::vector<std::vector<std::uint32_t>> signature(n);
  for (std::size_t k = 0; k < concepts.size(); ++k) {
    for (const EventSet outside = region.constraints()[concepts[k]].first.complement(); Atom x : outside.members()) {
      signature[x].push_back(static_cast<std::uint32_t>(k));
    }
  }
  std::vector<char> singleton(n, 0), excluded(n, 0);
  std::vector<std::vector<Atom>> family_free(families.size());
  for (std::size_t k = 0; k < families.size(); ++k) {
    const auto free = region.families()[families[k]].first.free_atoms();
    family_free[k].assign(free.members().begin(), free.members().end());
    for (Atom x : family_free[k]) singleton[x] = 1;
  }
  const std::vector<double> key(objective.begin(), objective.end());
  const AtomClasses classes = build_classes(n, signature, key, singleton, excluded);
  const std::size_t nc = classes.members.size();

  lp::Program program;
  std::size_t next_var = nc;
  lp::Row total{{}, lp::Sense::eq, 1.0};
  for (std::size_t c = 0; c < nc; ++c) total.coeffs.emplace_back(c, 1.0);
  program.rows.push_back(std::move(total));

  std::vector<lp::Row> concept_rows(concepts.size());
  for (std::size_t k = 0; k < concepts.size(); ++k) concept_rows[k].rhs = region.constraints()[concepts[k]].second;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::uint32_t k : signature[classes.members[c][0]]) concept_rows[k].coeffs.emplace_back(c, 1.0);
  }
  for (auto& row : concept_rows) program.rows.push_back(std::move(row));

  // Top-k mass over the free atoms: y_x <= t + u_x, k t + Σ u_x <= ε.
  for (std::size_t k = 0; k < families.size(); ++k) {
    const auto& [family, eps] = region.families()[families[k]];
    const std::size_t tvar = next_var++;
    lp::Row cap{{{tvar, static_cast<double>(family.complement_size())}}, lp::Sense::le, eps};
    for (Atom x : family_free[k]) {
      const std::size_t uvar = next_var++;
      program.rows.push_back(lp::Row{{{classes.of_atom[x], 1.0}, {tvar, -1.0}, {uvar, -1.0}}, lp::Sense::le, 0.0});
      cap.coeffs.emplace_back(uvar, 1.0);
    }
    program.rows.push_back(std::move(cap));
  }
  program.num_vars = next_var;

  std::vector<std::pair<std::size_t, double>> primary;
  for (std::size_t c = 0; c < nc; ++c) {
    const double coef = objective[classes.members[c][0]];
    if (coef != 0.0) primary.emplace_back(c, coef);
  }
  program.objectives.push_back(std::move(primary));
  if (tie_break) {
    for (std::size_t c = 0; c + 1 < nc; ++c) program.objectives.push_back({{c, 1.0}});
  }

  const lp::Solution sol = lp::solve(program);
  SolverReport report;
  report.iterations = sol.pivots;
  if (sol.outcome == lp::Outcome::infeasible) {
    report.value = -std::numeric_limits<double>::infinity();
    report.residual = std::numeric_limits<double>::infinity();
    return report;
  }
  if (sol.outcome != lp::Outcome::optimal) {
    report.status = SolverStatus::tolerance_reached;
    report.value = std::numeric_limits<double>::quiet_NaN();
    report.residual = std::numeric_limits<double>::infinity();
    return report;
  }
  std::vector<WeightedAtom> entries;
  for (std::size_t c = 0; c < nc; ++c) {
    if (sol.x[c] > 0.0) entries.push_back({classes.members[c][0], sol.x[c]});
  }
  Dist p = Dist::renormalized(u, std::move(entries));
  CompensatedSum value;
  for (const auto& e : p.support()) value.add(objective[e.atom] * e.weight);
  report.value = value.value();
  report.residual = max_violation(p, region);
  report.status = report.residual <= kCompareTol ? SolverStatus::optimal : SolverStatus::tolerance_reached;
  report.argmax = std::move(p);
  return report;
}

// ---------------------------------------------------------------------------
// Concave objectives Σ φ(p_x) by projected Newton on the dual
//   g(ν, λ) = Σ_c m_c φ*(s_c) + ν + λ·ε,   s_c = ν + Σ_j λ_j a_jc,
// where ψ = (φ')^-1 gives the per-atom maximizer and a_jc is the fraction of
// class c inside constraint j's complement.

struct Objective {
  enum class Kind { shannon, renyi_below_one, renyi_above_one } kind;
  double alpha = 1.0;

  bool in_domain(double s) const { return kind != Kind::renyi_below_one || s > 0.0; }
  double psi(double s) const {
    switch (kind) {
      case Kind::shannon: return std::exp(-1.0 - s);
      case Kind::renyi_below_one: return std::pow(s / alpha, 1.0 / (alpha - 1.0));
      case Kind::renyi_above_one: return s < 0.0 ? std::pow(-s / alpha, 1.0 / (alpha - 1.0)) : 0.0;
    }
    return 0.0;
  }
  double dpsi(double s, double p) const {
    if (kind == Kind::shannon) return -p;
    if (p == 0.0) return 0.0;
    return p / ((alpha - 1.0) * s);
  }
  /// sup_p φ(p) - s p.
  double conjugate(double s, double p) const {
    switch (kind) {
      case Kind::shannon: return p;
      case Kind::renyi_below_one: return std::pow(p, alpha) - s * p;
      case Kind::renyi_above_one: return -std::pow(p, alpha) - s * p;
    }
    return 0.0;
  }
  double initial_nu(double atoms) const {
    switch (kind) {
      case Kind::shannon: return std::log(atoms) - 1.0;
      case Kind::renyi_below_one: return alpha * std::pow(atoms, 1.0 - alpha);
      case Kind::renyi_above_one: return -alpha * std::pow(atoms, 1.0 - alpha);
    }
    return 0.0;
  }
};

struct Cut {
  std::vector<double> count;  ///< atoms of each class inside the complement
  double eps;
};

class DualSolver {
 public:
  DualSolver(Objective obj, std::vector<double> mult) : obj_(obj), m_(std::move(mult)) {}

  std::vector<Cut>& cuts() { return cuts_; }
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }
  const std::vector<double>& mass() const { return p_; }

  /// Runs Newton steps until the projected gradient is below `target` or the budget ends.
  void run(double target, std::size_t budget) {
    lambda_.resize(cuts_.size(), 0.0);
    if (!started_) {
      nu_ = obj_.initial_nu(std::accumulate(m_.begin(), m_.end(), 0.0));
      started_ = true;
    }
    double g = evaluate(nu_, lambda_);
    const std::size_t dim = 1 + cuts_.size();
    while (iterations_ < budget) {
      const Eigen::VectorXd grad = gradient();
      residual_ = projected_residual(grad);
      if (residual_ <= target) return;
      ++iterations_;

      std::vector<std::size_t> free_idx{0};
      const double active_tol = std::min(1e-8, residual_);
      for (std::size_t j = 0; j < cuts_.size(); ++j) {
        if (!(lambda_[j] <= active_tol && grad[1 + j] > 0.0)) free_idx.push_back(1 + j);
      }
      const Eigen::MatrixXd h = hessian();
      const auto k = static_cast<Eigen::Index>(free_idx.size());
      Eigen::MatrixXd hf(k, k);
      Eigen::VectorXd gf(k);
      for (Eigen::Index a = 0; a < k; ++a) {
        gf[a] = grad[free_idx[a]];
        for (Eigen::Index b = 0; b < k; ++b) hf(a, b) = h(free_idx[a], free_idx[b]);
        hf(a, a) += 1e-14 * (1.0 + std::fabs(hf(a, a)));
      }
      Eigen::VectorXd step = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(hf);
      Eigen::VectorXd df = ldlt.info() == Eigen::Success ? Eigen::VectorXd(ldlt.solve(-gf)) : Eigen::VectorXd(-gf);
      if (!df.allFinite() || df.dot(gf) >= 0.0) df = -gf;
      for (Eigen::Index a = 0; a < k; ++a) step[free_idx[a]] = df[a];
      // Bound-active multipliers follow the projected gradient.
      for (std::size_t j = 0; j < cuts_.size(); ++j) {
        if (std::find(free_idx.begin(), free_idx.end(), 1 + j) == free_idx.end()) step[1 + j] = -grad[1 + j];
      }

      bool accepted = false;
      for (double tau = 1.0; tau > 1e-20; tau *= 0.5) {
        const double nu = nu_ + tau * step[0];
        std::vector<double> lambda(lambda_);
        double decrease = grad[0] * (nu - nu_);
        for (std::size_t j = 0; j < cuts_.size(); ++j) {
          lambda[j] = std::max(0.0, lambda_[j] + tau * step[1 + j]);
          decrease += grad[1 + j] * (lambda[j] - lambda_[j]);
        }
        const double trial = evaluate(nu, lambda);
        if (std::isfinite(trial) && trial <= g + 1e-4 * decrease + 1e-15 * (1.0 + std::fabs(g))) {
          nu_ = nu;
          lambda_ = std::move(lambda);
          g = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        evaluate(nu_, lambda_);
        residual_ = projected_residual(gradient());
        return;
      }
    }
    residual_ = projected_residual(gradient());
  }

 private:
  /// Sets s_, p_ and returns g; +inf outside the dual domain.
  double evaluate(double nu, const std::vector<double>& lambda) {
    const std::size_t nc = m_.size();
    s_.assign(nc, nu);
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      if (lambda[j] == 0.0) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        if (cuts_[j].count[c] != 0.0) s_[c] += lambda[j] * cuts_[j].count[c] / m_[c];
      }
    }
    CompensatedSum g;
    p_.assign(nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
      if (!obj_.in_domain(s_[c])) return std::numeric_limits<double>::infinity();
      p_[c] = obj_.psi(s_[c]);
      g.add(m_[c] * obj_.conjugate(s_[c], p_[c]));
    }
    g.add(nu);
    for (std::size_t j = 0; j < cuts_.size(); ++j) g.add(lambda[j] * cuts_[j].eps);
    return g.value();
  }

  Eigen::VectorXd gradient() const {
    Eigen::VectorXd grad(static_cast<Eigen::Index>(1 + cuts_.size()));
    CompensatedSum total;
    for (std::size_t c = 0; c < m_.size(); ++c) total.add(m_[c] * p_[c]);
    grad[0] = 1.0 - total.value();
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      CompensatedSum mass;
      for (std::size_t c = 0; c < m_.size(); ++c) mass.add(cuts_[j].count[c] * p_[c]);
      grad[static_cast<Eigen::Index>(1 + j)] = cuts_[j].eps - mass.value();
    }
    return grad;
  }

  double projected_residual(const Eigen::VectorXd& grad) const {
    double r = std::fabs(grad[0]);
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      const double gj = grad[static_cast<Eigen::Index>(1 + j)];
      r = std::max(r, lambda_[j] > 0.0 ? std::fabs(gj) : std::max(0.0, -gj));
    }
    return r;
  }

  Eigen::MatrixXd hessian() const {
    const auto dim = static_cast<Eigen::Index>(1 + cuts_.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd f(dim);
    for (std::size_t c = 0; c < m_.size(); ++c) {
      const double w = -m_[c] * obj_.dpsi(s_[c], p_[c]);
      if (w == 0.0) continue;
      f[0] = 1.0;
      for (std::size_t j = 0; j < cuts_.size(); ++j) f[static_cast<Eigen::Index>(1 + j)] = cuts_[j].count[c] / m_[c];
      h.noalias() += w * f * f.transpose();
    }
    return h;
  }

  Objective obj_;
  std::vector<double> m_;
  std::vector<Cut> cuts_;
  std::vector<double> lambda_;
  double nu_ = 0.0;
  bool started_ = false;
  std::vector<double> s_, p_;
  std::size_t iterations_ = 0;
  double residual_ = std::numeric_limits<double>::infinity();
};

constexpr std::size_t kMaxIterations = 10'000;
constexpr double kNewtonTarget = 1e-12;
constexpr double kCutTol = 1e-11;
constexpr std::size_t kCutsPerRound = 16;
constexpr std::size_t kEagerConstraints = 64;

SolverReport solve_concave(const FeasibleRegion& region, Objective obj) {
  const Universe& u = region.universe();
  const std::size_t n = u.size();
  SolverReport report;

  if (!region.unconstrained()) {
    const std::vector<double> zero(n, 0.0);
    const SolverReport probe = solve_linear(region, zero, false);
    if (probe.status == SolverStatus::infeasible) {
      report.value = -std::numeric_limits<double>::infinity();
      report.residual = std::numeric_limits<double>::infinity();
      report.iterations = probe.iterations;
      return report;
    }
  }

  // Zero-budget constraints pin their complements to zero mass.
  std::vector<char> excluded(n, 0);
  for (const auto& [t, eps] : region.constraints()) {
    if (eps == 0.0) {
      for (const EventSet outside = t.complement(); Atom x : outside.members()) excluded[x] = 1;
    }
  }
  for (const auto& [family, eps] : region.families()) {
    if (eps == 0.0 && !family.empty() && family.complement_size() > 0) {
      for (const EventSet outside = family.free_atoms(); Atom x : outside.members()) excluded[x] = 1;
    }
  }

  std::vector<std::size_t> concepts;
  for (std::size_t j : binding_concepts(region)) {
    if (region.constraints()[j].second > 0.0) concepts.push_back(j);
  }
  std::vector<std::size_t> families;
  for (std::size_t f : binding_families(region)) {
    if (region.families()[f].second > 0.0) families.push_back(f);
  }

  std::vector<std::vector<std::uint32_t>> signature(n);
  for (std::size_t k = 0; k < concepts.size(); ++k) {
    for (const EventSet outside = region.constraints()[concepts[k]].first.complement(); Atom x : outside.members()) {
      signature[x].push_back(static_cast<std::uint32_t>(k));
    }
  }
  for (std::size_t k = 0; k < families.size(); ++k) {
    for (const EventSet outside = region.families()[families[k]].first.free_atoms(); Atom x : outside.members()) {
      signature[x].push_back(static_cast<std::uint32_t>(concepts.size() + k));
    }
  }
  const AtomClasses classes =
      build_classes(n, signature, std::vector<double>(n, 0.0), std::vector<char>(n, 0), excluded);
  const std::size_t nc = classes.members.size();
  if (nc == 0) {
    report.value = -std::numeric_limits<double>::infinity();
    report.residual = std::numeric_limits<double>::infinity();
    return report;
  }
  std::vector<double> mult(nc);
  for (std::size_t c = 0; c < nc; ++c) mult[c] = static_cast<double>(classes.members[c].size());

  // Per-class membership counts for each concept constraint and family free set.
  auto concept_count = [&](std::size_t k) {
    std::vector<double> count(nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& sig = signature[classes.members[c][0]];
      if (std::binary_search(sig.begin(), sig.end(), static_cast<std::uint32_t>(k))) count[c] = mult[c];
    }
    return count;
  };
  std::vector<std::vector<double>> concept_counts(concepts.size());
  for (std::size_t k = 0; k < concepts.size(); ++k) concept_counts[k] = concept_count(k);
  std::vector<std::vector<double>> family_free(families.size());
  for (std::size_t k = 0; k < families.size(); ++k) family_free[k] = concept_count(concepts.size() + k);

  DualSolver solver(obj, mult);
  std::vector<char> in_working(concepts.size(), 0);
  if (concepts.size() <= kEagerConstraints) {
    for (std::size_t k = 0; k < concepts.size(); ++k) {
      solver.cuts().push_back({concept_counts[k], region.constraints()[concepts[k]].second});
      in_working[k] = 1;
    }
  }

  while (true) {
    solver.run(kNewtonTarget, kMaxIterations);
    const auto& p = solver.mass();
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t k = 0; k < concepts.size(); ++k) {
      if (in_working[k]) continue;
      CompensatedSum mass;
      for (std::size_t c = 0; c < nc; ++c) mass.add(concept_counts[k][c] * p[c]);
      const double excess = mass.value() - region.constraints()[concepts[k]].second;
      if (excess > kCutTol) violated.emplace_back(-excess, k);
    }
    std::sort(violated.begin(), violated.end());
    if (violated.size() > kCutsPerRound) violated.resize(kCutsPerRound);
    bool added = !violated.empty();
    for (const auto& [neg, k] : violated) {
      solver.cuts().push_back({concept_counts[k], region.constraints()[concepts[k]].second});
      in_working[k] = 1;
    }
    // Most loaded member of each family: fill the heaviest free classes first.
    for (std::size_t k = 0; k < families.size(); ++k) {
      const auto& [family, eps] = region.families()[families[k]];
      std::vector<std::size_t> order;
      for (std::size_t c = 0; c < nc; ++c) {
        if (family_free[k][c] > 0.0) order.push_back(c);
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
      std::vector<double> count(nc, 0.0);
      double remaining = static_cast<double>(family.complement_size());
      CompensatedSum mass;
      for (std::size_t c : order) {
        const double take = std::min(remaining, mult[c]);
        count[c] = take;
        mass.add(take * p[c]);
        remaining -= take;
        if (remaining <= 0.0) break;
      }
      if (mass.value() - eps > kCutTol) {
        const bool duplicate = std::any_of(solver.cuts().begin(), solver.cuts().end(),
                                           [&](const Cut& cut) { return cut.count == count && cut.eps == eps; });
        if (!duplicate) {
          solver.cuts().push_back({std::move(count), eps});
          added = true;
        }
      }
    }
    if (!added || solver.iterations() >= kMaxIterations) break;
  }

  std::vector<WeightedAtom> entries;
  for (std::size_t c = 0; c < nc; ++c) {
    const double w = solver.mass()[c];
    if (w <= 0.0) continue;
    for (Atom x : classes.members[c]) entries.push_back({x, w});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.atom < b.atom; });
  report.iterations = solver.iterations();
  if (entries.empty()) {
    report.status = SolverStatus::tolerance_reached;
    report.residual = solver.residual();
    report.value = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  Dist p = Dist::renormalized(u, std::move(entries));
  report.residual = std::max(solver.residual(), max_violation(p, region));
  report.status = report.residual <= kCompareTol ? SolverStatus::optimal : SolverStatus::tolerance_reached;
  report.value = obj.kind == Objective::Kind::shannon ? shannon_entropy(p) : renyi_entropy(p, obj.alpha);
  report.argmax = std::move(p);
  return report;
}

}  // namespace

SolverReport maximize_linear(const FeasibleRegion& region, std::span<const double> objective) {
  return solve_linear(region, objective, true);
}

SolverReport max_out_of_sample(const FeasibleRegion& region, const Sample& sample) {
  require_same_universe(region.universe(), sample.universe(), "max_out_of_sample");
  std::vector<double> objective(region.universe().size(), 1.0);
  for (Atom x : sample.points()) objective[x] = 0.0;
  SolverReport report = solve_linear(region, objective, true);
  if (report.argmax) report.value = out_of_sample_mass(*report.argmax, sample);
  return report;
}

SolverReport max_entropy(const FeasibleRegion& region) {
  return solve_concave(region, Objective{Objective::Kind::shannon, 1.0});
}

SolverReport max_renyi(const FeasibleRegion& region, double alpha) {
  if (!(alpha > 0.0) || std::fabs(alpha - 1.0) <= 1e-9 || !std::isfinite(alpha)) {
    throw std::domain_error("max_renyi: alpha must be positive, finite and differ from 1");
  }
  const auto kind = alpha < 1.0 ? Objective::Kind::renyi_below_one : Objective::Kind::renyi_above_one;
  return solve_concave(region, Objective{kind, alpha});
}

SolverReport max_info(const InfoMeasure& measure, const FeasibleRegion& region, const Sample& sample) {
  require_same_universe(region.universe(), sample.universe(), "max_info");
  switch (measure.kind()) {
    case InfoMeasure::Kind::out_of_sample: return max_out_of_sample(region, sample);
    case InfoMeasure::Kind::shannon: return max_entropy(region);
    case InfoMeasure::Kind::renyi: return max_renyi(region, measure.alpha());
  }
  throw std::logic_error("max_info: unknown measure");
}

}  // namespace halluc

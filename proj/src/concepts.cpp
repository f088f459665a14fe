#include "halluc/concepts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "halluc/numeric.hpp"
#include "halluc/rng.hpp"

namespace halluc {

// ---------------------------------------------------------------------------
// ConceptClass / AnchoredFamily

ConceptClass::ConceptClass(Universe universe, std::vector<Concept> concepts, std::string name)
    : universe_(std::move(universe)), concepts_(std::move(concepts)), name_(std::move(name)) {
  std::set<std::vector<Atom>> seen;
  for (const auto& t : concepts_) {
    require_same_universe(universe_, t.universe(), "ConceptClass");
    auto members = t.members();
    if (!seen.emplace(members.begin(), members.end()).second) {
      throw std::domain_error("ConceptClass '" + name_ + "': duplicate concept");
    }
  }
}

ConceptClass ConceptClass::power_set(const Universe& universe, std::string name) {
  const std::size_t n = universe.size();
  if (n > 20) throw std::domain_error("ConceptClass::power_set: universe too large");
  std::vector<Concept> concepts;
  concepts.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) atoms.push_back(static_cast<Atom>(i));
    }
    concepts.emplace_back(universe, std::move(atoms));
  }
  return ConceptClass(universe, std::move(concepts), std::move(name));
}

AnchoredFamily::AnchoredFamily(EventSet anchors, std::size_t concept_size, std::string name)
    : anchors_(std::move(anchors)), concept_size_(concept_size), name_(std::move(name)) {}

namespace {

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// Visits k-combinations of {0..n-1} in lexicographic order until `visit` returns true.
bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t AnchoredFamily::count() const {
  if (empty()) return 0;
  return binomial_saturating(universe().size() - anchors_.size(), concept_size_ - anchors_.size());
}

bool AnchoredFamily::contains(const Concept& t) const {
  return !empty() && t.size() == concept_size_ && t.includes(anchors_);
}

ConceptClass AnchoredFamily::enumerate(std::size_t limit) const {
  if (count() > limit) throw std::domain_error("AnchoredFamily::enumerate: family exceeds limit");
  std::vector<Concept> out;
  if (!empty()) {
    const EventSet free = free_atoms();
    const auto free_members = free.members();
    const auto anchor_members = anchors_.members();
    for_each_combination(free.size(), concept_size_ - anchors_.size(), [&](const std::vector<std::size_t>& idx) {
      std::vector<Atom> atoms(anchor_members.begin(), anchor_members.end());
      for (std::size_t i : idx) atoms.push_back(free_members[i]);
      out.emplace_back(universe(), std::move(atoms));
      return false;
    });
  }
  return ConceptClass(universe(), std::move(out), name_);
}

std::uint64_t prior_size(const ConceptPrior& prior) {
  if (const auto* c = std::get_if<ConceptClass>(&prior)) return c->size();
  return std::get<AnchoredFamily>(prior).count();
}

const Universe& prior_universe(const ConceptPrior& prior) {
  if (const auto* c = std::get_if<ConceptClass>(&prior)) return c->universe();
  return std::get<AnchoredFamily>(prior).universe();
}

bool prior_contains(const ConceptPrior& prior, const Concept& t) {
  if (const auto* c = std::get_if<ConceptClass>(&prior)) {
    return std::find(c->concepts().begin(), c->concepts().end(), t) != c->concepts().end();
  }
  return std::get<AnchoredFamily>(prior).contains(t);
}

double max_hall(const ConceptPrior& prior, const Dist& p) {
  if (const auto* c = std::get_if<ConceptClass>(&prior)) {
    double worst = 0.0;
    for (const auto& t : c->concepts()) worst = std::max(worst, hall(p, t));
    return worst;
  }
  const auto& family = std::get<AnchoredFamily>(prior);
  require_same_universe(family.universe(), p.universe(), "max_hall");
  if (family.empty() || family.complement_size() == 0) return 0.0;
  std::vector<double> free_weights;
  for (const auto& e : p.support()) {
    if (!family.anchors().contains(e.atom)) free_weights.push_back(e.weight);
  }
  const std::size_t k = std::min(family.complement_size(), free_weights.size());
  std::partial_sort(free_weights.begin(), free_weights.begin() + static_cast<std::ptrdiff_t>(k),
                    free_weights.end(), std::greater<>());
  CompensatedSum top;
  for (std::size_t i = 0; i < k; ++i) top.add(free_weights[i]);
  return std::clamp(top.value(), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Version spaces

ConceptClass version_space(const ConceptClass& cls, const Sample& sample) {
  require_same_universe(cls.universe(), sample.universe(), "version_space");
  const EventSet seen = sample.distinct();
  std::vector<Concept> kept;
  for (const auto& t : cls.concepts()) {
    if (t.includes(seen)) kept.push_back(t);
  }
  return ConceptClass(cls.universe(), std::move(kept), cls.name());
}

AnchoredFamily version_space(const AnchoredFamily& family, const Sample& sample) {
  require_same_universe(family.universe(), sample.universe(), "version_space");
  return AnchoredFamily(family.anchors().united(sample.distinct()), family.concept_size(), family.name());
}

ConceptPrior version_space(const ConceptPrior& prior, const Sample& sample) {
  return std::visit([&](const auto& p) -> ConceptPrior { return version_space(p, sample); }, prior);
}

// ---------------------------------------------------------------------------
// Shattering and VC dimension

bool shatters(const ConceptClass& cls, const EventSet& set) {
  require_same_universe(cls.universe(), set.universe(), "shatters");
  const std::size_t k = set.size();
  if (k > 20) throw std::domain_error("shatters: set larger than 20 atoms");
  const std::size_t patterns = std::size_t{1} << k;
  if (cls.size() < patterns) return false;
  std::vector<char> hit(patterns, 0);
  std::size_t found = 0;
  const auto atoms = set.members();
  for (const auto& t : cls.concepts()) {
    std::size_t mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (t.contains(atoms[j])) mask |= std::size_t{1} << j;
    }
    if (!hit[mask]) {
      hit[mask] = 1;
      if (++found == patterns) return true;
    }
  }
  return false;
}

namespace {

using Column = std::vector<std::uint64_t>;

bool column_bit(const Column& col, std::size_t c) { return (col[c / 64] >> (c % 64)) & 1U; }

}  // namespace

VcResult vc_dimension(const ConceptClass& cls, std::size_t cap) {
  if (cap > 20) throw std::domain_error("vc_dimension: cap must be at most 20");
  VcResult result;
  const std::size_t m = cls.size();
  if (m == 0) return result;

  const std::size_t words = (m + 63) / 64;
  std::map<Atom, Column> columns;
  for (std::size_t c = 0; c < m; ++c) {
    for (Atom a : cls[c].members()) {
      auto [it, inserted] = columns.try_emplace(a, words, 0);
      it->second[c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  std::vector<Atom> candidates;
  std::vector<const Column*> cols;
  std::set<Column> seen;
  for (const auto& [atom, col] : columns) {
    std::size_t ones = 0;
    for (auto w : col) ones += static_cast<std::size_t>(std::popcount(w));
    if (ones == 0 || ones == m) continue;
    if (!seen.insert(col).second) continue;
    candidates.push_back(atom);
    cols.push_back(&col);
  }

  const auto log2_bound = static_cast<std::size_t>(std::bit_width(m) - 1);
  const std::size_t kmax = std::min({cap, log2_bound, candidates.size()});
  std::vector<char> hit;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const std::size_t patterns = std::size_t{1} << k;
    std::vector<Atom> witness;
    const bool found = for_each_combination(candidates.size(), k, [&](const std::vector<std::size_t>& idx) {
      // Cheap necessary checks: some concept contains all of S, some avoids all of S.
      bool all_ones = false;
      bool all_zeros = false;
      for (std::size_t w = 0; w < words && !(all_ones && all_zeros); ++w) {
        std::uint64_t ones = ~std::uint64_t{0};
        std::uint64_t zeros = ~std::uint64_t{0};
        for (std::size_t i : idx) {
          ones &= (*cols[i])[w];
          zeros &= ~(*cols[i])[w];
        }
        if (w == words - 1 && m % 64 != 0) zeros &= (std::uint64_t{1} << (m % 64)) - 1;
        all_ones = all_ones || ones != 0;
        all_zeros = all_zeros || zeros != 0;
      }
      if (!all_ones || !all_zeros) return false;
      hit.assign(patterns, 0);
      std::size_t count = 0;
      for (std::size_t c = 0; c < m; ++c) {
        std::size_t mask = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (column_bit(*cols[idx[j]], c)) mask |= std::size_t{1} << j;
        }
        if (!hit[mask]) {
          hit[mask] = 1;
          if (++count == patterns) {
            witness.clear();
            for (std::size_t i : idx) witness.push_back(candidates[i]);
            return true;
          }
        }
      }
      return false;
    });
    if (!found) return result;
    result.dimension = k;
    result.witness = std::move(witness);
  }
  result.at_least = result.dimension == cap && cap < std::min(log2_bound, candidates.size());
  return result;
}

// ---------------------------------------------------------------------------
// Informativeness

ConceptClass neighborhood(const ConceptClass& cls, const Dist& q, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("neighborhood: xi must lie in [0,1]");
  std::vector<Concept> kept;
  for (const auto& t : cls.concepts()) {
    if (hall(q, t) <= xi + kNormTol) kept.push_back(t);
  }
  return ConceptClass(cls.universe(), std::move(kept), cls.name());
}

SufficiencyResult sufficiency_value(const ConceptClass& cls, std::span<const Dist> hypotheses, const Dist& q,
                                    double xi) {
  if (hypotheses.empty()) throw std::domain_error("sufficiency_value: empty hypothesis class");
  const ConceptClass near = neighborhood(cls, q, xi);
  SufficiencyResult out;
  if (near.empty()) {
    out.empty_neighborhood = true;
    return out;
  }
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    double worst = 0.0;
    for (const auto& t : near.concepts()) worst = std::max(worst, hall(hypotheses[i], t));
    if (worst < out.value) {
      out.value = worst;
      out.best_index = i;
    }
  }
  return out;
}

InformativenessProfile::InformativenessProfile(std::vector<std::pair<double, double>> table)
    : table_(std::move(table)) {
  if (table_.empty()) throw std::domain_error("InformativenessProfile: empty table");
  std::sort(table_.begin(), table_.end());
  for (const auto& [eps, xi] : table_) {
    if (!(eps >= 0.0 && eps <= 1.0 && xi >= 0.0 && xi <= 1.0)) {
      throw std::domain_error("InformativenessProfile: entries must lie in [0,1]");
    }
  }
}

double InformativenessProfile::xi(double eps) const {
  auto it = std::upper_bound(table_.begin(), table_.end(), eps,
                             [](double v, const std::pair<double, double>& row) { return v < row.first; });
  if (it == table_.begin()) throw std::domain_error("InformativenessProfile: eps below the table");
  return std::prev(it)->second;
}

std::optional<double> first_uninformative_eps(const ConceptClass& cls, std::span<const Dist> hypotheses,
                                              const Dist& q, const InformativenessProfile& profile) {
  for (const auto& [eps, xi] : profile.table()) {
    if (sufficiency_value(cls, hypotheses, q, xi).value > eps + kNormTol) return eps;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Packing

PackingResult packing_construct(std::size_t d, std::uint64_t seed, std::size_t max_tries) {
  if (d < 4 || d % 4 != 0) throw std::domain_error("packing_construct: d must be a positive multiple of 4");
  const Universe universe(d);
  CounterRng rng(seed, 0x7061636bULL);
  std::vector<Concept> accepted;
  std::size_t tries = 0;
  std::size_t rejections = 0;
  while (rejections < max_tries) {
    ++tries;
    const auto picks = rng.distinct(d, d / 2);
    Concept candidate(universe, std::vector<Atom>(picks.begin(), picks.end()));
    const bool compatible = std::all_of(accepted.begin(), accepted.end(), [&](const Concept& t) {
      return t.intersection_size(candidate) <= d / 4;
    });
    if (compatible) {
      accepted.push_back(std::move(candidate));
      rejections = 0;
    } else {
      ++rejections;
    }
  }
  if (accepted.empty()) throw std::runtime_error("packing_construct: no set accepted within max_tries");
  const double target = std::sqrt(1.0 / (4.0 * static_cast<double>(d))) * std::exp(static_cast<double>(d) / 16.0);
  const std::size_t achieved = accepted.size();
  return PackingResult{ConceptClass(universe, std::move(accepted), "packing_d" + std::to_string(d)), seed, tries,
                       achieved, target};
}

double entropy_split_bound(const Dist& p, const EventSet& a1, const EventSet& a2, const EventSet& a3) {
  const Universe& u = p.universe();
  for (const EventSet* s : {&a1, &a2, &a3}) require_same_universe(u, s->universe(), "entropy_split_bound");
  if (a1.size() + a2.size() + a3.size() != u.size() || a1.intersection_size(a2) != 0 ||
      a1.intersection_size(a3) != 0 || a2.intersection_size(a3) != 0) {
    throw std::domain_error("entropy_split_bound: sets do not partition the universe");
  }
  CompensatedSum total;
  for (const EventSet* part : {&a1, &a2, &a3}) {
    const double m = p.mass(*part);
    if (m <= 0.0) continue;
    CompensatedSum conditional;
    for (Atom a : part->members()) conditional.add(entropy_term(p.weight(a) / m));
    total.add(entropy_term(m));
    total.add(m * conditional.value());
  }
  const double value = total.value();
  if (std::fabs(value - shannon_entropy(p)) > kCompareTol) {
    throw std::logic_error("entropy_split_bound: chain rule violated");
  }
  return value;
}

}  // namespace halluc

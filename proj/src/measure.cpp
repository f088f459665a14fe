#include "halluc/measure.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <cmath>
#include <limits>
#include <sstream>

#include "halluc/numeric.hpp"

namespace halluc {

// ---------------------------------------------------------------------------
// Universe / EventSet

Universe::Universe(std::size_t size, std::vector<std::string> labels) {
  if (size == 0) throw std::domain_error("Universe: size must be at least 1");
  if (!labels.empty() && labels.size() != size) {
    throw std::domain_error("Universe: labels must have exactly one entry per atom");
  }
  data_ = std::make_shared<const Data>(Data{size, std::move(labels)});
}

bool operator==(const Universe& a, const Universe& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->size == b.data_->size && a.data_->labels == b.data_->labels;
}

void require_same_universe(const Universe& a, const Universe& b, const char* where) {
  if (!(a == b)) throw std::domain_error(std::string(where) + ": universe mismatch");
}

EventSet::EventSet(Universe universe, std::vector<Atom> members) : universe_(std::move(universe)) {
  if (!std::is_sorted(members.begin(), members.end())) std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && !universe_.contains(members.back())) {
    throw std::domain_error("EventSet: atom " + std::to_string(members.back()) + " outside universe");
  }
  members_ = std::make_shared<const std::vector<Atom>>(std::move(members));
}

EventSet EventSet::empty(const Universe& universe) { return EventSet(universe, {}); }

EventSet EventSet::all(const Universe& universe) {
  return range(universe, 0, static_cast<Atom>(universe.size()));
}

EventSet EventSet::range(const Universe& universe, Atom first, Atom last) {
  std::vector<Atom> atoms;
  atoms.reserve(last > first ? last - first : 0);
  for (Atom a = first; a < last; ++a) atoms.push_back(a);
  return EventSet(universe, std::move(atoms));
}

bool EventSet::contains(Atom a) const { return std::binary_search(members_->begin(), members_->end(), a); }

bool EventSet::includes(const EventSet& other) const {
  require_same_universe(universe_, other.universe_, "EventSet::includes");
  return std::includes(members_->begin(), members_->end(), other.members_->begin(), other.members_->end());
}

EventSet EventSet::complement() const {
  std::vector<Atom> out;
  out.reserve(universe_.size() - members_->size());
  auto it = members_->begin();
  for (Atom a = 0; a < universe_.size(); ++a) {
    if (it != members_->end() && *it == a) {
      ++it;
    } else {
      out.push_back(a);
    }
  }
  return EventSet(universe_, std::move(out));
}

EventSet EventSet::united(const EventSet& other) const {
  require_same_universe(universe_, other.universe_, "EventSet::united");
  std::vector<Atom> out;
  std::set_union(members_->begin(), members_->end(), other.members_->begin(), other.members_->end(),
                 std::back_inserter(out));
  return EventSet(universe_, std::move(out));
}

EventSet EventSet::intersected(const EventSet& other) const {
  require_same_universe(universe_, other.universe_, "EventSet::intersected");
  std::vector<Atom> out;
  std::set_intersection(members_->begin(), members_->end(), other.members_->begin(),
                        other.members_->end(), std::back_inserter(out));
  return EventSet(universe_, std::move(out));
}

std::size_t EventSet::intersection_size(const EventSet& other) const {
  std::size_t count = 0;
  auto a = members_->begin();
  auto b = other.members_->begin();
  while (a != members_->end() && b != other.members_->end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

bool operator==(const EventSet& a, const EventSet& b) {
  return a.universe_ == b.universe_ && *a.members_ == *b.members_;
}

// ---------------------------------------------------------------------------
// Dist

namespace {

void sort_entries(std::vector<WeightedAtom>& entries) {
  const auto by_atom = [](const WeightedAtom& x, const WeightedAtom& y) { return x.atom < y.atom; };
  // Constructions emit entries in atom order; skip the O(n log n) sort then.
  if (!std::is_sorted(entries.begin(), entries.end(), by_atom)) std::sort(entries.begin(), entries.end(), by_atom);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].atom == entries[i - 1].atom) {
      throw std::domain_error("Dist: duplicate atom " + std::to_string(entries[i].atom));
    }
  }
}

}  // namespace

Dist::Dist(Universe universe, std::vector<WeightedAtom> entries) : universe_(std::move(universe)) {
  sort_entries(entries);
  CompensatedSum total;
  for (const auto& e : entries) {
    if (!universe_.contains(e.atom)) {
      throw std::domain_error("Dist: atom " + std::to_string(e.atom) + " outside universe");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw std::domain_error("Dist: weights must be finite and nonnegative");
    }
    total.add(e.weight);
  }
  if (std::fabs(total.value() - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Dist: weights sum to " << total.value() << ", not 1";
    throw std::domain_error(msg.str());
  }
  std::erase_if(entries, [](const WeightedAtom& e) { return e.weight == 0.0; });
  entries_ = std::make_shared<const std::vector<WeightedAtom>>(std::move(entries));
}

Dist Dist::from_dense(const Universe& universe, std::span<const double> weights) {
  if (weights.size() != universe.size()) throw std::domain_error("Dist::from_dense: size mismatch");
  std::vector<WeightedAtom> entries;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) entries.push_back({static_cast<Atom>(i), weights[i]});
  }
  return Dist(universe, std::move(entries));
}

Dist Dist::renormalized(const Universe& universe, std::vector<WeightedAtom> entries) {
  CompensatedSum total;
  for (auto& e : entries) {
    if (e.weight < 0.0) {
      if (e.weight < -kCompareTol) throw std::domain_error("Dist::renormalized: negative weight");
      e.weight = 0.0;
    }
    total.add(e.weight);
  }
  const double z = total.value();
  if (!(z > 0.0)) throw std::domain_error("Dist::renormalized: zero total mass");
  for (auto& e : entries) e.weight /= z;
  return Dist(universe, std::move(entries));
}

Dist Dist::uniform(const EventSet& set) {
  if (set.is_empty()) throw std::domain_error("Dist::uniform: empty set");
  const double w = 1.0 / static_cast<double>(set.size());
  std::vector<WeightedAtom> entries;
  entries.reserve(set.size());
  for (Atom a : set.members()) entries.push_back({a, w});
  return Dist(set.universe(), std::move(entries));
}

Dist Dist::point_mass(const Universe& universe, Atom atom) { return Dist(universe, {{atom, 1.0}}); }

Dist Dist::mixture(double w, const Dist& a, const Dist& b) {
  require_same_universe(a.universe_, b.universe_, "Dist::mixture");
  if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error("Dist::mixture: weight outside [0,1]");
  std::vector<WeightedAtom> out;
  out.reserve(a.support_size() + b.support_size());
  auto x = a.entries_->begin();
  auto y = b.entries_->begin();
  while (x != a.entries_->end() || y != b.entries_->end()) {
    if (y == b.entries_->end() || (x != a.entries_->end() && x->atom < y->atom)) {
      out.push_back({x->atom, w * x->weight});
      ++x;
    } else if (x == a.entries_->end() || y->atom < x->atom) {
      out.push_back({y->atom, (1.0 - w) * y->weight});
      ++y;
    } else {
      out.push_back({x->atom, w * x->weight + (1.0 - w) * y->weight});
      ++x;
      ++y;
    }
  }
  return Dist(a.universe_, std::move(out));
}

EventSet Dist::support_set() const {
  std::vector<Atom> atoms;
  atoms.reserve(entries_->size());
  for (const auto& e : *entries_) atoms.push_back(e.atom);
  return EventSet(universe_, std::move(atoms));
}

double Dist::weight(Atom a) const {
  auto it = std::lower_bound(entries_->begin(), entries_->end(), a,
                             [](const WeightedAtom& e, Atom v) { return e.atom < v; });
  return (it != entries_->end() && it->atom == a) ? it->weight : 0.0;
}

double Dist::mass(const EventSet& set) const {
  require_same_universe(universe_, set.universe(), "Dist::mass");
  CompensatedSum total;
  const auto members = set.members();
  auto m = members.begin();
  for (const auto& e : *entries_) {
    while (m != members.end() && *m < e.atom) ++m;
    if (m == members.end()) break;
    if (*m == e.atom) total.add(e.weight);
  }
  return total.value();
}

std::vector<double> Dist::dense() const {
  std::vector<double> out(universe_.size(), 0.0);
  for (const auto& e : *entries_) out[e.atom] = e.weight;
  return out;
}

bool operator==(const Dist& a, const Dist& b) {
  return a.universe_ == b.universe_ && *a.entries_ == *b.entries_;
}

// ---------------------------------------------------------------------------
// Sample / InfoMeasure

Sample::Sample(Universe universe, std::vector<Atom> points, std::uint64_t seed)
    : universe_(std::move(universe)), points_(std::move(points)), seed_(seed) {
  for (Atom a : points_) {
    if (!universe_.contains(a)) throw std::domain_error("Sample: atom outside universe");
  }
}

EventSet Sample::distinct() const { return EventSet(universe_, points_); }

Sample Sample::extended(const Sample& more) const {
  require_same_universe(universe_, more.universe_, "Sample::extended");
  std::vector<Atom> pts = points_;
  pts.insert(pts.end(), more.points_.begin(), more.points_.end());
  return Sample(universe_, std::move(pts), seed_);
}

InfoMeasure InfoMeasure::renyi(double alpha) {
  if (!(alpha > 0.0) || std::fabs(alpha - 1.0) <= 1e-9 || !std::isfinite(alpha)) {
    throw std::domain_error("renyi: alpha must be positive and different from 1");
  }
  return InfoMeasure(Kind::renyi, alpha);
}

std::string InfoMeasure::name() const {
  switch (kind_) {
    case Kind::shannon:
      return "shannon";
    case Kind::out_of_sample:
      return "out_of_sample";
    case Kind::renyi: {
      std::ostringstream s;
      s << "renyi:" << alpha_;
      return s.str();
    }
  }
  return "?";
}

InfoMeasure InfoMeasure::parse(const std::string& name) {
  if (name == "shannon") return shannon();
  if (name == "out_of_sample" || name == "out-of-sample") return out_of_sample();
  if (name.rfind("renyi:", 0) == 0) return renyi(std::stod(name.substr(6)));
  throw std::domain_error("unknown information measure '" + name + "'");
}

// ---------------------------------------------------------------------------
// Measures

double hall(const Dist& p, const EventSet& facts) {
  require_same_universe(p.universe(), facts.universe(), "hall");
  CompensatedSum outside;
  const auto members = facts.members();
  auto m = members.begin();
  for (const auto& e : p.support()) {
    while (m != members.end() && *m < e.atom) ++m;
    if (m == members.end() || *m != e.atom) outside.add(e.weight);
  }
  return std::clamp(outside.value(), 0.0, 1.0);
}

namespace {

struct KnapsackItem {
  double cost;   // q-mass
  double value;  // p-mass
};

struct ItemClass {
  double cost;
  double value;
  std::size_t count;
};

constexpr std::size_t kFullEnumerationLimit = 25;
constexpr std::size_t kMeetInMiddleLimit = 40;

void best_over_counts(const std::vector<ItemClass>& classes, std::size_t idx, double cost, double value,
                      double cap, double& best) {
  if (idx == classes.size()) {
    best = std::max(best, value);
    return;
  }
  const ItemClass& c = classes[idx];
  for (std::size_t k = 0; k <= c.count; ++k) {
    const double kc = static_cast<double>(k) * c.cost;
    if (cost + kc > cap) break;
    best_over_counts(classes, idx + 1, cost + kc, value + static_cast<double>(k) * c.value, cap, best);
  }
}

std::vector<KnapsackItem> subset_sums(std::span<const KnapsackItem> items) {
  const std::size_t n = items.size();
  std::vector<KnapsackItem> sums(std::size_t{1} << n, KnapsackItem{0.0, 0.0});
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(mask));
    const KnapsackItem& prev = sums[mask & (mask - 1)];
    sums[mask] = {prev.cost + items[bit].cost, prev.value + items[bit].value};
  }
  return sums;
}

double meet_in_the_middle(std::span<const KnapsackItem> items, double cap) {
  const std::size_t half = items.size() / 2;
  auto left = subset_sums(items.subspan(0, half));
  auto right = subset_sums(items.subspan(half));
  std::sort(right.begin(), right.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.value < b.value);
  });
  std::vector<double> prefix_best(right.size());
  double running = -1.0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    running = std::max(running, right[i].value);
    prefix_best[i] = running;
  }
  double best = 0.0;
  for (const auto& l : left) {
    if (l.cost > cap) continue;
    const double room = cap - l.cost;
    auto it = std::upper_bound(right.begin(), right.end(), room,
                               [](double r, const KnapsackItem& item) { return r < item.cost; });
    if (it == right.begin()) continue;
    best = std::max(best, l.value + prefix_best[static_cast<std::size_t>(it - right.begin()) - 1]);
  }
  return best;
}

double knapsack_exact(std::vector<KnapsackItem> items, double cap) {
  std::sort(items.begin(), items.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.value > b.value);
  });
  std::vector<ItemClass> classes;
  for (const auto& it : items) {
    if (!classes.empty() && classes.back().cost == it.cost && classes.back().value == it.value) {
      ++classes.back().count;
    } else {
      classes.push_back({it.cost, it.value, 1});
    }
  }
  constexpr double kComboLimit = static_cast<double>(std::size_t{1} << kFullEnumerationLimit);
  double combos = 1.0;
  for (const auto& c : classes) combos *= static_cast<double>(c.count + 1);
  if (combos <= kComboLimit) {
    double best = 0.0;
    best_over_counts(classes, 0, 0.0, 0.0, cap, best);
    return best;
  }
  if (items.size() <= kMeetInMiddleLimit) return meet_in_the_middle(items, cap);
  throw ExactSearchInfeasible("hall_eps: exact search infeasible (" + std::to_string(items.size()) +
                              " competing atoms in " + std::to_string(classes.size()) + " classes)");
}

}  // namespace

double hall_eps(const Dist& p, const Dist& q, double eps) {
  require_same_universe(p.universe(), q.universe(), "hall_eps");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("hall_eps: eps must lie in [0,1]");
  const double cap = eps + kCompareTol;

  CompensatedSum free_mass;
  std::vector<KnapsackItem> items;
  CompensatedSum all_cost;
  CompensatedSum all_value;
  const auto qs = q.support();
  auto qi = qs.begin();
  for (const auto& e : p.support()) {
    while (qi != qs.end() && qi->atom < e.atom) ++qi;
    const double qv = (qi != qs.end() && qi->atom == e.atom) ? qi->weight : 0.0;
    if (qv == 0.0) {
      free_mass.add(e.weight);
    } else if (qv <= cap) {
      items.push_back({qv, e.weight});
      all_cost.add(qv);
      all_value.add(e.weight);
    }
  }
  if (all_cost.value() <= cap) {
    free_mass.add(all_value.value());
  } else {
    free_mass.add(knapsack_exact(std::move(items), cap));
  }
  return std::clamp(free_mass.value(), 0.0, 1.0);
}

double tv(const Dist& p, const Dist& q) {
  require_same_universe(p.universe(), q.universe(), "tv");
  CompensatedSum total;
  auto a = p.support().begin();
  auto b = q.support().begin();
  const auto ae = p.support().end();
  const auto be = q.support().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->atom < b->atom)) {
      total.add(a->weight);
      ++a;
    } else if (a == ae || b->atom < a->atom) {
      total.add(b->weight);
      ++b;
    } else {
      total.add(std::fabs(a->weight - b->weight));
      ++a;
      ++b;
    }
  }
  return std::clamp(0.5 * total.value(), 0.0, 1.0);
}

double kl(const Dist& p, const Dist& q) {
  require_same_universe(p.universe(), q.universe(), "kl");
  CompensatedSum total;
  const auto qs = q.support();
  auto qi = qs.begin();
  for (const auto& e : p.support()) {
    while (qi != qs.end() && qi->atom < e.atom) ++qi;
    if (qi == qs.end() || qi->atom != e.atom) return std::numeric_limits<double>::infinity();
    total.add(e.weight * std::log(e.weight / qi->weight));
  }
  return std::max(0.0, total.value());
}

double shannon_entropy(const Dist& p) {
  CompensatedSum total;
  for (const auto& e : p.support()) total.add(entropy_term(e.weight));
  return total.value();
}

double renyi_entropy(const Dist& p, double alpha) {
  const InfoMeasure m = InfoMeasure::renyi(alpha);  // validates alpha
  CompensatedSum total;
  for (const auto& e : p.support()) total.add(std::pow(e.weight, m.alpha()));
  return std::log(total.value()) / (1.0 - m.alpha());
}

double out_of_sample_mass(const Dist& p, const Sample& sample) {
  require_same_universe(p.universe(), sample.universe(), "out_of_sample_mass");
  return hall(p, sample.distinct());
}

double info(const InfoMeasure& measure, const Dist& p, const Sample& sample) {
  require_same_universe(p.universe(), sample.universe(), "info");
  switch (measure.kind()) {
    case InfoMeasure::Kind::shannon:
      return shannon_entropy(p);
    case InfoMeasure::Kind::renyi:
      return renyi_entropy(p, measure.alpha());
    case InfoMeasure::Kind::out_of_sample:
      return out_of_sample_mass(p, sample);
  }
  return 0.0;
}

double binary_entropy(double x, LogBase base) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]");
  const double h = entropy_term(x) + entropy_term(1.0 - x);
  return base == LogBase::bits ? h / std::log(2.0) : h;
}

AgnosticExcess agnostic_excess(const Dist& learned, std::span<const Dist> hypotheses,
                               const HallTarget& target) {
  if (hypotheses.empty()) throw std::domain_error("agnostic_excess: empty hypothesis class");
  auto score = [&](const Dist& p) {
    if (const auto* facts = std::get_if<EventSet>(&target)) return hall(p, *facts);
    const auto& rel = std::get<RelativeTarget>(target);
    return hall_eps(p, rel.q, rel.eps);
  };
  AgnosticExcess out{score(learned), std::numeric_limits<double>::infinity()};
  for (const auto& p : hypotheses) {
    require_same_universe(learned.universe(), p.universe(), "agnostic_excess");
    out.best_in_class = std::min(out.best_in_class, score(p));
  }
  return out;
}

double smoothness_certificate(const Dist& p, const Dist& q) {
  require_same_universe(p.universe(), q.universe(), "smoothness_certificate");
  double sigma = std::numeric_limits<double>::infinity();
  const auto qs = q.support();
  auto qi = qs.begin();
  for (const auto& e : p.support()) {
    while (qi != qs.end() && qi->atom < e.atom) ++qi;
    if (qi == qs.end() || qi->atom != e.atom) return 0.0;
    sigma = std::min(sigma, qi->weight / e.weight);
  }
  return sigma;
}

}  // namespace halluc

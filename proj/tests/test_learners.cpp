#include <gtest/gtest.h>

#include "halluc/adversaries.hpp"
#include "halluc/harness.hpp"
#include "halluc/learners.hpp"
#include "oracles.hpp"

using namespace halluc;

namespace {

LearnerSpec improper(const ConceptPrior& prior, double eps, InfoMeasure m = InfoMeasure::out_of_sample()) {
  LearnerSpec s;
  s.kind = LearnerKind::improper_max_info;
  s.measure = m;
  s.eps = eps;
  s.prior = prior;
  return s;
}

}  // namespace

TEST(LearnerKind, ParseRoundTrip) {
  for (auto k : {LearnerKind::empirical, LearnerKind::improper_max_info, LearnerKind::proper_max_info, LearnerKind::fixed}) {
    EXPECT_EQ(parse_learner_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_learner_kind("oracle"), std::domain_error);
}

TEST(Validate, KindDependentFields) {
  LearnerSpec s;
  s.kind = LearnerKind::improper_max_info;
  EXPECT_THROW(validate(s), std::domain_error);
  s.kind = LearnerKind::proper_max_info;
  Universe u(2);
  s.prior = ConceptClass(u, {Concept(u, {0})});
  EXPECT_THROW(validate(s), std::domain_error);
  s.kind = LearnerKind::empirical;
  s.eps = 1.2;
  EXPECT_THROW(validate(s), std::domain_error);
}

TEST(Empirical, Counting) {
  Universe u(4);
  const LearnedModel m = learn_empirical(Sample(u, {0, 0, 1, 2}));
  EXPECT_EQ(m.dist.weight(0), 0.5);
  EXPECT_EQ(m.dist.weight(1), 0.25);
  EXPECT_EQ(m.dist.weight(2), 0.25);
  EXPECT_EQ(out_of_sample_mass(m.dist, Sample(u, {0, 0, 1, 2})), 0.0);
  EXPECT_THROW(learn_empirical(Sample(u, {})), std::domain_error);
}

TEST(Empirical, NeverHallucinatesOnFaithfulSource) {
  CounterRng rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    Universe u(12);
    const EventSet t(u, oracle::random_subset(rng, 12, 0.5));
    if (t.is_empty()) continue;
    const Sample s = sample_from(Dist::uniform(t), 1 + rng.below(30), rng());
    EXPECT_EQ(hall(learn_empirical(s).dist, t), 0.0);
  }
}

TEST(Improper, SingletonClassStaysWithinBudgetAndMaximizesInfo) {
  Universe u(10);
  const Concept truth(u, {0, 1, 2, 3, 4});
  const ConceptPrior prior = ConceptClass(u, {truth});
  const Sample s(u, {0, 1});
  const LearnedModel m = learn_improper(improper(prior, 0.2), s);
  EXPECT_LE(hall(m.dist, truth), 0.2);
  // Out-of-sample mass can reach 1 (no constraint keeps mass on the sample).
  EXPECT_NEAR(info(InfoMeasure::out_of_sample(), m.dist, s), 1.0, 1e-12);
  const LearnedModel h = learn_improper(improper(prior, 0.2, InfoMeasure::shannon()), s);
  EXPECT_LE(hall(h.dist, truth), 0.2);
  const double closed = binary_entropy(0.2) + 0.8 * std::log(5.0) + 0.2 * std::log(5.0);
  EXPECT_NEAR(h.solver_report->value, closed, 1e-7);
}

TEST(Improper, StrictBudgetLeavesMargin) {
  EXPECT_EQ(effective_budget(improper(ConceptClass(Universe(1), {}), 0.1)), 0.1 - 1e-9);
  LearnerSpec lax = improper(ConceptClass(Universe(1), {}), 0.1);
  lax.strict = false;
  EXPECT_EQ(effective_budget(lax), 0.1);
  EXPECT_EQ(effective_budget(improper(ConceptClass(Universe(1), {}), 0.0)), 0.0);
}

TEST(Improper, EmptyVersionSpaceIsUnconstrained) {
  Universe u(5);
  const ConceptPrior prior = ConceptClass(u, {Concept(u, {0, 1})});
  const Sample s(u, {4});
  const LearnedModel m = learn_improper(improper(prior, 0.1, InfoMeasure::shannon()), s);
  EXPECT_EQ(m.version_space_size, 0u);
  EXPECT_NEAR(m.solver_report->value, std::log(5.0), 1e-12);
}

TEST(Improper, NeverViolatesVersionSpace) {
  CounterRng rng(2);
  const std::size_t d = 4;
  Universe u(2 * d + 1);
  const AnchoredFamily fam(EventSet(u, {0}), d + 1);
  const ConceptClass cls = fam.enumerate();
  for (int rep = 0; rep < 60; ++rep) {
    const Concept& truth = cls[rng.below(cls.size())];
    const Sample s = sample_from(Dist::uniform(truth), 1 + rng.below(5), rng());
    const double eps = 0.02 + 0.3 * rng.uniform01();
    for (const ConceptPrior& prior : {ConceptPrior(cls), ConceptPrior(fam)}) {
      for (const auto& m : {InfoMeasure::out_of_sample(), InfoMeasure::shannon(), InfoMeasure::renyi(2.0)}) {
        const LearnedModel lm = learn_improper(improper(prior, eps, m), s);
        const ConceptPrior vs = version_space(prior, s);
        EXPECT_LE(max_hall(vs, lm.dist), eps + 1e-9);
        // Conditional information dominance against the faithful source.
        const Dist q = Dist::uniform(truth);
        if (feasible(q, FeasibleRegion::from_prior(vs, effective_budget(improper(prior, eps))))) {
          EXPECT_GE(info(m, lm.dist, s), info(m, q, s) - 1e-9);
        }
      }
    }
  }
}

TEST(Improper, SafetyPreservedAsSampleGrows) {
  CounterRng rng(3);
  const std::size_t d = 3;
  Universe u(2 * d + 1);
  const ConceptClass cls = AnchoredFamily(EventSet(u, {0}), d + 1).enumerate();
  for (int rep = 0; rep < 40; ++rep) {
    const Concept& truth = cls[rng.below(cls.size())];
    Sample s = sample_from(Dist::uniform(truth), 1, rng());
    for (int step = 0; step < 4; ++step) {
      const LearnedModel lm = learn_improper(improper(cls, 0.1), s);
      EXPECT_LE(max_hall(version_space(cls, s), lm.dist), 0.1);
      s = s.extended(sample_from(Dist::uniform(truth), 1, rng()));
    }
  }
}

TEST(Proper, ReturnsHypothesisByIdentity) {
  Universe u(6);
  const Concept truth(u, {0, 1, 2});
  LearnerSpec s;
  s.kind = LearnerKind::proper_max_info;
  s.eps = 0.1;
  s.prior = ConceptClass(u, {truth});
  s.hypotheses = {Dist::uniform(EventSet(u, {3, 4})), Dist::uniform(truth)};
  const LearnedModel m = learn_proper(s, Sample(u, {0}));
  EXPECT_FALSE(m.relaxed);
  ASSERT_TRUE(m.hypothesis_index.has_value());
  EXPECT_EQ(*m.hypothesis_index, 1u);
  EXPECT_EQ(m.dist, s.hypotheses[1]);
  EXPECT_EQ(hall(m.dist, truth), 0.0);
}

TEST(Proper, ExampleFourRelaxesAndLosesPointNineNine) {
  const InstanceEnsemble e = example4();
  LearnerSpec s;
  s.kind = LearnerKind::proper_max_info;
  s.eps = 0.5;
  s.prior = e.prior;
  s.hypotheses = e.hypotheses;
  const Universe& u = prior_universe(*e.prior);
  const LearnedModel m = learn_proper(s, Sample(u, {kExample4Shared}));
  EXPECT_TRUE(m.relaxed);
  const HardInstance adverse = e.respond(*m.hypothesis_index, Sample(u, {kExample4Shared}));
  EXPECT_EQ(hall(m.dist, adverse.truth), 0.99);
}

TEST(Fixed, DeterministicAndInHypotheses) {
  Universe u(8);
  LearnerSpec s;
  s.kind = LearnerKind::fixed;
  s.hypotheses = {Dist::uniform(EventSet(u, {0})), Dist::uniform(EventSet(u, {1})), Dist::uniform(EventSet(u, {2}))};
  s.fixed_choice_seed = 5;
  const Sample a(u, {3, 1, 4, 1}), b(u, {1, 1, 3, 4});
  EXPECT_EQ(learn_fixed(s, a).hypothesis_index, learn_fixed(s, a).hypothesis_index);
  EXPECT_EQ(learn_fixed(s, a).hypothesis_index, learn_fixed(s, b).hypothesis_index);  // multiset, not order
  s.hypotheses.erase(s.hypotheses.begin() + 1, s.hypotheses.end());
  EXPECT_EQ(*learn_fixed(s, a).hypothesis_index, 0u);
}

TEST(Fixed, ExampleOneAdversaryWins) {
  CounterRng rng(4);
  const InstanceEnsemble e = example1({5, 4, 3});
  LearnerSpec s;
  s.kind = LearnerKind::fixed;
  s.hypotheses = e.hypotheses;
  for (int rep = 0; rep < 50; ++rep) {
    s.fixed_choice_seed = rng();
    const HardInstance inst = e.draw(rng());
    const Sample x = sample_from(inst.q, 10, rng());
    const LearnedModel m = learn_fixed(s, x);
    const HardInstance adverse = e.respond(*m.hypothesis_index, x);
    EXPECT_EQ(hall(m.dist, adverse.truth), 1.0);
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "rectfix/contraction.hpp"
#include "rectfix/errors.hpp"
#include "rectfix/fixtures.hpp"
#include "rectfix/io.hpp"

using namespace rectfix;

namespace {

struct Evaluated {
  Problem p;
  ViolationReport report;
};

Evaluated run(const Fixture& f) {
  Evaluated e{instantiate(f), {}};
  e.report = check_contraction(e.p.config, e.p.space, e.p.map, eligibility(e.p.space, e.p.gates));
  return e;
}

PairEvaluation pair(const Problem& p, const char* x, const char* y) {
  return evaluate_pair(p.config, p.space, p.map, *p.space.find(x), *p.space.find(y));
}

}  // namespace

TEST(FourPointPairs, OneFour) {
  const Problem p = instantiate(example311());
  const auto e = pair(p, "1", "4");
  EXPECT_EQ(e.status, PairStatus::satisfied);
  EXPECT_DOUBLE_EQ(e.d_image, 1.0 / 24.0);
  EXPECT_NEAR(e.lhs, 1.4082482904638631, 1e-14);
  EXPECT_NEAR(e.rhs_inner, 4.2, 1e-14);
  EXPECT_NEAR(e.rhs, 2.3662601021279466, 1e-14);
}

TEST(FourPointPairs, TwoFourInnerIsTheDirectFormula) {
  const Problem p = instantiate(example311());
  const auto e = pair(p, "2", "4");
  EXPECT_NEAR(e.rhs_inner, 1201.0 / 240.0, 1e-13);
  EXPECT_NEAR(e.rhs, 2.491332985645417, 1e-14);
  EXPECT_TRUE(e.satisfied());
}

TEST(FourPointPairs, ThreeFour) {
  const Problem p = instantiate(example311());
  const auto e = pair(p, "3", "4");
  EXPECT_NEAR(e.rhs_inner, 10.1, 1e-13);
  EXPECT_NEAR(e.rhs, 3.11869981094276, 1e-13);
  EXPECT_TRUE(e.satisfied());
}

TEST(FourPointPairs, PairsWithEqualImagesAreExempt) {
  const Problem p = instantiate(example311());
  EXPECT_EQ(pair(p, "1", "3").status, PairStatus::exempt);
  EXPECT_EQ(pair(p, "2", "2").status, PairStatus::exempt);
}

TEST(CheckContraction, FourPointFixtureIsSatisfiedEverywhere) {
  const auto e = run(example311());
  EXPECT_TRUE(e.report.satisfied_all);
  EXPECT_FALSE(e.report.sampled);
  EXPECT_EQ(e.report.violations, 0u);
  EXPECT_EQ(e.report.domain_gaps, 0u);
  // ordered pairs pairing 4 with one of 1, 2, 3
  EXPECT_EQ(e.report.evaluations.size(), 6u);
  ASSERT_NE(e.report.find("4", "3"), nullptr);
  ASSERT_TRUE(e.report.min_margin.has_value());
  EXPECT_GT(*e.report.min_margin, 0.0);
}

TEST(CheckContraction, SampledFixtureIsSatisfiedAndFlagged) {
  const auto e = run(example312());
  EXPECT_TRUE(e.report.satisfied_all);
  EXPECT_TRUE(e.report.sampled);
  EXPECT_GT(e.report.evaluations.size(), 0u);
  EXPECT_EQ(e.report.domain_gaps, 0u);
}

TEST(CheckContraction, FinerSampleStillSatisfied) {
  const auto e = run(example312(0.02));
  EXPECT_TRUE(e.report.satisfied_all);
  EXPECT_EQ(e.p.space.size(), 57u);
}

TEST(CheckContraction, IdentityViolatesEveryMovingPair) {
  const auto e = run(identity_control());
  EXPECT_FALSE(e.report.satisfied_all);
  EXPECT_EQ(e.report.violations, 12u);
  EXPECT_LT(*e.report.min_margin, 0.0);
  for (const auto& ev : e.report.evaluations) EXPECT_EQ(ev.status, PairStatus::violated);
}

TEST(CheckContraction, MaskRestrictsThePairs) {
  const Problem p = instantiate(identity_control());
  const auto r = check_contraction(p.config, p.space, p.map, EligibilityMask(p.space.size()));
  EXPECT_TRUE(r.satisfied_all);
  EXPECT_TRUE(r.evaluations.empty());
}

TEST(CheckContraction, FixedPointsUnderKannanAreDomainGaps) {
  const Problem p = instantiate(identity_control());
  const auto cfg = specialize(Variant::kannan_theta_phi, 2.0, std::nullopt, {ThetaKind::sqrt_plus_one, {}});
  const auto r = check_contraction(cfg, p.space, p.map, full_mask(p.space.size()));
  EXPECT_EQ(r.domain_gaps, 12u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.evaluations.front().status, PairStatus::domain_gap);
}

TEST(Specialize, KannanBetas) {
  const auto cfg = specialize(Variant::kannan_theta_phi, 2.0, std::nullopt);
  EXPECT_EQ(cfg.betas, (std::array<double, 4>{0.0, 0.25, 0.25, 0.0}));
  EXPECT_TRUE(config_violations(cfg).empty());
}

TEST(Specialize, ReichBetas) {
  const auto cfg = specialize(Variant::reich_theta_phi, 3.0, std::nullopt);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(cfg.betas[i], 1.0 / 9.0);
  EXPECT_EQ(cfg.betas[3], 0.0);
}

TEST(Specialize, KannanPlainUsesExpAndAPower) {
  const auto cfg = specialize(Variant::kannan_plain, 2.0, 0.2);
  EXPECT_EQ(cfg.theta.kind, ThetaKind::exp);
  EXPECT_EQ(cfg.phi.kind, PhiKind::power_2s_kappa);
  EXPECT_DOUBLE_EQ(*power_exponent(cfg.phi), 0.8);
  EXPECT_EQ(cfg.extra, 0.2);
}

TEST(Specialize, ReichPlainExponent) {
  const auto cfg = specialize(Variant::reich_plain, 2.0, 0.1);
  EXPECT_NEAR(*power_exponent(cfg.phi), 0.6, 1e-15);
}

TEST(Specialize, ParameterRangesAreEnforced) {
  EXPECT_THROW((void)specialize(Variant::kannan_plain, 2.0, 0.25), ConfigError);
  EXPECT_THROW((void)specialize(Variant::kannan_plain, 2.0, std::nullopt), ConfigError);
  EXPECT_THROW((void)specialize(Variant::reich_plain, 2.0, 1.0 / 6.0), ConfigError);
  EXPECT_THROW((void)specialize(Variant::power_k, 2.0, 1.0), ConfigError);
  EXPECT_THROW((void)specialize(Variant::kannan_theta_phi, 1.0, std::nullopt), ConfigError);
  EXPECT_THROW((void)specialize(Variant::general, 2.0, std::nullopt), ConfigError);
}

TEST(ConfigViolations, ListsEveryBrokenCondition) {
  ContractionConfig cfg;
  cfg.s = 2.0;
  cfg.betas = {0.7, 0.6, 0.6, -0.1};
  EXPECT_EQ(config_violations(cfg).size(), 3u);
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(ConfigViolations, BadSStopsTheList) {
  ContractionConfig cfg;
  cfg.s = 0.5;
  cfg.betas = {0.6, 0.6, -0.1, 0.0};
  EXPECT_EQ(config_violations(cfg).size(), 1u);
  cfg.s = std::nan("");
  EXPECT_EQ(config_violations(cfg).size(), 1u);
}

TEST(ConfigViolations, ThirdWeightMustStayBelowOneOverS) {
  ContractionConfig cfg;
  cfg.s = 2.0;
  cfg.betas = {0.0, 0.0, 0.5, 0.0};
  EXPECT_FALSE(config_violations(cfg).empty());
  cfg.betas[2] = 0.49;
  EXPECT_TRUE(config_violations(cfg).empty());
}

TEST(ConfigViolations, PublishedConfigsAreLegal) {
  EXPECT_TRUE(config_violations(example311().config).empty());
  EXPECT_TRUE(config_violations(example312().config).empty());
}

TEST(PlainInequality, ConstantMapIsVacuous) {
  const Problem p = instantiate(example311());
  const SelfMap constant = SelfMap::from_images({0, 0, 0, 0});
  const auto cfg = specialize(Variant::kannan_plain, 2.0, 0.2);
  const auto r = check_plain_inequality(cfg, p.space, constant, full_mask(4));
  EXPECT_TRUE(r.satisfied_all);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.embedding_violations, 0u);
}

TEST(PlainInequality, SwapViolatesKannan) {
  const Problem p = instantiate(swap_control());
  const auto r = check_plain_inequality(p.config, p.space, p.map, full_mask(2));
  EXPECT_FALSE(r.satisfied_all);
  EXPECT_EQ(r.violations, 2u);
  ASSERT_FALSE(r.pairs.empty());
  EXPECT_DOUBLE_EQ(r.pairs.front().lhs, 4.0);
  EXPECT_NEAR(r.pairs.front().rhs, 0.4, 1e-15);
  EXPECT_FALSE(r.pairs.front().satisfied);
}

TEST(PlainInequality, ReichOnTheFourPointTable) {
  const Problem p = instantiate(example311());
  const auto cfg = specialize(Variant::reich_plain, 2.0, 0.1);
  const auto r = check_plain_inequality(cfg, p.space, p.map, eligibility(p.space, p.gates));
  const PlainPair* hit = nullptr;
  for (const auto& q : r.pairs) {
    if (q.x == "3" && q.y == "4") hit = &q;
  }
  ASSERT_NE(hit, nullptr);
  EXPECT_NEAR(hit->lhs, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(hit->rhs, 2.7, 1e-14);
  EXPECT_TRUE(hit->satisfied);
  EXPECT_EQ(hit->embedded, PairStatus::satisfied);
}

TEST(PlainInequality, NeedsAPlainConfig) {
  const Problem p = instantiate(example311());
  EXPECT_THROW((void)check_plain_inequality(p.config, p.space, p.map, full_mask(4)), ConfigError);
}

TEST(Variants, NamesRoundTrip) {
  for (auto v : {Variant::general, Variant::kannan_theta_phi, Variant::reich_theta_phi, Variant::kannan_plain,
                 Variant::reich_plain, Variant::power_k}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  EXPECT_THROW((void)parse_variant("chatterjea"), InputError);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rectfix/solver.hpp"
#include "support/theorem_fixtures.hpp"

using namespace rectfix;
using namespace rectfix::testing;

namespace {

constexpr int kTrials = 200;

std::vector<PhiSpec> builtin_phis() {
  return {{PhiKind::power_k, {0.1}},        {PhiKind::power_k, {0.5}},
          {PhiKind::power_k, {0.9}},        {PhiKind::affine, {2.0, 1.0}},
          {PhiKind::affine, {1.0, 1.0}},    {PhiKind::power_2s_kappa, {2.0, 0.2}},
          {PhiKind::power_3s_lambda, {3.0, 0.1}}};
}

}  // namespace

// --- metric core --------------------------------------------------------------

TEST(MetricProperties, MinimalCoefficientSeparatesHoldFromFail) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto t = random_table(rng, 4 + pick(rng, 3), 0.01, 10.0);
    for (auto cls : {MetricClass::b_metric, MetricClass::rectangular_b}) {
      const auto c = minimal_coefficient(t, cls);
      EXPECT_TRUE(check_class(t, cls, c.value * (1.0 + 1e-7)).holds);
      if (c.binding && c.value > 1.0 + 1e-6) {
        EXPECT_FALSE(check_class(t, cls, c.value * (1.0 - 1e-6)).holds) << trial;
      }
    }
  }
}

TEST(MetricProperties, HoldingIsMonotoneInS) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto t = random_table(rng, 4 + pick(rng, 3), 0.01, 10.0);
    const double s = uniform(rng, 1.0, 4.0);
    const double bigger = s * uniform(rng, 1.0, 3.0);
    for (auto cls : {MetricClass::b_metric, MetricClass::rectangular_b}) {
      if (check_class(t, cls, s).holds) {
        EXPECT_TRUE(check_class(t, cls, bigger).holds) << trial;
      }
    }
  }
}

TEST(MetricProperties, MetricImpliesRectangular) {
  std::mt19937_64 rng(103);
  int metrics = 0;
  for (int trial = 0; trial < 4 * kTrials; ++trial) {
    const auto t = random_table(rng, 4 + pick(rng, 3), 1.0, 2.0);
    if (!check_class(t, MetricClass::metric, 1.0).holds) continue;
    ++metrics;
    EXPECT_TRUE(check_class(t, MetricClass::rectangular, 1.0).holds) << trial;
    EXPECT_TRUE(check_class(t, MetricClass::rectangular_b, 1.0).holds) << trial;
  }
  EXPECT_GT(metrics, 50);
}

TEST(MetricProperties, EnumerationIsExhaustive) {
  std::mt19937_64 rng(104);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto t = random_table(rng, n);
    EXPECT_EQ(check_class(t, MetricClass::rectangular_b, 2.0).inspected,
              n < 4 ? 0 : n * (n - 1) * (n - 2) * (n - 3));
    EXPECT_EQ(check_class(t, MetricClass::b_metric, 2.0).inspected, n < 3 ? 0 : n * (n - 1) * (n - 2));
  }
}

TEST(MetricProperties, SymmetryIsPreservedBySampling) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ns = random_numeric_space(rng, 2 + pick(rng, 8), -5.0, 5.0, uniform(rng, 0.3, 3.0));
    const auto& t = ns.space.table();
    EXPECT_TRUE(validate_table(t).empty());
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) EXPECT_EQ(t(i, j), t(j, i));
    }
  }
}

// --- function families ----------------------------------------------------------

TEST(FamilyProperties, BuiltinPhiStaysBelowTheDiagonalAndConverges) {
  const auto grid = log_grid(1.0 + 1e-6, 1e3, 128);
  for (const auto& phi : builtin_phis()) {
    for (double t : grid) {
      EXPECT_LT(phi_eval(phi, t), t);
      double prev = t;
      double v = t;
      for (std::size_t n = 1; n <= 200; ++n) {
        v = phi_eval(phi, v);
        EXPECT_LE(v, prev);
        prev = v;
      }
      EXPECT_LT(v - 1.0, 1e-6) << to_string(phi.kind) << " t=" << t;
    }
  }
}

TEST(FamilyProperties, BuiltinThetaIsIncreasingAndTendsToOne) {
  for (const ThetaSpec& theta : {ThetaSpec{ThetaKind::sqrt_plus_one, {}}, ThetaSpec{ThetaKind::exp, {}}}) {
    // exp overflows past ~709
    const auto grid = log_grid(1e-9, 500.0, 256);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      EXPECT_LT(theta_eval(theta, grid[i - 1]), theta_eval(theta, grid[i]));
    }
    double prev = theta_eval(theta, 1.0) - 1.0;
    for (int k = 1; k <= 42; ++k) {
      const double gap = theta_eval(theta, std::ldexp(1.0, -k)) - 1.0;
      EXPECT_GT(gap, 0.0);
      EXPECT_LT(gap, prev);
      prev = gap;
    }
    EXPECT_LT(prev, 1e-6);
  }
}

// --- gating ---------------------------------------------------------------------

TEST(GatingProperties, RelaxingGatesNeverShrinksTheMask) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < kTrials; ++trial) {
    const Space s = Space::from_table(random_table(rng, 2 + pick(rng, 5)));
    GateFn alpha;
    alpha.kind = GateKind::table;
    alpha.params = {uniform(rng, 0.0, 1.2)};
    GateFn eta = alpha;
    eta.params = {uniform(rng, 0.8, 2.0)};
    GateFn alpha2 = alpha;
    GateFn eta2 = eta;
    alpha2.params[0] += uniform(rng, 0.0, 0.5);
    eta2.params[0] = std::max(0.0, eta2.params[0] - uniform(rng, 0.0, 0.5));
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        const double a = uniform(rng, 0.0, 2.0);
        const double e = uniform(rng, 0.0, 2.0);
        alpha.entries.push_back({s.label(i), s.label(j), a});
        eta.entries.push_back({s.label(i), s.label(j), e});
        alpha2.entries.push_back({s.label(i), s.label(j), a + uniform(rng, 0.0, 0.5)});
        eta2.entries.push_back({s.label(i), s.label(j), std::max(0.0, e - uniform(rng, 0.0, 0.5))});
      }
    }
    const auto tight = eligibility(s, {alpha, eta});
    const auto loose = eligibility(s, {alpha2, eta2});
    for (const auto& [i, j] : tight.pairs()) EXPECT_TRUE(loose(i, j)) << trial;
  }
}

TEST(GatingProperties, ConstantImageMapPassesT1) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < kTrials; ++trial) {
    const std::size_t n = 2 + pick(rng, 5);
    const Space s = Space::from_table(random_table(rng, n));
    const std::size_t p = pick(rng, n);
    GateFn alpha;
    alpha.kind = GateKind::table;
    alpha.params = {0.0};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) alpha.entries.push_back({s.label(i), s.label(j), uniform(rng, 0.0, 2.0)});
    }
    alpha.entries.insert(alpha.entries.begin(), {s.label(p), s.label(p), uniform(rng, 1.0, 2.0)});
    const auto r = check_admissibility(s, SelfMap::from_images(std::vector<std::size_t>(n, p)),
                                       {alpha, constant_gate(2.0)});
    EXPECT_TRUE(r.t1.holds) << trial;
  }
}

TEST(GatingProperties, InvariantSubsetGatesAreAdmissible) {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < kTrials; ++trial) {
    const std::size_t n = 2 + pick(rng, 5);
    const Space s = Space::from_table(random_table(rng, n));
    const auto images = random_map(rng, n);
    std::vector<bool> seed(n, false);
    seed[pick(rng, n)] = true;
    const auto gates = subset_gates(s, invariant_closure(images, seed), 0.5, 2.0);
    EXPECT_TRUE(check_admissibility(s, SelfMap::from_images(images), gates).holds()) << trial;
  }
}

// --- contraction ----------------------------------------------------------------

TEST(ContractionProperties, PlainKannanAndReichEmbed) {
  std::mt19937_64 rng(301);
  int satisfied = 0;
  for (int trial = 0; trial < 4 * kTrials; ++trial) {
    const std::size_t n = 2 + pick(rng, 5);
    const auto t = random_table(rng, n, 0.5, 5.0);
    const Space s = Space::from_table(t);
    const double coef = std::max(1.0, minimal_coefficient(t, MetricClass::rectangular_b).value);
    const double sv = coef * uniform(rng, 1.01, 1.5);
    const auto images = rng() % 2 ? two_point_image_map(rng, n, 0, n - 1) : random_map(rng, n);
    const SelfMap m = SelfMap::from_images(images);
    const bool kannan = rng() % 2;
    const double bound = kannan ? 1.0 / (2.0 * sv) : 1.0 / (3.0 * sv);
    const auto cfg = specialize(kannan ? Variant::kannan_plain : Variant::reich_plain, sv,
                                bound * uniform(rng, 0.05, 0.99));
    const auto plain = check_plain_inequality(cfg, s, m, full_mask(n));
    if (!plain.satisfied_all) continue;
    ++satisfied;
    EXPECT_EQ(plain.embedding_violations, 0u) << trial;
    EXPECT_TRUE(check_contraction(cfg, s, m, full_mask(n)).satisfied_all) << trial;
  }
  EXPECT_GT(satisfied, 20);
}

TEST(ContractionProperties, RaisingThePowerNeverBreaksAPair) {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < kTrials; ++trial) {
    const RandomProblem p = random_problem(rng);
    const double k = uniform(rng, 0.05, 0.9);
    const double k2 = uniform(rng, k, 0.99);
    const ThetaSpec theta = random_theta(rng);
    const auto lo = specialize(Variant::power_k, p.cfg.s, k, theta);
    const auto hi = specialize(Variant::power_k, p.cfg.s, k2, theta);
    const auto mask = full_mask(p.space.size());
    for (const auto& [i, j] : mask.pairs()) {
      const auto a = evaluate_pair(lo, p.space, p.map, p.space.element(i), p.space.element(j));
      const auto b = evaluate_pair(hi, p.space, p.map, p.space.element(i), p.space.element(j));
      if (a.status == PairStatus::satisfied) {
        EXPECT_EQ(b.status, PairStatus::satisfied) << trial;
      }
    }
  }
}

TEST(ContractionProperties, PairsWithEqualImagesAreNeverViolations) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < kTrials; ++trial) {
    const RandomProblem p = random_problem(rng);
    const auto r = check_contraction(p.cfg, p.space, p.map, full_mask(p.space.size()));
    std::size_t equal_images = 0;
    for (std::size_t i = 0; i < p.space.size(); ++i) {
      for (std::size_t j = 0; j < p.space.size(); ++j) {
        if (p.space.table()(p.images[i], p.images[j]) == 0.0) ++equal_images;
      }
    }
    EXPECT_EQ(r.exempt, equal_images);
    for (const auto& e : r.evaluations) EXPECT_GT(e.d_image, 0.0);
  }
}

TEST(ContractionProperties, PowerFormIsMonotoneAcrossPairs) {
  std::mt19937_64 rng(304);
  for (int trial = 0; trial < kTrials / 2; ++trial) {
    const RandomProblem p = random_problem(rng);
    const auto cfg = specialize(Variant::power_k, p.cfg.s, uniform(rng, 0.1, 0.9), random_theta(rng));
    const auto& d = p.space.table();
    const auto pairs = full_mask(p.space.size()).pairs();
    for (const auto& [x, y] : pairs) {
      const auto a = evaluate_pair(cfg, p.space, p.map, p.space.element(x), p.space.element(y));
      if (a.status != PairStatus::satisfied) continue;
      for (const auto& [u, v] : pairs) {
        if (!(d(x, y) <= d(u, v)) || !(d(p.images[x], p.images[y]) >= d(p.images[u], p.images[v]))) continue;
        const auto b = evaluate_pair(cfg, p.space, p.map, p.space.element(u), p.space.element(v));
        EXPECT_TRUE(b.status == PairStatus::satisfied || b.status == PairStatus::exempt) << trial;
      }
    }
  }
}

// --- solver ---------------------------------------------------------------------

TEST(SolverProperties, TracesOfContractionsCarryTheDecayBounds) {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < kTrials; ++trial) {
    const RandomProblem p = theorem_problem(rng);
    for (std::size_t x0 : check_hypotheses(p).starts) {
      const auto t = picard(p.space, p.map, p.gates, p.cfg, p.space.element(x0));
      const auto cert = certify_trace(t, p.cfg);
      for (const auto& issue : cert.issues) {
        EXPECT_TRUE(issue.check != "strict-decrease" && issue.check != "ratio-bound" && issue.check != "envelope")
            << p.kind << " trial " << trial << " " << issue.check << " at " << issue.index;
      }
      for (std::size_t n = 1; n < t.envelope.size(); ++n) EXPECT_LE(t.envelope[n], t.envelope[n - 1]);
    }
  }
}

TEST(SolverProperties, OrbitsAreDistinctUntilTheFixedPoint) {
  std::mt19937_64 rng(402);
  for (int trial = 0; trial < 2 * kTrials; ++trial) {
    const auto n = 2 + pick(rng, 6);
    const Space s = Space::from_table(random_table(rng, n));
    const auto images = random_map(rng, n);
    const SelfMap m = SelfMap::from_images(images);
    const auto t = picard(s, m, {constant_gate(1.0), constant_gate(1.0)},
                          specialize(Variant::power_k, 2.0, 0.5), s.element(pick(rng, n)));
    std::vector<std::size_t> seen;
    for (const auto& e : t.orbit) {
      EXPECT_EQ(std::count(seen.begin(), seen.end(), e.index), 0) << trial;
      seen.push_back(e.index);
    }
    if (t.status == TraceStatus::converged) {
      EXPECT_EQ(images[t.last().index], t.last().index);
    } else {
      EXPECT_EQ(t.status, TraceStatus::cycle_detected);
      EXPECT_NE(images[t.last().index], t.last().index);
    }
  }
}

TEST(SolverProperties, HypothesesGiveOneFixedPointReachedFromEveryStart) {
  std::mt19937_64 rng(403);
  for (int trial = 0; trial < kTrials; ++trial) {
    const RandomProblem p = theorem_problem(rng);
    const auto fix = fixed_points(p.space, p.map);
    ASSERT_FALSE(fix.points.empty());
    bool gate = true;
    for (auto z : fix.points) {
      for (auto u : fix.points) {
        if (z != u && !evaluate_gates(p.space, p.gates, p.space.element(z), p.space.element(u)).eligible()) {
          gate = false;
        }
      }
    }
    if (gate) {
      EXPECT_TRUE(fix.unique()) << p.kind << " trial " << trial;
    }
    for (std::size_t x0 : check_hypotheses(p).starts) {
      const auto t = picard(p.space, p.map, p.gates, p.cfg, p.space.element(x0));
      ASSERT_EQ(t.status, TraceStatus::converged) << p.kind << " trial " << trial;
      EXPECT_TRUE(std::count(fix.points.begin(), fix.points.end(), t.last().index)) << trial;
      if (gate) {
        EXPECT_EQ(t.last().index, fix.points.front());
      }
    }
  }
}

TEST(SolverProperties, PropertyPUnderTheHypotheses) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < kTrials / 2; ++trial) {
    const RandomProblem p = theorem_problem(rng);
    if (p.kind == "gated") continue;
    EXPECT_TRUE(property_p(p.space, p.map, 6).holds) << p.kind << " trial " << trial;
  }
}

TEST(SolverProperties, SandwichTailBracketsTheLimitDistance) {
  std::mt19937_64 rng(405);
  int checked = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const std::size_t n = 3 + pick(rng, 4);
    const NumericSpace ns = random_numeric_space(rng, n, 0.0, 10.0, 1.0);
    const std::size_t z = pick(rng, n);
    const auto images = pull_toward(rng, ns.values, z, 0.5);
    const SelfMap m = SelfMap::from_images(images);
    const auto t = picard(ns.space, m, {constant_gate(1.0), constant_gate(1.0)},
                          specialize(Variant::power_k, 2.0, 0.5), ns.space.element(pick(rng, n)));
    ASSERT_EQ(t.status, TraceStatus::converged);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == t.last().index) continue;
      const auto r = sandwich_check(t, ns.space, ns.space.element(y), 1.0);
      EXPECT_EQ(r.limit_distance, ns.space.distance(t.last(), ns.space.element(y)));
      EXPECT_LE(r.tail_min, r.limit_distance);
      EXPECT_GE(r.tail_max, r.limit_distance);
      EXPECT_EQ(r.holds, r.tail_min >= r.limit_distance && r.tail_max <= r.limit_distance);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

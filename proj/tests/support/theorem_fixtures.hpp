#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "support/random_fixtures.hpp"

namespace rectfix::testing {

/// A random finite problem instance. `images` mirrors `map` for oracles that
/// must not go through the library.
struct RandomProblem {
  std::string kind;
  Space space;
  std::vector<std::size_t> images;
  SelfMap map;
  GatePair gates;
  ContractionConfig cfg;
};

/// Draws one candidate; most but not all of them satisfy the hypotheses.
///   pull   numeric points, T pulls toward one point, all pairs eligible
///   pair   any table, image of diameter eps, all pairs eligible
///   gated  any table and map, alpha >= 1 only on a T-invariant subset
inline RandomProblem random_problem(std::mt19937_64& rng) {
  RandomProblem out;
  const std::size_t n = 3 + pick(rng, 4);
  const int mode = static_cast<int>(rng() % 3);
  DistanceTable table;
  if (mode == 0) {
    out.kind = "pull";
    const double exponent = std::vector<double>{0.5, 1.0, 2.0}[pick(rng, 3)];
    const NumericSpace ns = random_numeric_space(rng, n, 0.0, 10.0, exponent);
    table = ns.space.table();
    out.images = pull_toward(rng, ns.values, pick(rng, n), uniform(rng, 0.02, 0.4));
  } else {
    table = random_table(rng, n, 1.0, 4.0);
    if (mode == 1) {
      out.kind = "pair";
      const std::size_t p = pick(rng, n);
      const std::size_t q = (p + 1 + pick(rng, n - 1)) % n;
      auto rows = table.rows();
      const double eps = uniform(rng, 1e-4, 1e-2);
      rows[p][q] = rows[q][p] = eps;
      table = DistanceTable(table.labels(), rows);
      out.images = two_point_image_map(rng, n, p, q);
    } else {
      out.kind = "gated";
      out.images = random_map(rng, n);
    }
  }
  out.space = Space::from_table(table);
  out.map = SelfMap::from_images(out.images);

  if (mode == 2) {
    std::vector<bool> seed(n, false);
    seed[pick(rng, n)] = true;
    out.gates = subset_gates(out.space, invariant_closure(out.images, seed), uniform(rng, 0.0, 0.9),
                             uniform(rng, 1.5, 3.0));
  } else {
    out.gates = {constant_gate(1.0), constant_gate(uniform(rng, 1.5, 3.0))};
  }

  const double coef = minimal_coefficient(table, MetricClass::rectangular_b).value;
  out.cfg = random_config(rng, std::max(coef, 1.0) * uniform(rng, 1.05, 2.0));
  return out;
}

struct HypothesisCheck {
  bool axioms = false;
  bool admissible = false;
  bool contraction = false;
  std::vector<std::size_t> starts;  // points x0 with an eligible (x0, T x0)

  [[nodiscard]] bool all() const { return axioms && admissible && contraction && !starts.empty(); }
};

/// Every hypothesis of the existence theorem on a finite problem. Pairs the
/// contraction check cannot evaluate disqualify the problem.
inline HypothesisCheck check_hypotheses(const RandomProblem& p) {
  HypothesisCheck h;
  h.axioms = check_class(p.space.table(), MetricClass::rectangular_b, p.cfg.s).holds;
  h.admissible = check_admissibility(p.space, p.map, p.gates).holds();
  const auto mask = eligibility(p.space, p.gates);
  const auto r = check_contraction(p.cfg, p.space, p.map, mask);
  h.contraction = r.satisfied_all && r.domain_gaps == 0 && r.overflows == 0;
  for (std::size_t i = 0; i < p.space.size(); ++i) {
    if (evaluate_gates(p.space, p.gates, p.space.element(i), p.space.element(p.images[i])).eligible()) {
      h.starts.push_back(i);
    }
  }
  return h;
}

/// Draws until a problem passes every hypothesis.
inline RandomProblem theorem_problem(std::mt19937_64& rng, std::size_t* draws = nullptr) {
  for (;;) {
    if (draws) ++*draws;
    RandomProblem p = random_problem(rng);
    if (check_hypotheses(p).all()) return p;
  }
}

}  // namespace rectfix::testing

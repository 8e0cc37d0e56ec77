#include "rectfix/fixtures.hpp"

namespace rectfix {

namespace {

GateFn gate(GateKind kind, std::vector<double> params = {}) {
  GateFn g;
  g.kind = kind;
  g.params = std::move(params);
  return g;
}

GateFn piecewise_gate(double lo, double hi, GateFn inside, GateFn outside) {
  GateFn g = gate(GateKind::piecewise, {lo, hi});
  g.children = {std::move(inside), std::move(outside)};
  return g;
}

GatePair constant_gates() { return {constant_gate(1.0), constant_gate(1.0)}; }

const std::map<std::string, bool> kCompleteness{{"alpha-eta-complete", true},
                                               {"alpha-eta-continuous", true}};

}  // namespace

Fixture example311() {
  Fixture f;
  f.name = "example311";
  f.notes =
      "Eligible unordered pairs with d(Tx,Ty) > 0 are {1,4}, {2,4} and {3,4}. "
      "The printed inner value 3.65 for the pair (2,4) does not follow from this table: "
      "0.4*6 + 0.1*(1/24) + 0.3*6 + 0.2*4 = 1201/240 = 5.00417, so phi(theta(.)) is 2.49133 "
      "rather than the printed 2.27.";
  f.space = DistanceTable({"1", "2", "3", "4"}, {{0.0, 1.0 / 24.0, 3.0, 4.0},
                                                 {1.0 / 24.0, 0.0, 5.0, 6.0},
                                                 {3.0, 5.0, 0.0, 18.0},
                                                 {4.0, 6.0, 18.0, 0.0}});
  f.map = MapTable{{"1", "1"}, {"2", "1"}, {"3", "1"}, {"4", "2"}};
  f.gates = {gate(GateKind::ratio_sum), gate(GateKind::ratio_absdiff)};
  f.config.s = 2.0;
  f.config.betas = {0.4, 0.1, 0.3, 0.2};
  f.config.theta = {ThetaKind::sqrt_plus_one, {}};
  f.config.phi = {PhiKind::affine, {2.0, 1.0}};
  f.config.variant = Variant::general;
  f.metric_class = MetricClass::rectangular_b;
  f.assumptions = kCompleteness;
  return f;
}

Fixture example312(double grid_step) {
  Fixture f;
  f.name = "example312";
  f.notes =
      "B = [1, 2] is represented by a finite grid; contraction and admissibility results on "
      "it are sampled evidence. Betas (1, 0, 0, 0).";
  const std::vector<DistanceOverride> overrides{
      {"1/2", "1/3", 0.05}, {"1/4", "1/5", 0.05}, {"1/6", "1/7", 0.05},
      {"1/2", "1/4", 0.08}, {"1/3", "1/7", 0.08}, {"1/5", "1/6", 0.08},
      {"1/2", "1/6", 0.4},  {"1/3", "1/4", 0.4},  {"1/5", "1/7", 0.4},
      {"1/2", "1/5", 0.24}, {"1/3", "1/6", 0.24}, {"1/4", "1/7", 0.24},
      {"1/2", "1/7", 0.15}, {"1/3", "1/5", 0.15}, {"1/4", "1/6", 0.15},
  };
  RuleSpaceSpec space;
  space.rule = DistanceRule(2.0, overrides);
  space.points = {"1/2", "1/3", "1/4", "1/5", "1/6", "1/7"};
  space.grid = GridRecipe{1.0, 2.0, grid_step};
  f.space = space;

  MapRule map{MapRuleKind::piecewise, {1.0, 2.0},
              {MapRule{MapRuleKind::power, {1.0 / 6.0}, {}}, MapRule{MapRuleKind::constant, {1.0}, {}}}};
  f.map = map;
  f.gates = {piecewise_gate(1.0, 2.0, gate(GateKind::sinh_sum), gate(GateKind::inv_exp_sum)),
             piecewise_gate(1.0, 2.0, gate(GateKind::quarter_sum), gate(GateKind::one_plus_exp_neg))};
  f.config.s = 3.0;
  f.config.betas = {1.0, 0.0, 0.0, 0.0};
  f.config.theta = {ThetaKind::sqrt_plus_one, {}};
  f.config.phi = {PhiKind::affine, {1.0, 1.0}};
  f.config.variant = Variant::general;
  f.metric_class = MetricClass::rectangular_b;
  f.assumptions = kCompleteness;
  return f;
}

Fixture identity_control() {
  Fixture f = example311();
  f.name = "identity-control";
  f.notes = "The identity map is an isometry and cannot contract.";
  f.map = MapTable{{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}};
  f.gates = constant_gates();
  f.config = specialize(Variant::power_k, 2.0, 0.5, {ThetaKind::exp, {}});
  f.assumptions = {};
  return f;
}

Fixture swap_control() {
  Fixture f;
  f.name = "swap-control";
  f.notes = "Isometric swap of two points: no fixed point, no contraction.";
  f.space = DistanceTable({"a", "b"}, {{0.0, 1.0}, {1.0, 0.0}});
  f.map = MapTable{{"a", "b"}, {"b", "a"}};
  f.gates = constant_gates();
  f.config = specialize(Variant::kannan_plain, 2.0, 0.2);
  f.metric_class = MetricClass::rectangular_b;
  return f;
}

Fixture cycle_control() {
  Fixture f;
  f.name = "cycle-control";
  f.notes = "3-cycle a -> b -> c -> a: Fix(T) is empty while Fix(T^3) is everything.";
  f.space = DistanceTable({"a", "b", "c"}, {{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}});
  f.map = MapTable{{"a", "b"}, {"b", "c"}, {"c", "a"}};
  f.gates = constant_gates();
  f.config = specialize(Variant::kannan_plain, 2.0, 0.2);
  f.metric_class = MetricClass::rectangular_b;
  return f;
}

std::vector<std::pair<std::string, Fixture>> bundled_fixtures() {
  return {{"example311", example311()},
          {"example312", example312()},
          {"identity-control", identity_control()},
          {"swap-control", swap_control()},
          {"cycle-control", cycle_control()}};
}

std::optional<Fixture> example_fixture(std::string_view id, std::optional<double> grid_step) {
  if (id == "3.11") return example311();
  if (id == "3.12") return example312(grid_step.value_or(0.1));
  return std::nullopt;
}

}  // namespace rectfix

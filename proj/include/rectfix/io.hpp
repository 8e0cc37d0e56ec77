#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rectfix/contraction.hpp"
#include "rectfix/function_families.hpp"
#include "rectfix/gating.hpp"
#include "rectfix/metric_core.hpp"
#include "rectfix/self_map.hpp"
#include "rectfix/solver.hpp"
#include "rectfix/space.hpp"

namespace rectfix {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, floating point numbers with 17 significant
/// digits, arrays of scalars on one line. Dumping a reparsed dump is a no-op.
[[nodiscard]] std::string canonical_dump(const Json& j);

/// Throws InputError with the parser message on malformed text.
[[nodiscard]] Json parse_json(const std::string& text);
[[nodiscard]] Json read_json_file(const std::filesystem::path& path);

// Every *_from_json throws InputError on a missing or mistyped field.

[[nodiscard]] Json to_json(const DistanceTable& table);
[[nodiscard]] DistanceTable table_from_json(const Json& j);

[[nodiscard]] Json to_json(const SpaceSpec& spec);
[[nodiscard]] SpaceSpec space_from_json(const Json& j);

[[nodiscard]] Json to_json(const ThetaSpec& spec);
[[nodiscard]] Json to_json(const PhiSpec& spec);
[[nodiscard]] ThetaSpec theta_from_json(const Json& j);
[[nodiscard]] PhiSpec phi_from_json(const Json& j);

[[nodiscard]] Json to_json(const MapRule& rule);
[[nodiscard]] MapRule map_rule_from_json(const Json& j);
[[nodiscard]] Json to_json(const MapSpec& spec);
[[nodiscard]] MapSpec map_from_json(const Json& j);

[[nodiscard]] Json to_json(const GateFn& gate);
[[nodiscard]] GateFn gate_from_json(const Json& j);
[[nodiscard]] Json to_json(const GatePair& gates);
[[nodiscard]] GatePair gates_from_json(const Json& j);

[[nodiscard]] Json to_json(const ContractionConfig& cfg);
[[nodiscard]] ContractionConfig config_from_json(const Json& j);

/// A complete, self-describing problem instance.
struct Fixture {
  int version = 1;
  std::string name;
  std::string notes;
  SpaceSpec space;
  MapSpec map;
  GatePair gates;
  ContractionConfig config;
  MetricClass metric_class = MetricClass::rectangular_b;
  // hypotheses taken on trust, e.g. "alpha-eta-complete"
  std::map<std::string, bool> assumptions;

  bool operator==(const Fixture&) const = default;
};

inline constexpr int kFixtureVersion = 1;

[[nodiscard]] Json to_json(const Fixture& f);
/// Validates the config (ConfigError) but resolves no labels; see instantiate.
[[nodiscard]] Fixture fixture_from_json(const Json& j);
[[nodiscard]] Fixture load_fixture(const std::filesystem::path& path);

/// The fixture's objects, cross-references resolved.
struct Problem {
  Space space;
  SelfMap map;
  GatePair gates;
  ContractionConfig config;
  MetricClass metric_class = MetricClass::rectangular_b;
};

/// `grid_step` overrides the sample step of a rule-based space.
[[nodiscard]] Problem instantiate(const Fixture& f, std::optional<double> grid_step = std::nullopt);

// --- reports -----------------------------------------------------------------

[[nodiscard]] Json to_json(const AxiomReport& r, const DistanceTable& table);
[[nodiscard]] Json to_json(const AdmissibilityReport& r);
[[nodiscard]] Json to_json(const PairEvaluation& e);
[[nodiscard]] Json to_json(const ViolationReport& r);
[[nodiscard]] Json to_json(const PlainReport& r);
[[nodiscard]] Json to_json(const FamilyReport& r);
[[nodiscard]] Json to_json(const Certificate& c);

/// One record per orbit element:
/// {n, x, d_n, theta_d_n, envelope, alpha_ok, eta_ok}. For the final element
/// d_n is the residual d(x_N, T x_N); missing values are null.
[[nodiscard]] std::vector<Json> trace_records(const IterationTrace& trace);

}  // namespace rectfix

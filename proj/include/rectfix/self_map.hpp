#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rectfix/space.hpp"

namespace rectfix {

enum class MapRuleKind { identity, constant, affine, power, piecewise };

[[nodiscard]] std::string_view to_string(MapRuleKind kind);
[[nodiscard]] MapRuleKind parse_map_rule_kind(std::string_view name);

/// Closed-form T evaluated on numeric points.
///
///   identity              x
///   constant  [c]         c
///   affine    [a, b]      a x + b
///   power     [p]         x^p (x >= 0)
///   piecewise             params = (lo0, hi0, lo1, hi1, ...); children hold
///                         one rule per interval plus a trailing "otherwise"
///                         rule. The first interval containing x wins.
struct MapRule {
  MapRuleKind kind = MapRuleKind::identity;
  std::vector<double> params;
  std::vector<MapRule> children;

  bool operator==(const MapRule&) const = default;

  [[nodiscard]] double operator()(double x) const;
};

/// Throws InputError on malformed parameters.
void check_rule(const MapRule& rule);

// label -> label
using MapTable = std::map<std::string, std::string>;
using MapSpec = std::variant<MapTable, MapRule>;

/// The self map T. Table maps are exact on a finite point set; rule maps are
/// evaluated on the value of an element and may leave the sample.
class SelfMap {
 public:
  /// Every point of `space` must have an image that is also a point.
  static SelfMap from_table(const Space& space, const MapTable& table);
  static SelfMap from_images(std::vector<std::size_t> images);
  static SelfMap from_rule(MapRule rule);
  static SelfMap from_spec(const Space& space, const MapSpec& spec);

  [[nodiscard]] bool is_table() const { return std::holds_alternative<std::vector<std::size_t>>(repr_); }
  /// Throws Unsupported for rule maps.
  [[nodiscard]] const std::vector<std::size_t>& images() const;

  [[nodiscard]] Element apply(const Space& space, const Element& x) const;

 private:
  std::variant<std::vector<std::size_t>, MapRule> repr_;
};

}  // namespace rectfix

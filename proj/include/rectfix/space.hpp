#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rectfix/metric_core.hpp"

namespace rectfix {

inline constexpr std::size_t kOffSample = std::numeric_limits<std::size_t>::max();

/// A point of the ambient space. Sample points carry their index; images of
/// rule-based maps may fall off the sample and are known only by value.
struct Element {
  std::size_t index = kOffSample;
  double value = std::numeric_limits<double>::quiet_NaN();

  [[nodiscard]] bool on_sample() const { return index != kOffSample; }
};

/// Evenly spaced labels start, start+step, ..., stop (inclusive when stop is
/// hit within a small fraction of step). Points are rounded to 12 significant
/// digits, so 1 + 7 * 0.1 becomes "1.7".
struct GridRecipe {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.1;

  bool operator==(const GridRecipe&) const = default;
};

[[nodiscard]] std::vector<std::string> grid_labels(const GridRecipe& grid);

/// Recipe for a continuous space handled through a finite sample.
struct RuleSpaceSpec {
  DistanceRule rule;
  std::vector<std::string> points;
  std::optional<GridRecipe> grid;

  bool operator==(const RuleSpaceSpec&) const = default;
};

using SpaceSpec = std::variant<DistanceTable, RuleSpaceSpec>;

/// The space (X, d) as seen by gating, contraction and the solver.
///
/// Table spaces are closed: every element is a sample index. Rule spaces
/// evaluate the distance rule on demand, so images of a rule-based map can
/// leave the sample; `table()` is the materialized sample either way.
class Space {
 public:
  static Space from_table(DistanceTable table);
  static Space from_rule(const RuleSpaceSpec& spec);
  static Space from_spec(const SpaceSpec& spec);

  [[nodiscard]] std::size_t size() const { return table_.size(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return table_.label(i); }
  [[nodiscard]] const DistanceTable& table() const { return table_; }
  [[nodiscard]] bool sampled() const { return rule_.has_value(); }
  [[nodiscard]] bool numeric() const { return numeric_; }

  [[nodiscard]] Element element(std::size_t i) const;
  [[nodiscard]] std::optional<Element> find(const std::string& label) const;
  /// Element for a numeric value, snapped to a sample index on exact match.
  [[nodiscard]] Element at_value(double value) const;

  /// Throws Unsupported when an off-sample element meets a table space.
  [[nodiscard]] double distance(const Element& a, const Element& b) const;

  /// Tables compare indices; rule spaces compare values within `tol`.
  [[nodiscard]] bool same(const Element& a, const Element& b, double tol) const;

  [[nodiscard]] std::string name(const Element& e) const;

 private:
  DistanceTable table_;
  std::vector<double> values_;
  std::optional<DistanceRule> rule_;
  bool numeric_ = false;
};

}  // namespace rectfix

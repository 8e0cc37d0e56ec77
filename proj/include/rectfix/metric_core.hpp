#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectfix/tolerance.hpp"

namespace rectfix {

/// Finite point set with a dense distance matrix.
///
/// Labels are opaque strings; nothing in this class interprets "1/5" as a
/// number. The constructor only enforces shape (square matrix, one row per
/// label, unique labels); the metric axioms are checked by validate_table.
class DistanceTable {
 public:
  DistanceTable() = default;

  /// Throws InputError when the matrix is not n x n or labels repeat.
  DistanceTable(std::vector<std::string> labels,
                const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const;

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return dist_[i * labels_.size() + j];
  }

  [[nodiscard]] std::vector<std::vector<double>> rows() const;

  bool operator==(const DistanceTable&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

struct TableDefect {
  enum class Kind { asymmetric, nonzero_diagonal, zero_off_diagonal, negative, non_finite };
  Kind kind;
  std::size_t i;
  std::size_t j;
  double value;
};

[[nodiscard]] std::string_view to_string(TableDefect::Kind kind);

/// Every violation of symmetry, identity of indiscernibles, nonnegativity and
/// finiteness, in row-major order. Empty means the table is a valid space.
[[nodiscard]] std::vector<TableDefect> validate_table(const DistanceTable& table);

enum class MetricClass { metric, b_metric, rectangular, rectangular_b };

[[nodiscard]] std::string_view to_string(MetricClass cls);
/// Accepts "metric", "b-metric", "rectangular", "rectangular-b".
[[nodiscard]] MetricClass parse_metric_class(std::string_view name);
[[nodiscard]] bool is_rectangular(MetricClass cls);
// metric and rectangular have their coefficient pinned at 1.
[[nodiscard]] bool is_parameterized(MetricClass cls);
// 3 for triangle classes (x, y, z), 4 for rectangular ones (x, y, u, v).
[[nodiscard]] std::size_t tuple_arity(MetricClass cls);

/// One inspected inequality d(x,y) <= s * path. The tuple is (x, y, z) or
/// (x, y, u, v) with the path x -> z -> y or x -> u -> v -> y.
struct Witness {
  std::vector<std::size_t> tuple;
  double lhs = 0.0;
  double path = 0.0;
  double ratio = 0.0;
};

struct AxiomReport {
  MetricClass metric_class = MetricClass::metric;
  double coefficient = 1.0;
  bool holds = true;
  // Too few points for a single tuple; holds is then true by vacuity.
  bool vacuous = false;
  // Set by callers that materialized the table from a rule on a sample.
  bool sampled = false;
  double minimal_coefficient = 1.0;
  double max_ratio = 0.0;
  std::optional<Witness> worst_witness;
  std::optional<Witness> first_violation;
  std::size_t inspected = 0;
  std::size_t violations = 0;
};

/// Exhaustive check of the class inequality at coefficient `s`.
///
/// Enumerates ordered tuples of pairwise distinct points: n(n-1)(n-2) triples
/// for the triangle classes and n(n-1)(n-2)(n-3) quadruples for the
/// rectangular ones (both orders of the intermediates). Ties in the worst
/// ratio go to the lexicographically smallest tuple.
///
/// Throws InputError when validate_table reports defects and ConfigError
/// when s < 1, or s != 1 for an unparameterized class.
[[nodiscard]] AxiomReport check_class(const DistanceTable& table, MetricClass cls, double s,
                                      const Tolerance& tol = {});

struct CoefficientResult {
  double value = 1.0;
  bool vacuous = false;
  std::optional<Witness> binding;
};

/// Smallest s >= 1 for which check_class holds (up to slack): the sup of
/// d(x,y)/path over all tuples, clamped below at 1.
[[nodiscard]] CoefficientResult minimal_coefficient(const DistanceTable& table, MetricClass cls);

struct TupleCheck {
  double lhs = 0.0;
  double path = 0.0;
  double rhs = 0.0;  // s * path
  bool holds = true;
};

/// Evaluates one tuple (labels resolved by the caller). Used to confirm
/// specific published witnesses rather than the worst one.
[[nodiscard]] TupleCheck evaluate_tuple(const DistanceTable& table, MetricClass cls, double s,
                                        std::span<const std::size_t> tuple,
                                        const Tolerance& tol = {});

// --- rule layer -----------------------------------------------------------

/// Parses numeric labels: integers, decimals and simple fractions "p/q".
[[nodiscard]] std::optional<double> parse_numeric_label(std::string_view label);

/// Shortest decimal label that parses back to `value` (e.g. "1.1").
[[nodiscard]] std::string format_label(double value);

struct DistanceOverride {
  std::string x;
  std::string y;
  double d = 0.0;

  bool operator==(const DistanceOverride&) const = default;
};

/// d(x,y) = |x - y|^exponent on numeric points, except on the listed pairs
/// whose value is given explicitly (in either order).
class DistanceRule {
 public:
  DistanceRule() = default;
  /// Throws InputError on non-numeric override labels.
  DistanceRule(double exponent, std::vector<DistanceOverride> overrides);

  [[nodiscard]] double exponent() const { return exponent_; }
  [[nodiscard]] const std::vector<DistanceOverride>& overrides() const { return overrides_; }

  [[nodiscard]] double operator()(double x, double y) const;

  bool operator==(const DistanceRule& other) const {
    return exponent_ == other.exponent_ && overrides_ == other.overrides_;
  }

 private:
  struct Resolved {
    double x;
    double y;
    double d;
  };
  double exponent_ = 1.0;
  std::vector<DistanceOverride> overrides_;
  std::vector<Resolved> resolved_;
};

/// Materializes `rule` on the numeric labels in `points`.
/// Throws InputError on duplicate or non-numeric labels and when the rule
/// yields a negative or non-finite value (the offending pair is named).
[[nodiscard]] DistanceTable sample_space(const DistanceRule& rule,
                                         const std::vector<std::string>& points);

}  // namespace rectfix

#include "rectfix/metric_core.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "rectfix/errors.hpp"

namespace rectfix {

DistanceTable::DistanceTable(std::vector<std::string> labels,
                             const std::vector<std::vector<double>>& rows)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (rows.size() != n) {
    throw InputError("distance matrix has " + std::to_string(rows.size()) + " rows for " +
                     std::to_string(n) + " points");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw InputError("duplicate point label '" + l + "'");
  }
  dist_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("distance matrix row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    dist_.insert(dist_.end(), rows[i].begin(), rows[i].end());
  }
}

std::optional<std::size_t> DistanceTable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<double>> DistanceTable::rows() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

std::string_view to_string(TableDefect::Kind kind) {
  switch (kind) {
    case TableDefect::Kind::asymmetric: return "asymmetric";
    case TableDefect::Kind::nonzero_diagonal: return "nonzero-diagonal";
    case TableDefect::Kind::zero_off_diagonal: return "zero-off-diagonal";
    case TableDefect::Kind::negative: return "negative";
    case TableDefect::Kind::non_finite: return "non-finite";
  }
  return "unknown";
}

std::vector<TableDefect> validate_table(const DistanceTable& table) {
  using Kind = TableDefect::Kind;
  std::vector<TableDefect> defects;
  const std::size_t n = table.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = table(i, j);
      if (!std::isfinite(v)) {
        defects.push_back({Kind::non_finite, i, j, v});
        continue;
      }
      if (v < 0.0) defects.push_back({Kind::negative, i, j, v});
      if (i == j && v != 0.0) defects.push_back({Kind::nonzero_diagonal, i, j, v});
      if (i != j && v == 0.0) defects.push_back({Kind::zero_off_diagonal, i, j, v});
      // report each asymmetric pair once, at (i, j) with i < j
      if (i < j && std::isfinite(table(j, i)) && v != table(j, i)) {
        defects.push_back({Kind::asymmetric, i, j, v});
      }
    }
  }
  return defects;
}

std::string_view to_string(MetricClass cls) {
  switch (cls) {
    case MetricClass::metric: return "metric";
    case MetricClass::b_metric: return "b-metric";
    case MetricClass::rectangular: return "rectangular";
    case MetricClass::rectangular_b: return "rectangular-b";
  }
  return "unknown";
}

MetricClass parse_metric_class(std::string_view name) {
  if (name == "metric") return MetricClass::metric;
  if (name == "b-metric") return MetricClass::b_metric;
  if (name == "rectangular") return MetricClass::rectangular;
  if (name == "rectangular-b") return MetricClass::rectangular_b;
  throw InputError("unknown metric class '" + std::string(name) + "'");
}

bool is_rectangular(MetricClass cls) {
  return cls == MetricClass::rectangular || cls == MetricClass::rectangular_b;
}

bool is_parameterized(MetricClass cls) {
  return cls == MetricClass::b_metric || cls == MetricClass::rectangular_b;
}

std::size_t tuple_arity(MetricClass cls) { return is_rectangular(cls) ? 4 : 3; }

namespace {

double path_length(const DistanceTable& t, std::span<const std::size_t> tuple) {
  // tuple = (x, y, intermediates...), path x -> i1 -> ... -> y
  double sum = 0.0;
  std::size_t prev = tuple[0];
  for (std::size_t k = 2; k < tuple.size(); ++k) {
    sum += t(prev, tuple[k]);
    prev = tuple[k];
  }
  return sum + t(prev, tuple[1]);
}

// Visits every ordered tuple of pairwise distinct indices in lexicographic
// order of (x, y, intermediates).
template <class Visit>
void for_each_tuple(std::size_t n, std::size_t arity, Visit&& visit) {
  std::vector<std::size_t> tuple(arity);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == arity) {
      visit(std::span<const std::size_t>(tuple));
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      bool used = false;
      for (std::size_t k = 0; k < depth; ++k) used = used || tuple[k] == i;
      if (used) continue;
      tuple[depth] = i;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
}

void require_valid(const DistanceTable& table) {
  const auto defects = validate_table(table);
  if (defects.empty()) return;
  std::ostringstream msg;
  msg << "distance table is not a valid space: " << defects.size() << " defect(s), first "
      << to_string(defects.front().kind) << " at (" << table.label(defects.front().i) << ", "
      << table.label(defects.front().j) << ")";
  throw InputError(msg.str());
}

constexpr double kTieRel = 1e-12;

}  // namespace

AxiomReport check_class(const DistanceTable& table, MetricClass cls, double s,
                        const Tolerance& tol) {
  require_valid(table);
  if (!(s >= 1.0) || !std::isfinite(s)) throw ConfigError("coefficient s must be a finite real >= 1");
  if (!is_parameterized(cls) && s != 1.0) {
    throw ConfigError("class '" + std::string(to_string(cls)) + "' has its coefficient fixed at 1");
  }

  AxiomReport report;
  report.metric_class = cls;
  report.coefficient = s;
  const std::size_t arity = tuple_arity(cls);
  if (table.size() < arity) {
    report.vacuous = true;
    return report;
  }

  for_each_tuple(table.size(), arity, [&](std::span<const std::size_t> tuple) {
    ++report.inspected;
    const double lhs = table(tuple[0], tuple[1]);
    const double path = path_length(table, tuple);
    const double ratio = lhs / path;
    if (!report.worst_witness || ratio > report.max_ratio * (1.0 + kTieRel)) {
      report.max_ratio = ratio;
      report.worst_witness = Witness{{tuple.begin(), tuple.end()}, lhs, path, ratio};
    }
    if (!tol.leq(lhs, s * path)) {
      ++report.violations;
      if (!report.first_violation) {
        report.first_violation = Witness{{tuple.begin(), tuple.end()}, lhs, path, ratio};
      }
    }
  });
  report.holds = report.violations == 0;
  report.minimal_coefficient = std::max(1.0, report.max_ratio);
  return report;
}

CoefficientResult minimal_coefficient(const DistanceTable& table, MetricClass cls) {
  const AxiomReport r = check_class(table, cls, 1.0);
  CoefficientResult out;
  out.vacuous = r.vacuous;
  out.value = r.minimal_coefficient;
  if (r.max_ratio > 1.0) out.binding = r.worst_witness;
  return out;
}

TupleCheck evaluate_tuple(const DistanceTable& table, MetricClass cls, double s,
                          std::span<const std::size_t> tuple, const Tolerance& tol) {
  if (tuple.size() != tuple_arity(cls)) {
    throw InputError("tuple arity " + std::to_string(tuple.size()) + " does not match class '" +
                     std::string(to_string(cls)) + "'");
  }
  for (std::size_t a = 0; a < tuple.size(); ++a) {
    if (tuple[a] >= table.size()) throw InputError("tuple index out of range");
    for (std::size_t b = a + 1; b < tuple.size(); ++b) {
      if (tuple[a] == tuple[b]) throw InputError("tuple points must be pairwise distinct");
    }
  }
  TupleCheck out;
  out.lhs = table(tuple[0], tuple[1]);
  out.path = path_length(table, tuple);
  out.rhs = s * out.path;
  out.holds = tol.leq(out.lhs, out.rhs);
  return out;
}

std::optional<double> parse_numeric_label(std::string_view label) {
  const auto parse_plain = [](std::string_view text) -> std::optional<double> {
    if (text.empty()) return std::nullopt;
    const std::string buf(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (errno != 0 || end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  };
  if (const auto slash = label.find('/'); slash != std::string_view::npos) {
    const auto num = parse_plain(label.substr(0, slash));
    const auto den = parse_plain(label.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return parse_plain(label);
}

std::string format_label(double value) {
  char buf[40];
  for (int digits : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

DistanceRule::DistanceRule(double exponent, std::vector<DistanceOverride> overrides)
    : exponent_(exponent), overrides_(std::move(overrides)) {
  if (!(exponent_ > 0.0) || !std::isfinite(exponent_)) {
    throw InputError("distance rule exponent must be a positive finite number");
  }
  for (const auto& o : overrides_) {
    const auto x = parse_numeric_label(o.x);
    const auto y = parse_numeric_label(o.y);
    if (!x || !y) throw InputError("distance override labels must be numeric: " + o.x + ", " + o.y);
    resolved_.push_back({*x, *y, o.d});
  }
}

double DistanceRule::operator()(double x, double y) const {
  const auto same = [](double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a));
  };
  if (x == y) return 0.0;
  for (const auto& o : resolved_) {
    if ((same(x, o.x) && same(y, o.y)) || (same(x, o.y) && same(y, o.x))) return o.d;
  }
  return std::pow(std::fabs(x - y), exponent_);
}

DistanceTable sample_space(const DistanceRule& rule, const std::vector<std::string>& points) {
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) {
    const auto v = parse_numeric_label(p);
    if (!v) throw InputError("sample point '" + p + "' is not numeric");
    values.push_back(*v);
  }
  const std::size_t n = points.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = rule(values[i], values[j]);
      if (!std::isfinite(d) || d < 0.0) {
        std::ostringstream msg;
        msg << "distance rule returned " << d << " at (" << points[i] << ", " << points[j] << ")";
        throw InputError(msg.str());
      }
      rows[i][j] = d;
    }
  }
  // the constructor rejects duplicate labels
  return DistanceTable(points, rows);
}

}  // namespace rectfix

#include "rectfix/space.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rectfix/errors.hpp"

namespace rectfix {

std::vector<std::string> grid_labels(const GridRecipe& grid) {
  if (!(grid.step > 0.0) || !std::isfinite(grid.step) || !std::isfinite(grid.start) ||
      !std::isfinite(grid.stop) || grid.stop < grid.start) {
    throw InputError("grid needs finite start <= stop and a positive step");
  }
  const double span = (grid.stop - grid.start) / grid.step;
  if (span > 1e6) throw InputError("grid would exceed one million points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // 12 significant digits absorb the drift of start + k * step
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", grid.start + static_cast<double>(k) * grid.step);
    labels.push_back(format_label(std::strtod(buf, nullptr)));
  }
  return labels;
}

Space Space::from_table(DistanceTable table) {
  Space space;
  space.table_ = std::move(table);
  space.numeric_ = true;
  for (const auto& l : space.table_.labels()) {
    const auto v = parse_numeric_label(l);
    space.values_.push_back(v.value_or(std::numeric_limits<double>::quiet_NaN()));
    space.numeric_ = space.numeric_ && v.has_value();
  }
  return space;
}

Space Space::from_rule(const RuleSpaceSpec& spec) {
  std::vector<std::string> points = spec.points;
  if (spec.grid) {
    for (auto& l : grid_labels(*spec.grid)) points.push_back(std::move(l));
  }
  if (points.empty()) throw InputError("rule-based space has no sample points");
  Space space = from_table(sample_space(spec.rule, points));
  space.rule_ = spec.rule;
  return space;
}

Space Space::from_spec(const SpaceSpec& spec) {
  return std::visit(
      [](const auto& s) -> Space {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DistanceTable>) {
          return from_table(s);
        } else {
          return from_rule(s);
        }
      },
      spec);
}

Element Space::element(std::size_t i) const {
  if (i >= size()) throw InputError("point index out of range");
  return Element{i, values_[i]};
}

std::optional<Element> Space::find(const std::string& label) const {
  if (const auto i = table_.index_of(label)) return element(*i);
  return std::nullopt;
}

Element Space::at_value(double value) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == value) return Element{i, value};
  }
  return Element{kOffSample, value};
}

double Space::distance(const Element& a, const Element& b) const {
  if (a.on_sample() && b.on_sample()) return table_(a.index, b.index);
  if (!rule_) throw Unsupported("element outside the finite point set of a table space");
  if (std::isnan(a.value) || std::isnan(b.value)) {
    throw Unsupported("rule distance needs numeric elements");
  }
  const double d = (*rule_)(a.value, b.value);
  if (!std::isfinite(d) || d < 0.0) {
    throw InputError("distance rule failed at (" + name(a) + ", " + name(b) + ")");
  }
  return d;
}

bool Space::same(const Element& a, const Element& b, double tol) const {
  if (!rule_) return a.index == b.index;
  if (a.on_sample() && b.on_sample() && a.index == b.index) return true;
  return std::fabs(a.value - b.value) <= tol;
}

std::string Space::name(const Element& e) const {
  if (e.on_sample()) return table_.label(e.index);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", e.value);
  return buf;
}

}  // namespace rectfix

#include "rectfix/self_map.hpp"

#include <cmath>

#include "rectfix/errors.hpp"

namespace rectfix {

std::string_view to_string(MapRuleKind kind) {
  switch (kind) {
    case MapRuleKind::identity: return "identity";
    case MapRuleKind::constant: return "constant";
    case MapRuleKind::affine: return "affine";
    case MapRuleKind::power: return "power";
    case MapRuleKind::piecewise: return "piecewise";
  }
  return "unknown";
}

MapRuleKind parse_map_rule_kind(std::string_view name) {
  if (name == "identity") return MapRuleKind::identity;
  if (name == "constant") return MapRuleKind::constant;
  if (name == "affine") return MapRuleKind::affine;
  if (name == "power") return MapRuleKind::power;
  if (name == "piecewise") return MapRuleKind::piecewise;
  throw InputError("unknown map rule kind '" + std::string(name) + "'");
}

void check_rule(const MapRule& rule) {
  const auto expect = [&](std::size_t params, std::size_t children) {
    if (rule.params.size() != params || rule.children.size() != children) {
      throw InputError("map rule '" + std::string(to_string(rule.kind)) +
                       "' has the wrong number of parameters");
    }
  };
  switch (rule.kind) {
    case MapRuleKind::identity: expect(0, 0); break;
    case MapRuleKind::constant: expect(1, 0); break;
    case MapRuleKind::affine: expect(2, 0); break;
    case MapRuleKind::power: expect(1, 0); break;
    case MapRuleKind::piecewise:
      if (rule.params.size() % 2 != 0 || rule.children.size() != rule.params.size() / 2 + 1) {
        throw InputError("piecewise map needs one rule per interval plus an otherwise rule");
      }
      for (std::size_t i = 0; i < rule.params.size(); i += 2) {
        if (!(rule.params[i] <= rule.params[i + 1])) throw InputError("piecewise interval has lo > hi");
      }
      for (const auto& c : rule.children) check_rule(c);
      break;
  }
  for (double p : rule.params) {
    if (!std::isfinite(p)) throw InputError("map rule parameters must be finite");
  }
}

double MapRule::operator()(double x) const {
  switch (kind) {
    case MapRuleKind::identity: return x;
    case MapRuleKind::constant: return params[0];
    case MapRuleKind::affine: return params[0] * x + params[1];
    case MapRuleKind::power: return std::pow(x, params[0]);
    case MapRuleKind::piecewise: {
      constexpr double kEdge = 1e-12;
      for (std::size_t i = 0; i + 1 < params.size(); i += 2) {
        if (x >= params[i] - kEdge && x <= params[i + 1] + kEdge) return children[i / 2](x);
      }
      return children.back()(x);
    }
  }
  return std::nan("");
}

SelfMap SelfMap::from_table(const Space& space, const MapTable& table) {
  std::vector<std::size_t> images(space.size(), kOffSample);
  for (const auto& [from, to] : table) {
    const auto x = space.find(from);
    const auto y = space.find(to);
    if (!x) throw InputError("map table entry for unknown point '" + from + "'");
    if (!y) throw InputError("map sends '" + from + "' to unknown point '" + to + "'");
    images[x->index] = y->index;
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == kOffSample) throw InputError("map table has no image for '" + space.label(i) + "'");
  }
  return from_images(std::move(images));
}

SelfMap SelfMap::from_images(std::vector<std::size_t> images) {
  SelfMap m;
  m.repr_ = std::move(images);
  return m;
}

SelfMap SelfMap::from_rule(MapRule rule) {
  check_rule(rule);
  SelfMap m;
  m.repr_ = std::move(rule);
  return m;
}

SelfMap SelfMap::from_spec(const Space& space, const MapSpec& spec) {
  if (const auto* table = std::get_if<MapTable>(&spec)) return from_table(space, *table);
  if (!space.numeric()) throw InputError("rule-based maps need numeric point labels");
  return from_rule(std::get<MapRule>(spec));
}

const std::vector<std::size_t>& SelfMap::images() const {
  if (const auto* t = std::get_if<std::vector<std::size_t>>(&repr_)) return *t;
  throw Unsupported("operation needs an explicit map table; use picard with a tolerance instead");
}

Element SelfMap::apply(const Space& space, const Element& x) const {
  if (const auto* t = std::get_if<std::vector<std::size_t>>(&repr_)) {
    if (!x.on_sample()) throw Unsupported("table map applied to an off-sample element");
    return space.element((*t).at(x.index));
  }
  if (std::isnan(x.value)) throw Unsupported("rule map applied to a non-numeric element");
  const double y = std::get<MapRule>(repr_)(x.value);
  if (!std::isfinite(y)) throw InputError("map rule produced a non-finite image at " + space.name(x));
  return space.at_value(y);
}

}  // namespace rectfix

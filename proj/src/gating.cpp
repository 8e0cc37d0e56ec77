#include "rectfix/gating.hpp"

#include <algorithm>
#include <cmath>

#include "rectfix/errors.hpp"

namespace rectfix {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::constant: return "constant";
    case GateKind::ratio_sum: return "ratio-sum";
    case GateKind::ratio_absdiff: return "ratio-absdiff";
    case GateKind::sinh_sum: return "sinh-sum";
    case GateKind::inv_exp_sum: return "inv-exp-sum";
    case GateKind::quarter_sum: return "quarter-sum";
    case GateKind::one_plus_exp_neg: return "one-plus-exp-neg";
    case GateKind::piecewise: return "piecewise";
    case GateKind::table: return "table";
  }
  return "unknown";
}

GateKind parse_gate_kind(std::string_view name) {
  for (auto k : {GateKind::constant, GateKind::ratio_sum, GateKind::ratio_absdiff,
                 GateKind::sinh_sum, GateKind::inv_exp_sum, GateKind::quarter_sum,
                 GateKind::one_plus_exp_neg, GateKind::piecewise, GateKind::table}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown gate kind '" + std::string(name) + "'");
}

void check_gate(const GateFn& gate) {
  std::size_t params = 0;
  std::size_t children = 0;
  switch (gate.kind) {
    case GateKind::constant:
    case GateKind::table: params = 1; break;
    case GateKind::piecewise:
      params = 2;
      children = 2;
      break;
    default: break;
  }
  if (gate.params.size() != params || gate.children.size() != children) {
    throw InputError("gate '" + std::string(to_string(gate.kind)) +
                     "' has the wrong number of parameters");
  }
  if (gate.kind != GateKind::table && !gate.entries.empty()) {
    throw InputError("only table gates carry entries");
  }
  for (double p : gate.params) {
    if (!std::isfinite(p)) throw InputError("gate parameters must be finite");
  }
  for (const auto& c : gate.children) check_gate(c);
}

GateFn constant_gate(double c) { return GateFn{GateKind::constant, {c}, {}, {}}; }

double GateFn::operator()(const Space& space, const Element& x, const Element& y) const {
  double v = 0.0;
  if (kind == GateKind::constant) {
    v = params[0];
  } else if (kind == GateKind::table) {
    if (!x.on_sample() || !y.on_sample()) throw Unsupported("table gate evaluated off the sample");
    const auto& lx = space.label(x.index);
    const auto& ly = space.label(y.index);
    v = params[0];
    for (const auto& e : entries) {
      if (e.x == lx && e.y == ly) {
        v = e.value;
        break;
      }
    }
  } else {
    if (std::isnan(x.value) || std::isnan(y.value)) {
      throw Unsupported("gate '" + std::string(to_string(kind)) + "' needs numeric point labels");
    }
    const double a = x.value;
    const double b = y.value;
    switch (kind) {
      case GateKind::ratio_sum: v = (a + b) / std::max(a, b); break;
      case GateKind::ratio_absdiff: v = std::fabs(a - b) / std::max(a, b); break;
      case GateKind::sinh_sum: v = std::sinh(a + b); break;
      case GateKind::inv_exp_sum: v = std::exp(-(a + b)); break;
      case GateKind::quarter_sum: v = (a + b) / 4.0; break;
      case GateKind::one_plus_exp_neg: v = 1.0 + std::exp(-(a + b)); break;
      case GateKind::piecewise: {
        constexpr double kEdge = 1e-12;
        const auto inside = [&](double t) { return t >= params[0] - kEdge && t <= params[1] + kEdge; };
        v = (inside(a) && inside(b) ? children[0] : children[1])(space, x, y);
        break;
      }
      default: break;
    }
  }
  if (!std::isfinite(v) || v < 0.0) {
    throw InputError("gate '" + std::string(to_string(kind)) + "' is not a finite nonnegative value at (" +
                     space.name(x) + ", " + space.name(y) + ")");
  }
  return v;
}

GateEval evaluate_gates(const Space& space, const GatePair& gates, const Element& x,
                        const Element& y, const Tolerance& tol) {
  GateEval e;
  e.alpha = gates.alpha(space, x, y);
  e.eta = gates.eta(space, x, y);
  e.alpha_ok = tol.geq(e.alpha, 1.0);
  e.eta_ok = tol.leq(e.eta, 1.0);
  return e;
}

std::size_t EligibilityMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::pair<std::size_t, std::size_t>> EligibilityMask::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

EligibilityMask eligibility(const Space& space, const GatePair& gates, const Tolerance& tol) {
  const std::size_t n = space.size();
  EligibilityMask mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mask.set(i, j, evaluate_gates(space, gates, space.element(i), space.element(j), tol).eligible());
    }
  }
  return mask;
}

EligibilityMask full_mask(std::size_t n) {
  EligibilityMask mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mask.set(i, j);
  }
  return mask;
}

AdmissibilityReport check_admissibility(const Space& space, const SelfMap& map,
                                        const GatePair& gates, const Tolerance& tol) {
  AdmissibilityReport report;
  report.sampled = space.sampled();
  const std::size_t n = space.size();

  std::vector<Element> image(n);
  std::vector<GateEval> rel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = map.apply(space, space.element(i));
    for (std::size_t j = 0; j < n; ++j) {
      rel[i * n + j] = evaluate_gates(space, gates, space.element(i), space.element(j), tol);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const GateEval& here = rel[i * n + j];
      if (!here.alpha_ok && !here.eta_ok) continue;
      const GateEval there = evaluate_gates(space, gates, image[i], image[j], tol);
      const auto fail = [&](AdmissibilityCheck& c) {
        c.holds = false;
        c.witness = {space.label(i), space.label(j), space.name(image[i]), space.name(image[j])};
      };
      if (here.alpha_ok) {
        ++report.t1.inspected;
        if (!there.alpha_ok && report.t1.holds) fail(report.t1);
      }
      if (here.eta_ok) {
        ++report.t2.inspected;
        if (!there.eta_ok && report.t2.holds) fail(report.t2);
      }
    }
  }

  const auto transitive = [&](AdmissibilityCheck& c, bool GateEval::*ok) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!(rel[x * n + y].*ok)) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (!(rel[y * n + z].*ok)) continue;
          ++c.inspected;
          if (!(rel[x * n + z].*ok) && c.holds) {
            c.holds = false;
            c.witness = {space.label(x), space.label(y), space.label(z)};
          }
        }
      }
    }
  };
  transitive(report.t3, &GateEval::alpha_ok);
  transitive(report.t4, &GateEval::eta_ok);
  return report;
}

}  // namespace rectfix

#include "rectfix/contraction.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "rectfix/errors.hpp"

namespace rectfix {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::general: return "general";
    case Variant::kannan_theta_phi: return "kannan-theta-phi";
    case Variant::reich_theta_phi: return "reich-theta-phi";
    case Variant::kannan_plain: return "kannan-plain";
    case Variant::reich_plain: return "reich-plain";
    case Variant::power_k: return "power-k";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (auto v : {Variant::general, Variant::kannan_theta_phi, Variant::reich_theta_phi,
                 Variant::kannan_plain, Variant::reich_plain, Variant::power_k}) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown contraction variant '" + std::string(name) + "'");
}

std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::satisfied: return "satisfied";
    case PairStatus::violated: return "violated";
    case PairStatus::exempt: return "exempt";
    case PairStatus::domain_gap: return "theta-domain-gap";
    case PairStatus::overflow: return "overflow";
  }
  return "unknown";
}

namespace {

std::array<double, 4> kannan_betas(double s) { return {0.0, 1.0 / (2.0 * s), 1.0 / (2.0 * s), 0.0}; }
std::array<double, 4> reich_betas(double s) {
  const double b = 1.0 / (3.0 * s);
  return {b, b, b, 0.0};
}

std::optional<std::array<double, 4>> shape_of(Variant v, double s) {
  switch (v) {
    case Variant::kannan_theta_phi:
    case Variant::kannan_plain: return kannan_betas(s);
    case Variant::reich_theta_phi:
    case Variant::reich_plain: return reich_betas(s);
    case Variant::power_k: return std::array<double, 4>{1.0, 0.0, 0.0, 0.0};
    case Variant::general: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> config_violations(const ContractionConfig& cfg) {
  std::vector<std::string> out;
  const double s = cfg.s;
  if (!std::isfinite(s) || !(s > 1.0)) {
    out.push_back("s must be a finite real > 1");
    return out;
  }
  const Tolerance tol;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(cfg.betas[i]) || cfg.betas[i] < 0.0) {
      out.push_back("beta" + std::to_string(i + 1) + " must be finite and >= 0");
    }
  }
  const double sum = std::accumulate(cfg.betas.begin(), cfg.betas.end(), 0.0);
  if (!tol.leq(sum, 1.0)) out.push_back("sum of betas must be <= 1");
  if (!(cfg.betas[2] < 1.0 / s)) out.push_back("beta3 must be < 1/s");
  if (!(s * s - s * cfg.betas[0] > 0.0)) out.push_back("s^2 - s*beta1 must be > 0");

  try {
    check_params(cfg.theta);
    check_params(cfg.phi);
  } catch (const InputError& e) {
    out.emplace_back(e.what());
  }

  const auto need_extra = [&](double lo_open, double hi_open, const char* what) {
    if (!cfg.extra) {
      out.push_back(std::string(what) + " parameter missing");
      return;
    }
    const double e = *cfg.extra;
    if (!(e > lo_open && e < hi_open)) {
      std::ostringstream msg;
      msg << what << "=" << e << " outside (" << lo_open << ", " << hi_open << ")";
      out.push_back(msg.str());
    }
  };
  switch (cfg.variant) {
    case Variant::kannan_plain: need_extra(0.0, 1.0 / (2.0 * s), "kappa"); break;
    case Variant::reich_plain: need_extra(0.0, 1.0 / (3.0 * s), "lambda"); break;
    case Variant::power_k: need_extra(0.0, 1.0, "k"); break;
    default: break;
  }
  if (const auto shape = shape_of(cfg.variant, s)) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::fabs((*shape)[i] - cfg.betas[i]) > 1e-12) {
        out.push_back("betas do not match the " + std::string(to_string(cfg.variant)) + " shape");
        break;
      }
    }
  }
  return out;
}

void validate(const ContractionConfig& cfg) {
  const auto problems = config_violations(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid contraction config:";
  for (const auto& p : problems) msg += " " + p + ";";
  throw ConfigError(msg);
}

ContractionConfig specialize(Variant variant, double s, std::optional<double> extra,
                             const ThetaSpec& theta, const PhiSpec& phi) {
  ContractionConfig cfg;
  cfg.s = s;
  cfg.variant = variant;
  cfg.theta = theta;
  cfg.phi = phi;
  switch (variant) {
    case Variant::general: throw ConfigError("the general variant has no fixed specialization");
    case Variant::kannan_theta_phi: cfg.betas = kannan_betas(s); break;
    case Variant::reich_theta_phi: cfg.betas = reich_betas(s); break;
    case Variant::kannan_plain:
      cfg.betas = kannan_betas(s);
      cfg.theta = ThetaSpec{ThetaKind::exp, {}};
      cfg.phi = PhiSpec{PhiKind::power_2s_kappa, {s, extra.value_or(0.0)}};
      cfg.extra = extra;
      break;
    case Variant::reich_plain:
      cfg.betas = reich_betas(s);
      cfg.theta = ThetaSpec{ThetaKind::exp, {}};
      cfg.phi = PhiSpec{PhiKind::power_3s_lambda, {s, extra.value_or(0.0)}};
      cfg.extra = extra;
      break;
    case Variant::power_k:
      cfg.betas = {1.0, 0.0, 0.0, 0.0};
      cfg.phi = PhiSpec{PhiKind::power_k, {extra.value_or(0.0)}};
      cfg.extra = extra;
      break;
  }
  validate(cfg);
  return cfg;
}

PairEvaluation evaluate_pair(const ContractionConfig& cfg, const Space& space, const SelfMap& map,
                             const Element& x, const Element& y, const Tolerance& tol) {
  PairEvaluation ev;
  ev.x = space.name(x);
  ev.y = space.name(y);
  const Element tx = map.apply(space, x);
  const Element ty = map.apply(space, y);
  ev.d_image = space.distance(tx, ty);
  if (ev.d_image == 0.0) {
    ev.status = PairStatus::exempt;
    return ev;
  }
  const auto& b = cfg.betas;
  ev.rhs_inner = b[0] * space.distance(x, y) + b[1] * space.distance(tx, x) +
                 b[2] * space.distance(ty, y) + b[3] * space.distance(y, tx);
  try {
    ev.lhs = theta_eval(cfg.theta, cfg.s * cfg.s * ev.d_image);
    if (!(ev.rhs_inner > 0.0)) {
      ev.status = PairStatus::domain_gap;
      return ev;
    }
    ev.rhs = phi_eval(cfg.phi, theta_eval(cfg.theta, ev.rhs_inner));
  } catch (const DomainError&) {
    ev.status = PairStatus::domain_gap;
    return ev;
  }
  if (!std::isfinite(ev.lhs) || !std::isfinite(ev.rhs)) {
    ev.status = PairStatus::overflow;
    return ev;
  }
  ev.status = tol.leq(ev.lhs, ev.rhs) ? PairStatus::satisfied : PairStatus::violated;
  return ev;
}

const PairEvaluation* ViolationReport::find(std::string_view x, std::string_view y) const {
  for (const auto& e : evaluations) {
    if (e.x == x && e.y == y) return &e;
  }
  return nullptr;
}

ViolationReport check_contraction(const ContractionConfig& cfg, const Space& space,
                                  const SelfMap& map, const EligibilityMask& mask,
                                  const Tolerance& tol) {
  validate(cfg);
  if (mask.size() != space.size()) throw InputError("eligibility mask does not match the space");
  ViolationReport report;
  report.sampled = space.sampled();
  for (const auto& [i, j] : mask.pairs()) {
    PairEvaluation ev = evaluate_pair(cfg, space, map, space.element(i), space.element(j), tol);
    switch (ev.status) {
      case PairStatus::exempt: ++report.exempt; continue;
      case PairStatus::violated: ++report.violations; break;
      case PairStatus::domain_gap: ++report.domain_gaps; break;
      case PairStatus::overflow: ++report.overflows; break;
      case PairStatus::satisfied: break;
    }
    if (ev.status == PairStatus::satisfied || ev.status == PairStatus::violated) {
      if (!report.min_margin || ev.margin() < *report.min_margin) report.min_margin = ev.margin();
    }
    report.evaluations.push_back(std::move(ev));
  }
  report.satisfied_all = report.violations == 0;
  return report;
}

PlainReport check_plain_inequality(const ContractionConfig& cfg, const Space& space,
                                   const SelfMap& map, const EligibilityMask& mask,
                                   const Tolerance& tol) {
  validate(cfg);
  if (cfg.variant != Variant::kannan_plain && cfg.variant != Variant::reich_plain) {
    throw ConfigError("plain inequality needs a kannan-plain or reich-plain config");
  }
  if (mask.size() != space.size()) throw InputError("eligibility mask does not match the space");
  const bool kannan = cfg.variant == Variant::kannan_plain;
  const double coef = *cfg.extra;
  PlainReport report;
  for (const auto& [i, j] : mask.pairs()) {
    const Element x = space.element(i);
    const Element y = space.element(j);
    const Element tx = map.apply(space, x);
    const Element ty = map.apply(space, y);
    const double d_image = space.distance(tx, ty);
    if (d_image == 0.0) continue;
    PlainPair p;
    p.x = space.name(x);
    p.y = space.name(y);
    p.lhs = cfg.s * cfg.s * d_image;
    p.rhs = kannan ? coef * (space.distance(tx, x) + space.distance(y, ty))
                   : coef * (space.distance(x, y) + space.distance(tx, x) + space.distance(ty, y));
    p.satisfied = tol.leq(p.lhs, p.rhs);
    p.embedded = evaluate_pair(cfg, space, map, x, y, tol).status;
    if (!p.satisfied) ++report.violations;
    if (p.satisfied) {
      if (p.embedded == PairStatus::violated) ++report.embedding_violations;
      if (p.embedded == PairStatus::domain_gap || p.embedded == PairStatus::overflow) {
        ++report.embedding_unevaluable;
      }
    }
    report.pairs.push_back(std::move(p));
  }
  report.satisfied_all = report.violations == 0;
  return report;
}

}  // namespace rectfix

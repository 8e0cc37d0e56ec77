#include "rectfix/solver.hpp"

#include <algorithm>
#include <cmath>

#include "rectfix/errors.hpp"

namespace rectfix {

std::string_view to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::converged: return "converged-to-fixed-point";
    case TraceStatus::cycle_detected: return "cycle-detected";
    case TraceStatus::max_iter: return "max-iter";
    case TraceStatus::ratio_violation: return "ratio-violation";
  }
  return "unknown";
}

IterationTrace picard(const Space& space, const SelfMap& map, const GatePair& gates,
                      const ContractionConfig& cfg, const std::string& x0,
                      const PicardOptions& opts) {
  const auto start = space.find(x0);
  if (!start) throw InputError("starting point '" + x0 + "' is not a point of the space");
  return picard(space, map, gates, cfg, *start, opts);
}

IterationTrace picard(const Space& space, const SelfMap& map, const GatePair& gates,
                      const ContractionConfig& cfg, const Element& x0, const PicardOptions& opts) {
  validate(cfg);
  IterationTrace trace;
  trace.orbit.push_back(x0);

  const auto record_gates = [&](const Element& a, const Element& b) {
    const GateEval g = evaluate_gates(space, gates, a, b, opts.slack);
    trace.alpha_ok.push_back(g.alpha_ok);
    trace.eta_ok.push_back(g.eta_ok);
    return g.eligible();
  };

  Element x = x0;
  Element tx = map.apply(space, x);
  trace.start_hypothesis = record_gates(x, tx);

  for (;;) {
    const double d = space.distance(x, tx);
    if (d <= opts.tol) {
      trace.status = TraceStatus::converged;
      trace.residual = d;
      break;
    }
    trace.residual = d;
    if (trace.steps() >= opts.max_iter) {
      trace.status = TraceStatus::max_iter;
      break;
    }
    // x itself is excluded: tx close to x is convergence in progress
    const bool repeat = std::any_of(trace.orbit.begin(), trace.orbit.end() - 1, [&](const Element& e) {
      return space.same(e, tx, opts.tol);
    });
    if (repeat) {
      trace.status = TraceStatus::cycle_detected;
      break;
    }
    trace.orbit.push_back(tx);
    record_gates(x, tx);
    trace.d.push_back(d);
    const std::size_t n = trace.d.size() - 1;
    if (opts.stop_on_ratio_violation && n > 0 && opts.slack.exceeds(trace.d[n], trace.d[n - 1])) {
      trace.status = TraceStatus::ratio_violation;
      break;
    }
    x = tx;
    tx = map.apply(space, x);
  }

  for (std::size_t n = 0; n + 2 < trace.orbit.size(); ++n) {
    trace.skip.push_back(space.distance(trace.orbit[n], trace.orbit[n + 2]));
  }
  for (const auto& e : trace.orbit) trace.names.push_back(space.name(e));

  if (!trace.d.empty() && trace.d.front() > 0.0) {
    double env = theta_eval(cfg.theta, trace.d.front());
    for (std::size_t n = 0; n < trace.d.size(); ++n) {
      if (n > 0) env = phi_eval(cfg.phi, env);
      trace.envelope.push_back(env);
      trace.theta_d.push_back(trace.d[n] > 0.0 ? std::optional(theta_eval(cfg.theta, trace.d[n]))
                                               : std::nullopt);
    }
  } else {
    trace.theta_d.assign(trace.d.size(), std::nullopt);
  }

  if (trace.status == TraceStatus::converged) {
    const Element& z = trace.orbit.back();
    for (const auto& e : trace.orbit) {
      trace.regular_ok.push_back(evaluate_gates(space, gates, e, z, opts.slack).eligible());
    }
  }
  return trace;
}

std::optional<std::size_t> Certificate::first_index() const {
  if (issues.empty()) return std::nullopt;
  std::size_t best = issues.front().index;
  for (const auto& i : issues) best = std::min(best, i.index);
  return best;
}

Certificate certify_trace(const IterationTrace& trace, const ContractionConfig& cfg,
                          const Tolerance& tol) {
  Certificate cert;
  cert.converged = trace.status == TraceStatus::converged;
  cert.hypothesis_unmet = !trace.start_hypothesis;
  const auto& b = cfg.betas;
  cert.degenerate_ratio = b[0] + b[1] == 0.0;
  cert.ratio = (b[0] + b[1]) / (1.0 - b[2]);

  const auto& d = trace.d;
  for (std::size_t n = 1; n < d.size(); ++n) {
    if (!(d[n] > 0.0)) continue;
    if (!tol.leq(d[n], d[n - 1])) cert.issues.push_back({"strict-decrease", n, d[n], d[n - 1]});
    if (!cert.degenerate_ratio && !tol.leq(d[n], cert.ratio * d[n - 1])) {
      cert.issues.push_back({"ratio-bound", n, d[n], cert.ratio * d[n - 1]});
    }
  }

  if (!d.empty() && d.front() > 0.0) {
    double env = theta_eval(cfg.theta, d.front());
    for (std::size_t n = 0; n < d.size(); ++n) {
      if (n > 0) env = phi_eval(cfg.phi, env);
      if (!(d[n] > 0.0)) continue;
      const double th = theta_eval(cfg.theta, d[n]);
      if (!tol.leq(th, env)) cert.issues.push_back({"envelope", n, th, env});
    }
  }

  const auto& skip = trace.skip;
  if (skip.size() >= 2) {
    const std::size_t half = (skip.size() + 1) / 2;
    const auto early = std::max_element(skip.begin(), skip.begin() + static_cast<std::ptrdiff_t>(half));
    const auto late = std::max_element(skip.begin() + static_cast<std::ptrdiff_t>(half), skip.end());
    if (!tol.leq(*late, *early)) {
      cert.issues.push_back(
          {"skip-decay", static_cast<std::size_t>(late - skip.begin()), *late, *early});
    }
  }

  for (std::size_t n = 0; n < trace.regular_ok.size(); ++n) {
    if (!trace.regular_ok[n]) {
      cert.issues.push_back({"tail-regularity", n, 0.0, 1.0});
      break;
    }
  }

  std::stable_sort(cert.issues.begin(), cert.issues.end(),
                   [](const CertificateIssue& a, const CertificateIssue& b) { return a.index < b.index; });
  cert.clean = cert.issues.empty();
  return cert;
}

FixedPointSet fixed_points(const Space& space, const SelfMap& map) {
  const auto& images = map.images();
  if (images.size() != space.size()) throw InputError("map table does not match the space");
  FixedPointSet out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == i) out.points.push_back(i);
  }
  return out;
}

PropertyPReport property_p(const Space& space, const SelfMap& map, std::size_t n_max) {
  if (n_max < 2) throw InputError("property P needs n_max >= 2");
  const auto& images = map.images();
  const std::size_t size = space.size();
  if (images.size() != size) throw InputError("map table does not match the space");

  PropertyPReport report;
  report.fix_t = fixed_points(space, map).points;
  std::vector<std::size_t> power = images;  // T^1
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      for (auto& p : power) p = images[p];
    }
    std::vector<std::size_t> fix;
    for (std::size_t i = 0; i < size; ++i) {
      if (power[i] == i) fix.push_back(i);
    }
    const bool eq = fix == report.fix_t;
    report.equal.push_back(eq);
    report.holds = report.holds && eq;
    report.fix_tn.push_back(std::move(fix));
  }
  return report;
}

SandwichReport sandwich_check(const IterationTrace& trace, const Space& space, const Element& probe,
                              double s, const Tolerance& tol) {
  if (trace.status != TraceStatus::converged || trace.orbit.empty()) {
    throw Unsupported("sandwich check needs a converged trace");
  }
  const Element& z = trace.orbit.back();
  SandwichReport r;
  r.s = s;
  r.limit_distance = space.distance(z, probe);
  if (r.limit_distance == 0.0) throw Unsupported("probe point must differ from the limit");
  r.lower = r.limit_distance / s;
  r.upper = s * r.limit_distance;
  r.tail_start = (trace.orbit.size() - 1) / 2;
  r.tail_min = r.tail_max = space.distance(trace.orbit[r.tail_start], probe);
  for (std::size_t n = r.tail_start; n < trace.orbit.size(); ++n) {
    const double v = space.distance(trace.orbit[n], probe);
    r.tail_min = std::min(r.tail_min, v);
    r.tail_max = std::max(r.tail_max, v);
  }
  r.holds = tol.leq(r.lower, r.tail_min) && tol.leq(r.tail_max, r.upper);
  return r;
}

}  // namespace rectfix

#include "rectfix/function_families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "rectfix/errors.hpp"

namespace rectfix {

std::string_view to_string(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::sqrt_plus_one: return "sqrt-plus-one";
    case ThetaKind::exp: return "exp";
    case ThetaKind::tabulated: return "custom-tabulated";
  }
  return "unknown";
}

std::string_view to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::power_k: return "power-k";
    case PhiKind::affine: return "affine";
    case PhiKind::power_2s_kappa: return "power-2s-kappa";
    case PhiKind::power_3s_lambda: return "power-3s-lambda";
    case PhiKind::tabulated: return "custom-tabulated";
  }
  return "unknown";
}

ThetaKind parse_theta_kind(std::string_view name) {
  if (name == "sqrt-plus-one") return ThetaKind::sqrt_plus_one;
  if (name == "exp") return ThetaKind::exp;
  if (name == "custom-tabulated") return ThetaKind::tabulated;
  throw InputError("unknown theta kind '" + std::string(name) + "'");
}

PhiKind parse_phi_kind(std::string_view name) {
  if (name == "power-k") return PhiKind::power_k;
  if (name == "affine") return PhiKind::affine;
  if (name == "power-2s-kappa") return PhiKind::power_2s_kappa;
  if (name == "power-3s-lambda") return PhiKind::power_3s_lambda;
  if (name == "custom-tabulated") return PhiKind::tabulated;
  throw InputError("unknown phi kind '" + std::string(name) + "'");
}

namespace {

void require_count(std::string_view kind, const std::vector<double>& params, std::size_t n) {
  if (params.size() != n) {
    throw InputError(std::string(kind) + " expects " + std::to_string(n) + " parameter(s), got " +
                     std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw InputError(std::string(kind) + " parameters must be finite");
  }
}

void check_knots(const std::vector<double>& knots) {
  if (knots.size() < 4 || knots.size() % 2 != 0) {
    throw InputError("custom-tabulated needs at least two (t, value) knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i])) throw InputError("custom-tabulated knots must be finite");
  }
  for (std::size_t i = 2; i < knots.size(); i += 2) {
    if (!(knots[i] > knots[i - 2])) throw InputError("custom-tabulated knots must increase in t");
  }
}

double interpolate(const std::vector<double>& knots, double t, std::string_view what) {
  const std::size_t m = knots.size() / 2;
  if (t < knots[0] || t > knots[2 * (m - 1)]) {
    std::ostringstream msg;
    msg << what << ": t=" << t << " outside tabulated range [" << knots[0] << ", "
        << knots[2 * (m - 1)] << "]";
    throw DomainError(msg.str());
  }
  for (std::size_t k = 1; k < m; ++k) {
    const double t0 = knots[2 * (k - 1)];
    const double t1 = knots[2 * k];
    if (t <= t1) {
      const double v0 = knots[2 * (k - 1) + 1];
      const double v1 = knots[2 * k + 1];
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return knots.back();
}

}  // namespace

void check_params(const ThetaSpec& spec) {
  switch (spec.kind) {
    case ThetaKind::sqrt_plus_one:
    case ThetaKind::exp: require_count(to_string(spec.kind), spec.params, 0); break;
    case ThetaKind::tabulated: check_knots(spec.params); break;
  }
}

void check_params(const PhiSpec& spec) {
  switch (spec.kind) {
    case PhiKind::power_k:
      require_count("power-k", spec.params, 1);
      if (!(spec.params[0] > 0.0)) throw InputError("power-k exponent must be positive");
      break;
    case PhiKind::affine:
      require_count("affine", spec.params, 2);
      if (!(spec.params[0] + spec.params[1] > 0.0)) throw InputError("affine needs a + b > 0");
      break;
    case PhiKind::power_2s_kappa:
    case PhiKind::power_3s_lambda:
      require_count(to_string(spec.kind), spec.params, 2);
      if (!(spec.params[0] > 0.0 && spec.params[1] > 0.0)) {
        throw InputError(std::string(to_string(spec.kind)) + " needs positive s and coefficient");
      }
      break;
    case PhiKind::tabulated: check_knots(spec.params); break;
  }
}

double theta_eval(const ThetaSpec& spec, double t) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "theta is defined on t > 0, got t=" << t;
    throw DomainError(msg.str());
  }
  switch (spec.kind) {
    case ThetaKind::sqrt_plus_one: return std::sqrt(t) + 1.0;
    case ThetaKind::exp: return std::exp(t);
    case ThetaKind::tabulated: return interpolate(spec.params, t, "theta");
  }
  return std::nan("");
}

std::optional<double> power_exponent(const PhiSpec& spec) {
  switch (spec.kind) {
    case PhiKind::power_k: return spec.params.at(0);
    case PhiKind::power_2s_kappa: return 2.0 * spec.params.at(0) * spec.params.at(1);
    case PhiKind::power_3s_lambda: return 3.0 * spec.params.at(0) * spec.params.at(1);
    case PhiKind::affine:
    case PhiKind::tabulated: return std::nullopt;
  }
  return std::nullopt;
}

double phi_eval(const PhiSpec& spec, double t) {
  if (!(t >= 1.0)) {
    std::ostringstream msg;
    msg << "phi is defined on t >= 1, got t=" << t;
    throw DomainError(msg.str());
  }
  switch (spec.kind) {
    case PhiKind::affine: {
      const double a = spec.params.at(0);
      const double b = spec.params.at(1);
      return (a * t + b) / (a + b);
    }
    case PhiKind::tabulated: return interpolate(spec.params, t, "phi");
    default: return std::pow(t, *power_exponent(spec));
  }
}

double phi_iterate(const PhiSpec& spec, double t, std::size_t n) {
  double v = t;
  for (std::size_t i = 0; i < n; ++i) v = phi_eval(spec, v);
  if (n == 0) (void)phi_eval(spec, t);  // domain check
  return v;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool FamilyReport::member() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.status == CheckStatus::pass; });
}

const AxiomCheck* FamilyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log_grid needs 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace {

using Fn = std::function<double(double)>;

void require_grid(std::span<const double> grid, double lower, bool open, std::string_view who) {
  if (grid.size() < kMinVetGrid) {
    throw DomainError(std::string(who) + " needs at least " + std::to_string(kMinVetGrid) +
                      " grid points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (!std::isfinite(t) || (open ? !(t > lower) : !(t >= lower))) {
      std::ostringstream msg;
      msg << who << ": grid point " << t << " outside the domain";
      throw DomainError(msg.str());
    }
    if (i > 0 && !(t > grid[i - 1])) throw DomainError(std::string(who) + ": grid must be strictly increasing");
  }
}

// Values f(t) on the grid; domain failures mark the whole check inconclusive.
std::optional<std::vector<double>> evaluate(const Fn& f, std::span<const double> grid,
                                            std::string& error) {
  std::vector<double> v;
  v.reserve(grid.size());
  try {
    for (double t : grid) v.push_back(f(t));
  } catch (const DomainError& e) {
    error = e.what();
    return std::nullopt;
  }
  return v;
}

AxiomCheck monotone_check(std::string name, std::span<const double> grid,
                          const std::vector<double>& v, bool strict, const Tolerance& tol) {
  AxiomCheck c;
  c.name = std::move(name);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool ok = strict ? v[i] > v[i - 1] : tol.geq(v[i], v[i - 1]);
    if (!ok) {
      c.status = CheckStatus::fail;
      c.witness_t = grid[i];
      std::ostringstream msg;
      msg << "f(" << grid[i - 1] << ")=" << v[i - 1] << (strict ? " >= " : " > ") << "f(" << grid[i]
          << ")=" << v[i];
      c.detail = msg.str();
      return c;
    }
  }
  c.detail = strict ? "strictly increasing on grid" : "non-decreasing on grid";
  return c;
}

// A genuine jump keeps its size under refinement; a continuous function's
// largest sub-jump shrinks. Follow the largest sub-jump down a few levels.
AxiomCheck continuity_check(std::string name, const Fn& f, std::span<const double> grid,
                            const std::vector<double>& v, const VetOptions& opts) {
  AxiomCheck c;
  c.name = std::move(name);
  c.sampled_evidence = true;
  constexpr int kLevels = 8;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double a = grid[i - 1];
    double b = grid[i];
    double jump = std::fabs(v[i] - v[i - 1]);
    const double floor = opts.tol.slack(v[i], v[i - 1]);
    bool shrinks = jump <= floor;
    for (int level = 0; level < kLevels && !shrinks; ++level) {
      double best = -1.0;
      double best_a = a;
      double prev = f(a);
      for (std::size_t k = 1; k <= opts.refine; ++k) {
        const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(opts.refine);
        const double cur = f(t);
        const double j = std::fabs(cur - prev);
        if (j > best) {
          best = j;
          best_a = a + (b - a) * static_cast<double>(k - 1) / static_cast<double>(opts.refine);
        }
        prev = cur;
      }
      if (best <= 0.5 * jump || best <= floor) {
        shrinks = true;
      } else {
        const double width = (b - a) / static_cast<double>(opts.refine);
        a = best_a;
        b = best_a + width;
        jump = best;
      }
    }
    if (!shrinks) {
      c.status = CheckStatus::fail;
      c.witness_t = a;
      std::ostringstream msg;
      msg << "jump of " << jump << " persists near t=" << a;
      c.detail = msg.str();
      return c;
    }
  }
  c.detail = "no persistent jump between grid points (sampled evidence)";
  return c;
}

}  // namespace

FamilyReport vet_theta(const ThetaSpec& spec, std::span<const double> grid, const VetOptions& opts) {
  check_params(spec);
  require_grid(grid, 0.0, true, "vet_theta");
  const Fn f = [&spec](double t) { return theta_eval(spec, t); };
  FamilyReport report;

  std::string error;
  const auto values = evaluate(f, grid, error);
  if (!values) {
    for (const char* n : {"range", "theta1-increasing", "theta2-limit", "theta3-continuity"}) {
      report.checks.push_back({n, CheckStatus::inconclusive, false, std::nullopt, std::nullopt, error});
    }
    return report;
  }
  const auto& v = *values;

  AxiomCheck range;
  range.name = "range";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 1.0) || !std::isfinite(v[i])) {
      range.status = CheckStatus::fail;
      range.witness_t = grid[i];
      range.detail = "theta(t) must exceed 1";
      break;
    }
  }
  if (range.status == CheckStatus::pass) range.detail = "theta(t) > 1 on grid";
  report.checks.push_back(range);

  report.checks.push_back(monotone_check("theta1-increasing", grid, v, true, opts.tol));

  AxiomCheck limit;
  limit.name = "theta2-limit";
  try {
    double t = grid.front();
    double prev = v.front() - 1.0;
    for (std::size_t k = 1; k <= opts.boundary_halvings; ++k) {
      t *= 0.5;
      const double excess = theta_eval(spec, t) - 1.0;
      if (excess > prev) {
        limit.status = CheckStatus::fail;
        limit.witness_t = t;
        limit.witness_n = k;
        limit.detail = "theta(t) - 1 grows while t halves toward 0";
        break;
      }
      prev = excess;
    }
    if (limit.status == CheckStatus::pass && prev > opts.limit_tol) {
      limit.status = CheckStatus::fail;
      limit.witness_t = t;
      limit.witness_n = opts.boundary_halvings;
      limit.detail = "theta(t) does not approach 1 as t -> 0";
    }
    if (limit.status == CheckStatus::pass) limit.detail = "theta(t) -> 1 along t_min * 2^-k";
  } catch (const DomainError& e) {
    limit.status = CheckStatus::inconclusive;
    limit.detail = e.what();
  }
  report.checks.push_back(limit);

  report.checks.push_back(continuity_check("theta3-continuity", f, grid, v, opts));
  return report;
}

FamilyReport vet_phi(const PhiSpec& spec, std::span<const double> grid, const VetOptions& opts) {
  check_params(spec);
  require_grid(grid, 1.0, false, "vet_phi");
  const Fn f = [&spec](double t) { return phi_eval(spec, t); };
  const Tolerance& tol = opts.tol;
  FamilyReport report;

  std::string error;
  const auto values = evaluate(f, grid, error);
  if (!values) {
    for (const char* n : {"range", "phi1-nondecreasing", "phi-fixes-one", "phi-below-diagonal",
                          "phi2-iterates", "phi3-continuity"}) {
      report.checks.push_back({n, CheckStatus::inconclusive, false, std::nullopt, std::nullopt, error});
    }
    return report;
  }
  const auto& v = *values;

  AxiomCheck range;
  range.name = "range";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!tol.geq(v[i], 1.0) || !std::isfinite(v[i])) {
      range.status = CheckStatus::fail;
      range.witness_t = grid[i];
      range.detail = "phi(t) must be >= 1";
      break;
    }
  }
  if (range.status == CheckStatus::pass) range.detail = "phi(t) >= 1 on grid";
  report.checks.push_back(range);

  report.checks.push_back(monotone_check("phi1-nondecreasing", grid, v, false, tol));

  AxiomCheck fixes_one;
  fixes_one.name = "phi-fixes-one";
  try {
    const double at_one = phi_eval(spec, 1.0);
    if (!tol.close(at_one, 1.0)) {
      fixes_one.status = CheckStatus::fail;
      fixes_one.witness_t = 1.0;
      std::ostringstream msg;
      msg << "phi(1)=" << at_one;
      fixes_one.detail = msg.str();
    } else {
      fixes_one.detail = "phi(1) = 1";
    }
  } catch (const DomainError& e) {
    fixes_one.status = CheckStatus::inconclusive;
    fixes_one.detail = e.what();
  }
  report.checks.push_back(fixes_one);

  AxiomCheck below;
  below.name = "phi-below-diagonal";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (grid[i] > 1.0 && !tol.strictly_less(v[i], grid[i])) {
      below.status = CheckStatus::fail;
      below.witness_t = grid[i];
      std::ostringstream msg;
      msg << "phi(" << grid[i] << ")=" << v[i] << " is not below t";
      below.detail = msg.str();
      break;
    }
  }
  if (below.status == CheckStatus::pass) below.detail = "phi(t) < t for grid t > 1";
  report.checks.push_back(below);

  AxiomCheck iterates;
  iterates.name = "phi2-iterates";
  for (double t : grid) {
    if (!(t > 1.0)) continue;
    double cur = t;
    std::ostringstream msg;
    try {
      for (std::size_t n = 1; n <= opts.iterate_cap; ++n) {
        const double next = phi_eval(spec, cur);
        if (!std::isfinite(next) || next > opts.divergence_cap) {
          msg << "iterates diverge (value " << next << ")";
          iterates.witness_n = n;
          break;
        }
        if (!tol.leq(next, cur)) {
          msg << "iterate increased from " << cur << " to " << next;
          iterates.witness_n = n;
          break;
        }
        cur = next;
      }
      if (!iterates.witness_n && std::fabs(cur - 1.0) > opts.limit_tol) {
        msg << "phi^" << opts.iterate_cap << "(t)=" << cur << " is not within " << opts.limit_tol
            << " of 1";
        iterates.witness_n = opts.iterate_cap;
      }
    } catch (const DomainError& e) {
      msg << e.what();
      iterates.witness_n = 0;
    }
    if (iterates.witness_n) {
      iterates.status = CheckStatus::fail;
      iterates.witness_t = t;
      iterates.detail = msg.str();
      break;
    }
  }
  if (iterates.status == CheckStatus::pass) {
    std::ostringstream msg;
    msg << "phi^n(t) non-increasing and within " << opts.limit_tol << " of 1 by n="
        << opts.iterate_cap;
    iterates.detail = msg.str();
  }
  report.checks.push_back(iterates);

  report.checks.push_back(continuity_check("phi3-continuity", f, grid, v, opts));
  return report;
}

}  // namespace rectfix

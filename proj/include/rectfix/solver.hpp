#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectfix/contraction.hpp"
#include "rectfix/gating.hpp"
#include "rectfix/self_map.hpp"
#include "rectfix/space.hpp"
#include "rectfix/tolerance.hpp"

namespace rectfix {

enum class TraceStatus { converged, cycle_detected, max_iter, ratio_violation };

[[nodiscard]] std::string_view to_string(TraceStatus s);

struct PicardOptions {
  double tol = 1e-10;  // on d(x_n, T x_n)
  std::size_t max_iter = 10000;
  // stop with ratio_violation as soon as d_n exceeds d_{n-1} beyond slack
  bool stop_on_ratio_violation = false;
  Tolerance slack{};
};

/// Picard orbit x_0, x_1 = T x_0, ..., x_N.
///
/// For converged traces x_N is the fixed point (exactly for tables, within
/// `tol` on d(x_N, T x_N) for rules) and `residual` holds d(x_N, T x_N).
/// d[n] = d(x_n, x_{n+1}) and skip[n] = d(x_n, x_{n+2}) over the orbit;
/// theta_d[n] is empty where d[n] = 0. envelope[n] = φⁿ(θ(d[0])).
struct IterationTrace {
  std::vector<Element> orbit;
  std::vector<std::string> names;
  std::vector<double> d;
  std::vector<double> skip;
  std::vector<std::optional<double>> theta_d;
  std::vector<double> envelope;
  // gate flags for (x_{n-1}, x_n); entry 0 is (x_0, T x_0)
  std::vector<bool> alpha_ok;
  std::vector<bool> eta_ok;
  // alpha(x_n, z) >= 1 or eta(x_n, z) <= 1 against the limit z (converged only)
  std::vector<bool> regular_ok;
  TraceStatus status = TraceStatus::max_iter;
  double residual = 0.0;
  bool start_hypothesis = false;  // alpha(x0,Tx0) >= 1 or eta(x0,Tx0) <= 1

  [[nodiscard]] std::size_t steps() const { return orbit.empty() ? 0 : orbit.size() - 1; }
  [[nodiscard]] const Element& last() const { return orbit.back(); }
};

/// Throws InputError when x0 is not a sample point of `space`.
[[nodiscard]] IterationTrace picard(const Space& space, const SelfMap& map, const GatePair& gates,
                                    const ContractionConfig& cfg, const std::string& x0,
                                    const PicardOptions& opts = {});

[[nodiscard]] IterationTrace picard(const Space& space, const SelfMap& map, const GatePair& gates,
                                    const ContractionConfig& cfg, const Element& x0,
                                    const PicardOptions& opts = {});

struct CertificateIssue {
  std::string check;  // "strict-decrease", "ratio-bound", "envelope", ...
  std::size_t index = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct Certificate {
  bool clean = true;
  bool converged = false;
  // β1 + β2 = 0: the ratio bound collapses to 0 and is not asserted
  bool degenerate_ratio = false;
  bool hypothesis_unmet = false;
  double ratio = 0.0;  // (β1 + β2) / (1 - β3)
  std::vector<CertificateIssue> issues;

  [[nodiscard]] std::optional<std::size_t> first_index() const;
};

/// Checks, at every index n >= 1 with d_n > 0:
///   strict-decrease  d_n <= d_{n-1}
///   ratio-bound      d_n <= ((β1+β2)/(1-β3)) d_{n-1}
/// and at every n with d_n > 0:
///   envelope         θ(d_n) <= φⁿ(θ(d_0))
/// plus the sampled consequences skip-decay (the late half of skip distances
/// does not exceed the early half) and tail-regularity. An unmet start
/// hypothesis is flagged but does not dirty the certificate.
[[nodiscard]] Certificate certify_trace(const IterationTrace& trace, const ContractionConfig& cfg,
                                        const Tolerance& tol = {});

struct FixedPointSet {
  std::vector<std::size_t> points;
  [[nodiscard]] bool unique() const { return points.size() == 1; }
};

/// {x : Tx = x}. Throws Unsupported for rule-based maps.
[[nodiscard]] FixedPointSet fixed_points(const Space& space, const SelfMap& map);

struct PropertyPReport {
  std::vector<std::size_t> fix_t;
  // Fix(Tⁿ) for n = 1..n_max
  std::vector<std::vector<std::size_t>> fix_tn;
  std::vector<bool> equal;
  bool holds = true;
};

/// Compares Fix(Tⁿ) with Fix(T) for n = 1..n_max by table composition.
/// Throws Unsupported for rule maps and InputError when n_max < 2.
[[nodiscard]] PropertyPReport property_p(const Space& space, const SelfMap& map, std::size_t n_max);

struct SandwichReport {
  bool holds = true;
  double s = 1.0;
  double limit_distance = 0.0;  // d(z, y)
  double tail_min = 0.0;
  double tail_max = 0.0;
  double lower = 0.0;  // d(z,y)/s
  double upper = 0.0;  // s d(z,y)
  std::size_t tail_start = 0;
};

/// Sampled lim inf / lim sup sandwich over the second half of the orbit:
/// d(z,y)/s <= min d(x_n,y) and max d(x_n,y) <= s d(z,y), with z = x_N.
/// Throws Unsupported for a trace that did not converge or probe y = z.
[[nodiscard]] SandwichReport sandwich_check(const IterationTrace& trace, const Space& space,
                                            const Element& probe, double s,
                                            const Tolerance& tol = {});

}  // namespace rectfix

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectfix/tolerance.hpp"

namespace rectfix {

// θ : (0, ∞) -> (1, ∞)
enum class ThetaKind { sqrt_plus_one, exp, tabulated };

/// Tabulated kinds store knots flattened as (t0, v0, t1, v1, ...), strictly
/// increasing in t; evaluation interpolates linearly and refuses to
/// extrapolate.
struct ThetaSpec {
  ThetaKind kind = ThetaKind::sqrt_plus_one;
  std::vector<double> params;

  bool operator==(const ThetaSpec&) const = default;
};

// φ : [1, ∞) -> [1, ∞)
enum class PhiKind { power_k, affine, power_2s_kappa, power_3s_lambda, tabulated };

/// Parameters per kind:
///  - power_k         [k]          φ(t) = t^k
///  - affine          [a, b]       φ(t) = (a t + b) / (a + b)
///  - power_2s_kappa  [s, kappa]   φ(t) = t^(2 s kappa)
///  - power_3s_lambda [s, lambda]  φ(t) = t^(3 s lambda)
///  - tabulated       knots as for ThetaSpec
/// Construction does not check membership in the family; vet_phi does.
struct PhiSpec {
  PhiKind kind = PhiKind::power_k;
  std::vector<double> params;

  bool operator==(const PhiSpec&) const = default;
};

[[nodiscard]] std::string_view to_string(ThetaKind kind);
[[nodiscard]] std::string_view to_string(PhiKind kind);
[[nodiscard]] ThetaKind parse_theta_kind(std::string_view name);
[[nodiscard]] PhiKind parse_phi_kind(std::string_view name);

/// Throws InputError when the parameter count or knots are malformed.
void check_params(const ThetaSpec& spec);
void check_params(const PhiSpec& spec);

/// Throws DomainError for t <= 0 (or outside tabulated knots).
[[nodiscard]] double theta_eval(const ThetaSpec& spec, double t);

/// Throws DomainError for t < 1 (or outside tabulated knots).
[[nodiscard]] double phi_eval(const PhiSpec& spec, double t);

/// n-fold composition φ(φ(...φ(t))).
[[nodiscard]] double phi_iterate(const PhiSpec& spec, double t, std::size_t n);

// Exponent of the power kinds, nullopt for affine/tabulated.
[[nodiscard]] std::optional<double> power_exponent(const PhiSpec& spec);

// --- family vetting --------------------------------------------------------

enum class CheckStatus { pass, fail, inconclusive };

[[nodiscard]] std::string_view to_string(CheckStatus status);

struct AxiomCheck {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  // Continuity can only be supported by sampling; every other check is exact
  // on the grid it inspected.
  bool sampled_evidence = false;
  std::optional<double> witness_t;
  std::optional<std::size_t> witness_n;
  std::string detail;
};

struct FamilyReport {
  std::vector<AxiomCheck> checks;

  [[nodiscard]] bool member() const;
  [[nodiscard]] const AxiomCheck* find(std::string_view name) const;
};

struct VetOptions {
  std::size_t iterate_cap = 200;
  double limit_tol = 1e-6;
  // iterates above this are treated as divergent
  double divergence_cap = 1e12;
  // halvings toward the θ boundary at 0
  std::size_t boundary_halvings = 200;
  // continuity probe: sub-intervals per grid cell
  std::size_t refine = 64;
  Tolerance tol{};
};

inline constexpr std::size_t kMinVetGrid = 16;

/// Checks θ on a sorted grid of t > 0 (at least 16 points):
///   "range"              θ(t) > 1
///   "theta1-increasing"  strict increase on adjacent grid points
///   "theta2-limit"       θ(t)-1 -> 0 along t_min * 2^-k (and only there)
///   "theta3-continuity"  sampled: jumps shrink under refinement
/// Throws DomainError for a grid outside (0, ∞) or too short / unsorted.
[[nodiscard]] FamilyReport vet_theta(const ThetaSpec& spec, std::span<const double> grid,
                                     const VetOptions& opts = {});

/// Checks φ on a sorted grid of t >= 1 (at least 16 points):
///   "range"                 φ(t) >= 1
///   "phi1-nondecreasing"    adjacent pairs, equality allowed
///   "phi-fixes-one"       φ(1) = 1
///   "phi-below-diagonal"  φ(t) < t for grid t > 1
///   "phi2-iterates"         φⁿ(t) non-increasing and within limit_tol of 1
///                           by iterate_cap, for every grid t > 1
///   "phi3-continuity"       sampled, as for θ
[[nodiscard]] FamilyReport vet_phi(const PhiSpec& spec, std::span<const double> grid,
                                   const VetOptions& opts = {});

/// n log-spaced points from lo to hi inclusive.
[[nodiscard]] std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace rectfix

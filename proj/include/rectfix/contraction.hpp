#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectfix/function_families.hpp"
#include "rectfix/gating.hpp"
#include "rectfix/self_map.hpp"
#include "rectfix/space.hpp"
#include "rectfix/tolerance.hpp"

namespace rectfix {

enum class Variant { general, kannan_theta_phi, reich_theta_phi, kannan_plain, reich_plain, power_k };

[[nodiscard]] std::string_view to_string(Variant v);
[[nodiscard]] Variant parse_variant(std::string_view name);

/// Parameters of the θ-φ contraction inequality
///
///   θ(s² d(Tx,Ty)) <= φ(θ(β1 d(x,y) + β2 d(Tx,x) + β3 d(Ty,y) + β4 d(y,Tx)))
///
/// `extra` holds κ (kannan-plain), λ (reich-plain) or k (power-k).
struct ContractionConfig {
  double s = 2.0;
  std::array<double, 4> betas{1.0, 0.0, 0.0, 0.0};
  ThetaSpec theta;
  PhiSpec phi{PhiKind::affine, {1.0, 1.0}};
  Variant variant = Variant::general;
  std::optional<double> extra;

  bool operator==(const ContractionConfig&) const = default;
};

/// Human-readable list of broken side conditions; empty when the config is
/// usable: s > 1, βi >= 0, Σβ <= 1, β3 < 1/s, s² - sβ1 > 0, the variant's
/// parameter range and its fixed β shape.
[[nodiscard]] std::vector<std::string> config_violations(const ContractionConfig& cfg);

/// Throws ConfigError listing every violation.
void validate(const ContractionConfig& cfg);

/// Builds the config for a named variant.
///   kannan-theta-phi  β = (0, 1/(2s), 1/(2s), 0), θ/φ from the arguments
///   reich-theta-phi   β = (1/(3s), 1/(3s), 1/(3s), 0)
///   kannan-plain κ    kannan β, θ = exp, φ(t) = t^(2sκ)
///   reich-plain λ     reich β, θ = exp, φ(t) = t^(3sλ)
///   power-k k         β = (1, 0, 0, 0), φ(t) = t^k, θ from the argument
/// Throws ConfigError when the side conditions fail (κ >= 1/(2s), ...).
[[nodiscard]] ContractionConfig specialize(Variant variant, double s, std::optional<double> extra,
                                           const ThetaSpec& theta = {},
                                           const PhiSpec& phi = {PhiKind::affine, {1.0, 1.0}});

enum class PairStatus { satisfied, violated, exempt, domain_gap, overflow };

[[nodiscard]] std::string_view to_string(PairStatus s);

struct PairEvaluation {
  std::string x;
  std::string y;
  double d_image = 0.0;  // d(Tx, Ty)
  double lhs = 0.0;
  double rhs_inner = 0.0;
  double rhs = 0.0;
  PairStatus status = PairStatus::exempt;

  [[nodiscard]] bool satisfied() const { return status == PairStatus::satisfied; }
  [[nodiscard]] double margin() const { return rhs - lhs; }
};

/// Evaluates one ordered pair. d(Tx,Ty) = 0 is exempt; rhs_inner = 0 with
/// d(Tx,Ty) > 0 falls outside θ's domain and is reported as a gap, never as a
/// violation.
[[nodiscard]] PairEvaluation evaluate_pair(const ContractionConfig& cfg, const Space& space,
                                           const SelfMap& map, const Element& x, const Element& y,
                                           const Tolerance& tol = {});

struct ViolationReport {
  bool satisfied_all = true;
  bool sampled = false;
  std::vector<PairEvaluation> evaluations;  // non-exempt pairs, mask order
  std::size_t exempt = 0;
  std::size_t violations = 0;
  std::size_t domain_gaps = 0;
  std::size_t overflows = 0;
  std::optional<double> min_margin;

  [[nodiscard]] const PairEvaluation* find(std::string_view x, std::string_view y) const;
};

/// Every masked ordered pair with d(Tx,Ty) > 0. Unevaluable pairs are counted
/// separately and do not clear satisfied_all on their own.
[[nodiscard]] ViolationReport check_contraction(const ContractionConfig& cfg, const Space& space,
                                                const SelfMap& map, const EligibilityMask& mask,
                                                const Tolerance& tol = {});

struct PlainPair {
  std::string x;
  std::string y;
  double lhs = 0.0;  // s² d(Tx,Ty)
  double rhs = 0.0;
  bool satisfied = false;
  PairStatus embedded = PairStatus::exempt;  // θ = exp / φ = power evaluation
};

struct PlainReport {
  bool satisfied_all = true;
  std::vector<PlainPair> pairs;
  std::size_t violations = 0;
  // plain inequality held but the θ-φ form did not
  std::size_t embedding_violations = 0;
  std::size_t embedding_unevaluable = 0;
};

/// Kannan: s² d(Tx,Ty) <= κ (d(Tx,x) + d(y,Ty))
/// Reich:  s² d(Tx,Ty) <= λ (d(x,y) + d(Tx,x) + d(Ty,y))
/// `cfg` must be a kannan-plain or reich-plain config from specialize.
[[nodiscard]] PlainReport check_plain_inequality(const ContractionConfig& cfg, const Space& space,
                                                 const SelfMap& map, const EligibilityMask& mask,
                                                 const Tolerance& tol = {});

}  // namespace rectfix

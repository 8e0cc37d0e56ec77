#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "rectfix/self_map.hpp"
#include "rectfix/space.hpp"
#include "rectfix/tolerance.hpp"

namespace rectfix {

enum class GateKind {
  constant,          // [c]
  ratio_sum,         // (x + y) / max(x, y)
  ratio_absdiff,     // |x - y| / max(x, y)
  sinh_sum,          // sinh(x + y)
  inv_exp_sum,       // e^-(x + y)
  quarter_sum,       // (x + y) / 4
  one_plus_exp_neg,  // 1 + e^-(x + y)
  piecewise,         // [lo, hi]; children = {inside, outside}
  table,             // [default]; entries by label
};

[[nodiscard]] std::string_view to_string(GateKind kind);
[[nodiscard]] GateKind parse_gate_kind(std::string_view name);

struct GateEntry {
  std::string x;
  std::string y;
  double value = 0.0;

  bool operator==(const GateEntry&) const = default;
};

/// One gate function X x X -> [0, ∞).
///
/// Arithmetic kinds need numeric labels. `piecewise` uses its first child when
/// both points lie in [lo, hi], the second otherwise. `table` looks up ordered
/// label pairs and falls back to params[0].
struct GateFn {
  GateKind kind = GateKind::constant;
  std::vector<double> params{1.0};
  std::vector<GateFn> children;
  std::vector<GateEntry> entries;

  bool operator==(const GateFn&) const = default;

  /// Throws InputError naming the pair when the value is negative or
  /// non-finite, Unsupported when labels are not numeric for an arithmetic kind.
  [[nodiscard]] double operator()(const Space& space, const Element& x, const Element& y) const;
};

void check_gate(const GateFn& gate);

[[nodiscard]] GateFn constant_gate(double c);

struct GatePair {
  GateFn alpha;
  GateFn eta;

  bool operator==(const GatePair&) const = default;
};

struct GateEval {
  double alpha = 0.0;
  double eta = 0.0;
  bool alpha_ok = false;  // alpha >= 1 within slack
  bool eta_ok = false;    // eta <= 1 within slack

  [[nodiscard]] bool eligible() const { return alpha_ok || eta_ok; }
};

[[nodiscard]] GateEval evaluate_gates(const Space& space, const GatePair& gates, const Element& x,
                                      const Element& y, const Tolerance& tol = {});

/// Ordered pairs (x, y) of sample points with alpha(x,y) >= 1 or eta(x,y) <= 1.
class EligibilityMask {
 public:
  EligibilityMask() = default;
  explicit EligibilityMask(std::size_t n) : n_(n), bits_(n * n, false) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * n_ + j] = v; }
  [[nodiscard]] std::size_t count() const;

  /// Pairs in row-major order.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  bool operator==(const EligibilityMask&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

[[nodiscard]] EligibilityMask eligibility(const Space& space, const GatePair& gates,
                                          const Tolerance& tol = {});

[[nodiscard]] EligibilityMask full_mask(std::size_t n);

struct AdmissibilityCheck {
  std::string name;
  bool holds = true;
  std::size_t inspected = 0;
  // pair (x, y) for T1/T2, triple (x, y, z) for T3/T4; images named by value
  // when they leave the sample
  std::vector<std::string> witness;
};

/// Triangular (alpha, eta)-admissibility:
///   T1  alpha(x,y) >= 1  =>  alpha(Tx,Ty) >= 1
///   T2  eta(x,y) <= 1    =>  eta(Tx,Ty) <= 1
///   T3  alpha(x,y) >= 1 and alpha(y,z) >= 1  =>  alpha(x,z) >= 1
///   T4  the same for eta <= 1
/// over all ordered pairs / triples of sample points (repeats included).
struct AdmissibilityReport {
  AdmissibilityCheck t1{"T1", true, 0, {}};
  AdmissibilityCheck t2{"T2", true, 0, {}};
  AdmissibilityCheck t3{"T3", true, 0, {}};
  AdmissibilityCheck t4{"T4", true, 0, {}};
  bool sampled = false;

  [[nodiscard]] bool holds() const { return t1.holds && t2.holds && t3.holds && t4.holds; }
};

[[nodiscard]] AdmissibilityReport check_admissibility(const Space& space, const SelfMap& map,
                                                      const GatePair& gates,
                                                      const Tolerance& tol = {});

}  // namespace rectfix

#pragma once

#include <algorithm>
#include <cmath>

namespace rectfix {

/// Shared slack policy for every `<=` decision in the library.
///
/// Comparisons are relative (1e-9) with an absolute floor (1e-12). A strict
/// violation `a > b` is only reported when `a` exceeds `b` by more than the
/// slack.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  [[nodiscard]] double slack(double a, double b) const {
    return std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
  }

  [[nodiscard]] bool leq(double a, double b) const {
    if (!std::isfinite(a) || !std::isfinite(b)) return a <= b;
    return a <= b + slack(a, b);
  }

  [[nodiscard]] bool geq(double a, double b) const { return leq(b, a); }

  // a > b beyond slack
  [[nodiscard]] bool exceeds(double a, double b) const { return !leq(a, b); }

  // a < b beyond slack
  [[nodiscard]] bool strictly_less(double a, double b) const { return exceeds(b, a); }

  [[nodiscard]] bool close(double a, double b) const {
    if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
    return std::fabs(a - b) <= slack(a, b);
  }
};

}  // namespace rectfix

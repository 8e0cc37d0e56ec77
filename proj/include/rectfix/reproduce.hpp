#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectfix/io.hpp"

namespace rectfix {

enum class RowStatus { match, known_discrepancy, mismatch };

[[nodiscard]] std::string_view to_string(RowStatus s);

/// One published claim next to what the library computes for it.
struct ComparisonRow {
  std::string item;
  std::string published;
  std::string computed;
  RowStatus status = RowStatus::match;
  std::string note;
};

struct ReproduceReport {
  std::string example;
  std::vector<ComparisonRow> rows;

  /// No row is a mismatch. Known discrepancies are reported, not failures.
  [[nodiscard]] bool ok() const;
  [[nodiscard]] const ComparisonRow* find(std::string_view item) const;
};

/// Published decimals are truncated or rounded to the printed place, so a
/// value agrees when it lies strictly within one unit of the last printed
/// digit. Fractions such as "21/5" must match within the default slack.
[[nodiscard]] bool agrees_at_printed_precision(double computed, std::string_view printed);

/// Two decimals with trailing zeros dropped: 0.40 -> "0.4", 0.29 -> "0.29".
[[nodiscard]] std::string format_2dp(double v);

/// Reruns every published claim of example "3.11" or "3.12". Throws
/// InputError for any other id.
[[nodiscard]] ReproduceReport reproduce(std::string_view id,
                                        std::optional<double> grid_step = std::nullopt);

[[nodiscard]] std::string render_table(const ReproduceReport& report);
[[nodiscard]] Json to_json(const ReproduceReport& report);

}  // namespace rectfix

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rectfix/io.hpp"

namespace rectfix {

/// Four-point rectangular b-metric space (s = 2) with T = {1→1, 2→1, 3→1, 4→2}.
[[nodiscard]] Fixture example311();

/// A = {1/2, ..., 1/7} with tabulated distances, B = [1, 2] under |x - y|²,
/// sampled on a grid of the given step. T(x) = x^(1/6) on B, 1 on A.
[[nodiscard]] Fixture example312(double grid_step = 0.1);

/// Negative controls: identity on the four-point table, an isometric swap of
/// two points and a 3-cycle.
[[nodiscard]] Fixture identity_control();
[[nodiscard]] Fixture swap_control();
[[nodiscard]] Fixture cycle_control();

/// File stem and fixture for everything shipped under data/fixtures.
[[nodiscard]] std::vector<std::pair<std::string, Fixture>> bundled_fixtures();

/// "3.11" or "3.12"; nullopt otherwise.
[[nodiscard]] std::optional<Fixture> example_fixture(std::string_view id,
                                                     std::optional<double> grid_step = std::nullopt);

}  // namespace rectfix

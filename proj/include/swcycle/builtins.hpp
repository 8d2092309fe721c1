#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "swcycle/systems.hpp"

namespace swcycle {

/// PLUS: x' = -1, y' = -y - 1.  MINUS: x' = 1, y' = -y + 1.
/// Switched equilibrium at the origin with sliding motion y' = -y.
SwitchedSystem symmetric_test_system(double half_width = 0.0);

/// PLUS: x' = -(1 - y)^2, y' = -1.  MINUS: x' = 1, y' = 1.
/// Stable switched equilibrium at the origin, but a PLUS leg launched from
/// tangency_launch_height(w) meets the left line with x' = 0.
SwitchedSystem tangency_test_system(double half_width);
double tangency_launch_height(double half_width);

/// Converter in rotated coordinates, reconciled case-study parameters.
SwitchedSystem converter_system(double c = 8.0, double eps = 0.2);

/// Random affine pair with a switched equilibrium at the origin that passes
/// check_hypotheses with stability_value > 0.1 (rejection sampled).
SwitchedSystem random_stable_system(std::mt19937_64& rng);

std::vector<std::string_view> builtin_names();

}  // namespace swcycle

#pragma once

#include <vector>

#include "swcycle/systems.hpp"

namespace swcycle {

/// Sliding-mode analysis of the zero-width (Filippov) system on x = center.
struct SlidingAnalysis {
  double eq_y = 0.0;
  double lambda = 0.0;
  double stability_value = 0.0;
  bool stable = false;
  /// stability_value == 0: the linearization is inconclusive.
  bool degenerate = false;
  /// Coefficient of x*y in the Poincare-map expansion; negative for a stable
  /// sliding equilibrium.
  double b_coefficient = 0.0;
  double f_minus = 0.0;
  double f_plus = 0.0;
};

/// Numerator f+ g- - f- g+ of the sliding vector field at (center, y).
double sliding_numerator(const SwitchedSystem& system, double y);

/// Sliding velocity (f+ g- - f- g+)/(f+ - f-) along x = center.
/// Throws DegenerateDenominator when |f+ - f-| < 1e-12 and NotSliding unless
/// f+ < 0 < f-.
double sliding_rhs(const SwitchedSystem& system, double y);

/// Root of the sliding numerator nearest y_guess, to |numerator| < 1e-10.
/// The bracket is grown from width 1 to 1e4 around y_guess.
double switched_equilibrium(const SwitchedSystem& system, double y_guess);

/// Stability of the sliding equilibrium at (center, eq_y) and the closed-form
/// b coefficient b = stability_value / (f+ f-).
SlidingAnalysis stability_certificate(const SwitchedSystem& system, double eq_y);

struct SlidingPath {
  std::vector<double> t;
  std::vector<double> y;
  /// The path left the sliding region; the last sample is the exit point.
  bool exited = false;
};

/// Integrates the scalar sliding equation from y0 for `duration`, returning
/// samples at spacing duration / samples (plus both endpoints). Stops early if
/// f+ or f- changes sign along the way.
SlidingPath integrate_sliding(const SwitchedSystem& system, double y0, double duration,
                              int samples = 100, double rtol = 1e-10, double atol = 1e-12);

}  // namespace swcycle

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swcycle/filippov.hpp"
#include "swcycle/flow.hpp"

namespace swcycle {

/// Periodic orbit crossing the right switching line at (center + w, fixed_y).
struct LimitCycle {
  double half_width = 0.0;
  double fixed_y = 0.0;
  double period = 0.0;
  double period_plus = 0.0;
  double period_minus = 0.0;
  /// Derivative of the return map at fixed_y.
  double multiplier = 0.0;
  bool stable = false;
  /// Largest distance of the cycle from the switched equilibrium.
  double amplitude = 0.0;
  double residual = 0.0;
  double eq_y = 0.0;
  int iterations = 0;
  /// Both legs, PLUS first.
  Arc arc_plus;
  Arc arc_minus;
};

struct CycleOptions {
  FlowOptions flow;
  double residual_tol = 1e-11;
  int max_iterations = 200;
  /// Where to look for the switched equilibrium; defaults to the cycle guess.
  std::optional<double> eq_guess;
};

/// Return map on the right line: half_map(MINUS) after half_map(PLUS), with
/// the band half-width replaced by `half_width`.
double poincare_map(const SwitchedSystem& system, double half_width, double y,
                    const FlowOptions& options = {});

/// Locates the fixed point of the return map by damped secant iteration with a
/// Picard fallback. The standing hypotheses are checked at the switched
/// equilibrium nearest y_guess first (Hypothesis error if they fail).
LimitCycle find_limit_cycle(const SwitchedSystem& system, double half_width, double y_guess,
                            const CycleOptions& options = {});

/// Same, starting from the switched equilibrium found near eq_guess.
LimitCycle find_limit_cycle_from_equilibrium(const SwitchedSystem& system, double half_width,
                                             double eq_guess = 0.0,
                                             const CycleOptions& options = {});

/// Leading-order period (2/f- - 2/f+) * w with f+- taken at (center, eq_y).
double asymptotic_period(const SwitchedSystem& system, double half_width, double eq_y);

/// Slope of the leading-order period in w.
double asymptotic_slope(const SwitchedSystem& system, double eq_y);

struct SweepRow {
  double half_width = 0.0;
  double period_numeric = 0.0;
  double period_asymptotic = 0.0;
  double multiplier = 0.0;
  double amplitude = 0.0;
  double fixed_y = 0.0;
  /// Empty on success.
  std::string error;
};

/// One limit cycle per half-width, rows ordered by increasing half-width.
/// With workers == 1 each row is warm-started from the previous one.
std::vector<SweepRow> sweep(const SwitchedSystem& system, std::vector<double> half_widths,
                            double eq_guess = 0.0, const CycleOptions& options = {},
                            int workers = 1);

/// Grid scan of P(y) - y on [y_lo, y_hi] with n points followed by bisection
/// of the first sign change. Independent check of find_limit_cycle.
double brute_force_fixed_point(const SwitchedSystem& system, double half_width, double y_lo,
                               double y_hi, int n, const FlowOptions& options = {});

}  // namespace swcycle

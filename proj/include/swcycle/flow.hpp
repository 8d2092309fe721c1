#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "swcycle/systems.hpp"

namespace swcycle {

enum class ExitEvent { HitRight, HitLeft, TimeUp, Diverged };

std::string_view to_string(ExitEvent event);

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// One smooth piece of a trajectory governed by a single mode.
struct Arc {
  Mode mode = Mode::Plus;
  double t_start = 0.0;
  double t_end = 0.0;
  /// Accepted integrator steps, first sample at t_start, last at t_end.
  std::vector<Sample> samples;
  ExitEvent exit_event = ExitEvent::TimeUp;
  /// The threshold was reached with |f^mode| below the tangency tolerance.
  bool tangential = false;

  double duration() const { return t_end - t_start; }
  Point end_state() const { return {samples.back().x, samples.back().y}; }
};

struct Trajectory {
  std::vector<Arc> arcs;
  long switch_count = 0;
};

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Time budget for a single arc.
  double t_max_arc = 1e3;
  /// |f^mode| at a crossing at or below this is reported as tangential.
  double tangency_tol = 1e-8;
  long switch_budget = 1'000'000;
  /// Record every accepted step; when false only the end points are kept.
  bool record_samples = true;
};

/// Integrates `mode` from state0 until x reaches the opposite switching line
/// (x = center - w for PLUS, x = center + w for MINUS) or t_max elapses.
/// A state already on or past that line switches immediately (zero-length
/// arc). Crossing times are localized to 1e-13 * max(1, t) and the exit x is
/// placed exactly on the line.
Arc integrate_arc(const SwitchedSystem& system, Mode mode, const Point& state0, double t_max,
                  const FlowOptions& options = {}, double t0 = 0.0);

/// Flight across the band in `mode` starting on the launch line (right line
/// for PLUS, left line for MINUS) at height y.
struct Leg {
  double time = 0.0;
  double y_end = 0.0;
  Arc arc;
};

/// Throws Tangency for a tangential launch or arrival, Domain for a launch
/// pointing away from the band, NoReturn/Divergence when the opposite line is
/// not reached.
Leg traverse(const SwitchedSystem& system, Mode mode, double y, const FlowOptions& options = {});

/// Flight time T^k across the band.
double time_map(const SwitchedSystem& system, Mode mode, double y,
                const FlowOptions& options = {});

/// Height P^k delivered on the opposite switching line.
double half_map(const SwitchedSystem& system, Mode mode, double y,
                const FlowOptions& options = {});

struct StopCriterion {
  std::optional<double> duration;
  std::optional<long> switches;
};

/// Chains arcs with the hysteresis rule: reaching the right line latches
/// PLUS, reaching the left line latches MINUS. mode0 may be omitted only
/// when state0 is outside the open band.
Trajectory simulate(const SwitchedSystem& system, const Point& state0,
                    std::optional<Mode> mode0, const StopCriterion& stop,
                    const FlowOptions& options = {});

}  // namespace swcycle

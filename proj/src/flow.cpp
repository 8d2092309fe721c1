#include "swcycle/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "swcycle/integrator.hpp"
#include "swcycle/roots.hpp"

namespace swcycle {

std::string_view to_string(ExitEvent event) {
  switch (event) {
    case ExitEvent::HitRight: return "right";
    case ExitEvent::HitLeft: return "left";
    case ExitEvent::TimeUp: return "time_up";
    case ExitEvent::Diverged: return "diverged";
  }
  return "unknown";
}

namespace {

double target_line(const SwitchedSystem& system, Mode mode) {
  return mode == Mode::Plus ? system.left_line() : system.right_line();
}

/// Distance still to travel before the target line; <= 0 once reached.
double distance_to_target(const SwitchedSystem& system, Mode mode, const Point& p) {
  return mode == Mode::Plus ? p.x() - system.left_line() : system.right_line() - p.x();
}

ExitEvent hit_event(Mode mode) { return mode == Mode::Plus ? ExitEvent::HitLeft : ExitEvent::HitRight; }

}  // namespace

Arc integrate_arc(const SwitchedSystem& system, Mode mode, const Point& state0, double t_max,
                  const FlowOptions& options, double t0) {
  if (!state0.allFinite()) throw NumericError(ErrorKind::Domain, "initial state is not finite");

  Arc arc;
  arc.mode = mode;
  arc.t_start = arc.t_end = t0;
  arc.samples.push_back({t0, state0.x(), state0.y()});

  if (distance_to_target(system, mode, state0) <= 0.0) {
    arc.exit_event = hit_event(mode);
    return arc;
  }
  if (!system.inside_working_rectangle(state0)) {
    arc.exit_event = ExitEvent::Diverged;
    return arc;
  }
  if (!(t_max > 0.0)) {
    arc.exit_event = ExitEvent::TimeUp;
    return arc;
  }

  using Stepper = DormandPrince<2>;
  const PlanarField& field = system.field(mode);
  Stepper stepper([&field](const Stepper::State& s) { return field(s); },
                  StepperOptions{options.rtol, options.atol, 1e-14});
  stepper.reset(t0, state0);
  const double t_limit = t0 + t_max;

  while (stepper.t() < t_limit) {
    stepper.advance(t_limit);
    const Point p = stepper.y();
    if (!p.allFinite() || !system.inside_working_rectangle(p)) {
      arc.t_end = stepper.t();
      arc.samples.push_back({stepper.t(), p.x(), p.y()});
      arc.exit_event = ExitEvent::Diverged;
      return arc;
    }
    if (distance_to_target(system, mode, p) > 0.0) {
      if (options.record_samples) arc.samples.push_back({stepper.t(), p.x(), p.y()});
      continue;
    }

    // Crossed inside the last step: solve for the substep length that lands
    // on the line, re-integrating from the start of the step.
    const double h = stepper.last_step();
    auto gap = [&](double tau) { return distance_to_target(system, mode, stepper.substep(tau)); };
    const double tol = 1e-13 * std::max(1.0, std::abs(stepper.t()));
    const RootResult root = bracketed_root(gap, 0.0, gap(0.0), h,
                                           distance_to_target(system, mode, p),
                                           RootOptions{tol, 0.0, 200});
    Point exit = stepper.substep(root.x);
    exit.x() = target_line(system, mode);
    arc.t_end = stepper.previous_t() + root.x;
    arc.samples.push_back({arc.t_end, exit.x(), exit.y()});
    arc.exit_event = hit_event(mode);
    arc.tangential = std::abs(field(exit).x()) <= options.tangency_tol;
    return arc;
  }
  arc.t_end = stepper.t();
  if (arc.samples.back().t != stepper.t())
    arc.samples.push_back({stepper.t(), stepper.y().x(), stepper.y().y()});
  arc.exit_event = ExitEvent::TimeUp;
  return arc;
}

Leg traverse(const SwitchedSystem& system, Mode mode, double y, const FlowOptions& options) {
  const double launch = mode == Mode::Plus ? system.right_line() : system.left_line();
  const Point start(launch, y);
  Leg leg;
  if (system.half_width() == 0.0) {
    leg.y_end = y;
    leg.arc = integrate_arc(system, mode, start, 0.0, options);
    return leg;
  }

  const double vx = system.evaluate(mode, start).x();
  if (std::abs(vx) <= options.tangency_tol) {
    std::ostringstream msg;
    msg << "tangential launch in mode " << to_string(mode) << " at (" << launch << ", " << y
        << ")";
    throw NumericError(ErrorKind::Tangency, msg.str());
  }
  if ((mode == Mode::Plus) != (vx < 0.0)) {
    std::ostringstream msg;
    msg << "launch in mode " << to_string(mode) << " at (" << launch << ", " << y
        << ") points away from the band";
    throw NumericError(ErrorKind::Domain, msg.str());
  }

  leg.arc = integrate_arc(system, mode, start, options.t_max_arc, options);
  switch (leg.arc.exit_event) {
    case ExitEvent::HitLeft:
    case ExitEvent::HitRight:
      break;
    case ExitEvent::TimeUp: {
      std::ostringstream msg;
      msg << "mode " << to_string(mode) << " from y=" << y << " does not reach x="
          << target_line(system, mode) << " within t=" << options.t_max_arc;
      throw NumericError(ErrorKind::NoReturn, msg.str());
    }
    case ExitEvent::Diverged:
      throw NumericError(ErrorKind::Divergence, "trajectory left the working rectangle");
  }
  if (leg.arc.tangential) {
    std::ostringstream msg;
    msg << "tangential crossing of x=" << target_line(system, mode) << " at y="
        << leg.arc.end_state().y();
    throw NumericError(ErrorKind::Tangency, msg.str());
  }
  leg.time = leg.arc.duration();
  leg.y_end = leg.arc.end_state().y();
  return leg;
}

double time_map(const SwitchedSystem& system, Mode mode, double y, const FlowOptions& options) {
  return traverse(system, mode, y, options).time;
}

double half_map(const SwitchedSystem& system, Mode mode, double y, const FlowOptions& options) {
  return traverse(system, mode, y, options).y_end;
}

Trajectory simulate(const SwitchedSystem& system, const Point& state0,
                    std::optional<Mode> mode0, const StopCriterion& stop,
                    const FlowOptions& options) {
  if (!stop.duration && !stop.switches)
    throw NumericError(ErrorKind::Domain, "simulate needs a duration or a switch count");
  if (stop.duration && !(*stop.duration >= 0.0))
    throw NumericError(ErrorKind::Domain, "duration must be >= 0");
  if (stop.switches && *stop.switches < 0)
    throw NumericError(ErrorKind::Domain, "switch count must be >= 0");

  Mode mode;
  if (mode0) {
    mode = *mode0;
  } else if (state0.x() >= system.right_line() && state0.x() > system.left_line()) {
    mode = Mode::Plus;
  } else if (state0.x() <= system.left_line() && state0.x() < system.right_line()) {
    mode = Mode::Minus;
  } else {
    throw NumericError(ErrorKind::Domain,
                       "initial state inside the hysteresis band requires an explicit mode");
  }

  const double t_end = stop.duration ? *stop.duration : std::numeric_limits<double>::infinity();
  Trajectory traj;
  Point state = state0;
  double t = 0.0;
  for (;;) {
    if (stop.switches && traj.switch_count >= *stop.switches) break;
    const double remaining = t_end - t;
    if (!traj.arcs.empty() && !(remaining > 0.0)) break;

    Arc arc = integrate_arc(system, mode, state, std::min(options.t_max_arc, remaining), options, t);
    t = arc.t_end;
    state = arc.end_state();
    const ExitEvent exit = arc.exit_event;
    const bool tangential = arc.tangential;
    traj.arcs.push_back(std::move(arc));

    if (exit == ExitEvent::Diverged) {
      throw NumericError(ErrorKind::Divergence, "trajectory left the working rectangle");
    }
    if (exit == ExitEvent::TimeUp) {
      // Without a duration there is nothing left to wait for.
      if (!stop.duration) break;
      continue;
    }
    if (tangential) {
      std::ostringstream msg;
      msg << "tangential crossing at t=" << t << ", (" << state.x() << ", " << state.y() << ")";
      throw NumericError(ErrorKind::Tangency, msg.str());
    }
    mode = exit == ExitEvent::HitLeft ? Mode::Minus : Mode::Plus;
    if (++traj.switch_count > options.switch_budget) {
      std::ostringstream msg;
      msg << "switch budget of " << options.switch_budget << " exceeded at t=" << t;
      throw NumericError(ErrorKind::BudgetExceeded, msg.str());
    }
  }
  return traj;
}

}  // namespace swcycle

#include "swcycle/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace swcycle {

namespace {

struct ReturnMap {
  const SwitchedSystem& system;
  const FlowOptions& options;

  double operator()(double y) const {
    const double mid = half_map(system, Mode::Plus, y, options);
    return half_map(system, Mode::Minus, mid, options);
  }
};

double amplitude_about(const Arc& arc, double cx, double cy, double current) {
  for (const Sample& s : arc.samples) current = std::max(current, std::hypot(s.x - cx, s.y - cy));
  return current;
}

// Returns the fixed point; throws NoCycle after max_iterations. Evaluation
// failures after the first one shrink the step.
double solve_fixed_point(const ReturnMap& map, double y_guess, const CycleOptions& options,
                         int& iterations) {
  auto residual = [&](double y) { return map(y) - y; };
  const double tol = options.residual_tol;

  double y0 = y_guess;
  double r0 = residual(y0);
  iterations = 1;
  if (std::abs(r0) < tol) return y0;

  double y1 = y0 + 1e-4 * std::max(1.0, std::abs(y0));
  double r1 = residual(y1);
  ++iterations;
  if (std::abs(r0) < std::abs(r1)) {
    std::swap(y0, y1);
    std::swap(r0, r1);
  }

  // Damped secant.
  while (iterations < options.max_iterations && std::abs(r1) >= tol) {
    if (r1 == r0) break;
    double step = -r1 * (y1 - y0) / (r1 - r0);
    if (!std::isfinite(step)) break;
    double y2 = y1 + step;
    double r2 = 0.0;
    bool accepted = false;
    while (iterations < options.max_iterations) {
      ++iterations;
      try {
        r2 = residual(y2);
        if (std::abs(r2) <= std::abs(r1) || std::abs(step) < 1e-15 * std::max(1.0, std::abs(y1))) {
          accepted = true;
          break;
        }
      } catch (const NumericError& e) {
        if (e.kind() == ErrorKind::Tangency) throw;
      }
      step *= 0.5;
      y2 = y1 + step;
    }
    if (!accepted) break;
    y0 = y1;
    r0 = r1;
    y1 = y2;
    r1 = r2;
  }
  if (std::abs(r1) < tol) return y1;

  // Picard iteration converges when |P'| < 1.
  double y = std::abs(r1) < std::abs(r0) ? y1 : y0;
  while (iterations < options.max_iterations) {
    ++iterations;
    const double next = map(y);
    if (std::abs(next - y) < tol) return y;
    y = next;
  }
  std::ostringstream msg;
  msg << "no fixed point of the return map after " << options.max_iterations
      << " iterations (last y=" << y << ")";
  throw NumericError(ErrorKind::NoCycle, msg.str());
}

}  // namespace

double poincare_map(const SwitchedSystem& system, double half_width, double y,
                    const FlowOptions& options) {
  const SwitchedSystem banded = system.with_half_width(half_width);
  return ReturnMap{banded, options}(y);
}

LimitCycle find_limit_cycle(const SwitchedSystem& system, double half_width, double y_guess,
                            const CycleOptions& options) {
  if (!(half_width > 0.0)) throw NumericError(ErrorKind::Domain, "half_width must be positive");

  const double eq_y = switched_equilibrium(system, options.eq_guess.value_or(y_guess));
  const HypothesisReport report = check_hypotheses(system, {system.center(), eq_y});
  if (!report.satisfied()) {
    std::ostringstream msg;
    msg << "switched equilibrium at y=" << eq_y << " fails the hypotheses (transversal="
        << report.transversal << ", residual=" << report.equilibrium_residual
        << ", stability=" << report.stability_value << ")";
    throw NumericError(ErrorKind::Hypothesis, msg.str());
  }

  const SwitchedSystem banded = system.with_half_width(half_width);
  const ReturnMap map{banded, options.flow};

  LimitCycle cycle;
  cycle.half_width = half_width;
  cycle.eq_y = eq_y;
  cycle.fixed_y = solve_fixed_point(map, y_guess, options, cycle.iterations);

  Leg plus = traverse(banded, Mode::Plus, cycle.fixed_y, options.flow);
  Leg minus = traverse(banded, Mode::Minus, plus.y_end, options.flow);
  cycle.residual = minus.y_end - cycle.fixed_y;
  cycle.period_plus = plus.time;
  cycle.period_minus = minus.time;
  cycle.period = plus.time + minus.time;

  const double h = std::max(1e-7, 1e-7 * std::abs(cycle.fixed_y));
  cycle.multiplier = (map(cycle.fixed_y + h) - map(cycle.fixed_y - h)) / (2.0 * h);
  cycle.stable = std::abs(cycle.multiplier) < 1.0;

  cycle.amplitude = amplitude_about(plus.arc, system.center(), eq_y, 0.0);
  cycle.amplitude = amplitude_about(minus.arc, system.center(), eq_y, cycle.amplitude);
  cycle.arc_plus = std::move(plus.arc);
  cycle.arc_minus = std::move(minus.arc);
  return cycle;
}

LimitCycle find_limit_cycle_from_equilibrium(const SwitchedSystem& system, double half_width,
                                             double eq_guess, const CycleOptions& options) {
  const double eq_y = switched_equilibrium(system, eq_guess);
  CycleOptions opts = options;
  opts.eq_guess = eq_y;
  return find_limit_cycle(system, half_width, eq_y, opts);
}

double asymptotic_slope(const SwitchedSystem& system, double eq_y) {
  const Point p(system.center(), eq_y);
  const double f_minus = system.evaluate(Mode::Minus, p).x();
  const double f_plus = system.evaluate(Mode::Plus, p).x();
  if (std::abs(f_minus) < 1e-12 || std::abs(f_plus) < 1e-12) {
    throw NumericError(ErrorKind::DegenerateDenominator,
                       "horizontal field component vanishes at the switched equilibrium");
  }
  return -2.0 / f_plus + 2.0 / f_minus;
}

double asymptotic_period(const SwitchedSystem& system, double half_width, double eq_y) {
  return asymptotic_slope(system, eq_y) * half_width;
}

std::vector<SweepRow> sweep(const SwitchedSystem& system, std::vector<double> half_widths,
                            double eq_guess, const CycleOptions& options, int workers) {
  std::sort(half_widths.begin(), half_widths.end());
  const double eq_y = switched_equilibrium(system, eq_guess);
  double slope = 0.0;
  std::string slope_error;
  try {
    slope = asymptotic_slope(system, eq_y);
  } catch (const NumericError& e) {
    slope_error = e.what();
  }

  CycleOptions opts = options;
  opts.eq_guess = eq_y;
  auto run_row = [&](double w, double guess) {
    SweepRow row;
    row.half_width = w;
    row.period_asymptotic = slope * w;
    try {
      if (!slope_error.empty()) throw NumericError(ErrorKind::DegenerateDenominator, slope_error);
      const LimitCycle cycle = find_limit_cycle(system, w, guess, opts);
      row.period_numeric = cycle.period;
      row.multiplier = cycle.multiplier;
      row.amplitude = cycle.amplitude;
      row.fixed_y = cycle.fixed_y;
    } catch (const NumericError& e) {
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows;
  rows.reserve(half_widths.size());
  if (workers <= 1) {
    double guess = eq_y;
    for (double w : half_widths) {
      rows.push_back(run_row(w, guess));
      if (rows.back().error.empty()) guess = rows.back().fixed_y;
    }
    return rows;
  }

  std::vector<std::future<SweepRow>> pending;
  std::size_t next = 0;
  while (next < half_widths.size() || !pending.empty()) {
    while (next < half_widths.size() && pending.size() < static_cast<std::size_t>(workers)) {
      pending.push_back(std::async(std::launch::async, run_row, half_widths[next++], eq_y));
    }
    rows.push_back(pending.front().get());
    pending.erase(pending.begin());
  }
  return rows;
}

double brute_force_fixed_point(const SwitchedSystem& system, double half_width, double y_lo,
                               double y_hi, int n, const FlowOptions& options) {
  if (n < 100) throw NumericError(ErrorKind::Domain, "grid needs at least 100 points");
  if (!(y_lo < y_hi)) throw NumericError(ErrorKind::Domain, "empty interval");

  const SwitchedSystem banded = system.with_half_width(half_width);
  const ReturnMap map{banded, options};
  auto residual = [&](double y) -> std::optional<double> {
    try {
      return map(y) - y;
    } catch (const NumericError&) {
      return std::nullopt;
    }
  };

  std::optional<double> prev_y, prev_r;
  for (int i = 0; i < n; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / (n - 1);
    const auto r = residual(y);
    if (!r) {
      prev_r.reset();
      continue;
    }
    if (*r == 0.0) return y;
    if (prev_r && (*prev_r < 0.0) != (*r < 0.0)) {
      double a = *prev_y, b = y;
      double ra = *prev_r;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b || b - a <= 1e-14 * std::max(1.0, std::abs(mid))) break;
        const auto rm = residual(mid);
        if (!rm) throw NumericError(ErrorKind::NoRoot, "return map undefined inside bracket");
        if (*rm == 0.0) return mid;
        if ((*rm < 0.0) == (ra < 0.0)) {
          a = mid;
          ra = *rm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_y = y;
    prev_r = r;
  }
  std::ostringstream msg;
  msg << "no sign change of P(y) - y on [" << y_lo << ", " << y_hi << "]";
  throw NumericError(ErrorKind::NoRoot, msg.str());
}

}  // namespace swcycle

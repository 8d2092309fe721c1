#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace swcycle {

struct RootOptions {
  double x_tol = 0.0;       // absolute bracket width at which to stop (0: machine limit)
  double f_tol = 0.0;       // |f| at which to stop
  int max_iterations = 100;
};

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Safeguarded secant on a sign-changing bracket [a, b]: secant (regula falsi
/// with the Illinois modification) when the iterate stays well inside the
/// bracket, bisection otherwise. Requires f(a) and f(b) of opposite sign or one
/// of them zero; throws NoRoot otherwise.
RootResult bracketed_root(const std::function<double(double)>& f, double a, double b,
                          const RootOptions& options = {});

/// Same, with precomputed endpoint values.
RootResult bracketed_root(const std::function<double(double)>& f, double a, double fa,
                          double b, double fb, const RootOptions& options = {});

/// Searches for a sign change of f in [guess - W, guess + W], doubling W from
/// initial_width up to max_width. The side nearer the guess is tried first at
/// every width. Evaluations that throw are treated as missing points.
std::optional<std::pair<double, double>> expand_bracket(const std::function<double(double)>& f,
                                                        double guess, double initial_width,
                                                        double max_width);

}  // namespace swcycle

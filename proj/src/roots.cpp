#include "swcycle/roots.hpp"

#include <cmath>
#include <limits>

#include "swcycle/errors.hpp"

namespace swcycle {

namespace {

bool opposite(double fa, double fb) { return (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0); }

}  // namespace

RootResult bracketed_root(const std::function<double(double)>& f, double a, double b,
                          const RootOptions& options) {
  return bracketed_root(f, a, f(a), b, f(b), options);
}

RootResult bracketed_root(const std::function<double(double)>& f, double a, double fa,
                          double b, double fb, const RootOptions& options) {
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};
  if (!opposite(fa, fb)) throw NumericError(ErrorKind::NoRoot, "interval does not bracket a root");

  // Illinois: halve the retained endpoint value on same-side updates, and
  // bisect whenever two steps fail to halve the bracket.
  RootResult best{std::abs(fa) < std::abs(fb) ? a : b, std::abs(fa) < std::abs(fb) ? fa : fb, 0,
                  false};
  double previous_width = std::abs(b - a) * 2.0;
  bool bisect = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double width = std::abs(b - a);
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(a), std::abs(b));
    if (width <= std::max(options.x_tol, floor)) {
      best.iterations = it - 1;
      best.converged = true;
      return best;
    }
    if (it % 2 == 1) {
      bisect = width > 0.5 * previous_width;
      previous_width = width;
    }
    double x = (a * fb - b * fa) / (fb - fa);
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double margin = 0.01 * (hi - lo);
    if (bisect || !std::isfinite(x) || x <= lo + margin || x >= hi - margin) x = 0.5 * (a + b);
    const double fx = f(x);
    if (std::abs(fx) < std::abs(best.fx)) best = {x, fx, it, false};
    if (fx == 0.0 || std::abs(fx) <= options.f_tol) return {x, fx, it, true};
    if (opposite(fx, fb)) {
      a = b;
      fa = fb;
    } else {
      fa *= 0.5;
    }
    b = x;
    fb = fx;
  }
  best.iterations = options.max_iterations;
  best.converged = false;
  return best;
}

std::optional<std::pair<double, double>> expand_bracket(const std::function<double(double)>& f,
                                                        double guess, double initial_width,
                                                        double max_width) {
  auto eval = [&](double x) -> std::optional<double> {
    try {
      const double v = f(x);
      if (std::isfinite(v)) return v;
    } catch (const NumericError&) {
    }
    return std::nullopt;
  };
  const auto f0 = eval(guess);
  if (f0 && *f0 == 0.0) return std::pair{guess, guess};
  std::optional<std::pair<double, double>> right_prev, left_prev;
  if (f0) right_prev = left_prev = std::pair{guess, *f0};

  for (double w = initial_width; w <= max_width; w *= 2.0) {
    for (int s : {+1, -1}) {
      auto& prev = s > 0 ? right_prev : left_prev;
      const double x = guess + s * w;
      const auto fx = eval(x);
      if (fx && *fx == 0.0) return std::pair{x, x};
      if (fx && prev && opposite(prev->second, *fx)) {
        return s > 0 ? std::pair{prev->first, x} : std::pair{x, prev->first};
      }
      if (fx) prev = std::pair{x, *fx};
    }
  }
  return std::nullopt;
}

}  // namespace swcycle

#include "swcycle/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "swcycle/errors.hpp"

namespace swcycle {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

}  // namespace

template <int N>
DormandPrince<N>::DormandPrince(Rhs rhs, StepperOptions options)
    : rhs_(std::move(rhs)), options_(options) {}

template <int N>
double DormandPrince<N>::error_norm(const State& err, const State& y0, const State& y1) const {
  double sum = 0.0;
  for (int i = 0; i < N; ++i) {
    const double sc = options_.atol + options_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    sum += r * r;
  }
  return std::sqrt(sum / N);
}

template <int N>
typename DormandPrince<N>::Trial DormandPrince<N>::attempt(const State& y, const State& k1,
                                                          double h) const {
  const State k2 = rhs_(y + h * a21 * k1);
  const State k3 = rhs_(y + h * (a31 * k1 + a32 * k2));
  const State k4 = rhs_(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const State k5 = rhs_(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const State k6 = rhs_(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = rhs_(y1);
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double norm = error_norm(err, y, y1);
  if (!y1.allFinite() || !k7.allFinite() || !std::isfinite(norm))
    norm = std::numeric_limits<double>::infinity();
  return {y1, k7, norm};
}

template <int N>
double DormandPrince<N>::initial_step(const State& y, const State& k1) const {
  // Hairer, Norsett & Wanner, Solving ODEs I, II.4.
  State sc;
  for (int i = 0; i < N; ++i) sc[i] = options_.atol + options_.rtol * std::abs(y[i]);
  const double d0 = std::sqrt((y.array() / sc.array()).square().sum() / N);
  const double d1 = std::sqrt((k1.array() / sc.array()).square().sum() / N);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  const State y1 = y + h0 * k1;
  const State k2 = rhs_(y1);
  if (!k2.allFinite()) return h0 * 1e-3;
  const double d2 = std::sqrt(((k2 - k1).array() / sc.array()).square().sum() / N) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min(100.0 * h0, h1);
}

template <int N>
void DormandPrince<N>::reset(double t, const State& y) {
  t_ = t_prev_ = t;
  y_ = y_prev_ = y;
  k1_ = k1_prev_ = rhs_(y);
  h_ = initial_step(y, k1_);
  accepted_ = rejected_ = 0;
}

template <int N>
void DormandPrince<N>::advance(double t_limit) {
  const double remaining = t_limit - t_;
  if (!(remaining > 0.0)) return;
  for (;;) {
    const bool clipped = h_ >= remaining;
    const double h = clipped ? remaining : h_;
    const double h_floor = options_.min_step_factor * std::max(1.0, std::abs(t_));
    if (h < h_floor && !clipped) {
      std::ostringstream msg;
      msg << "step size underflow (h=" << h << ") at t=" << t_;
      throw NumericError(ErrorKind::Stiffness, msg.str());
    }
    Trial trial = attempt(y_, k1_, h);
    if (trial.error <= 1.0) {
      t_prev_ = t_;
      y_prev_ = y_;
      k1_prev_ = k1_;
      t_ = clipped ? t_limit : t_ + h;
      y_ = trial.y;
      k1_ = trial.k7;
      ++accepted_;
      const double factor =
          trial.error == 0.0 ? kMaxFactor
                             : std::clamp(kSafety * std::pow(trial.error, -0.2), kMinFactor,
                                          kMaxFactor);
      // A step shortened to hit t_limit says nothing about the natural size.
      h_ = clipped ? std::max(h_, h * factor) : h * factor;
      return;
    }
    ++rejected_;
    const double factor = std::isfinite(trial.error)
                              ? std::clamp(kSafety * std::pow(trial.error, -0.2), kMinFactor, 1.0)
                              : kMinFactor;
    h_ = h * factor;
  }
}

template <int N>
typename DormandPrince<N>::State DormandPrince<N>::substep(double h) const {
  if (h == 0.0) return y_prev_;
  return attempt(y_prev_, k1_prev_, h).y;
}

template class DormandPrince<1>;
template class DormandPrince<2>;

}  // namespace swcycle

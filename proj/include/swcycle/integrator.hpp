#pragma once

#include <functional>
#include <limits>

#include <Eigen/Core>

namespace swcycle {

struct StepperOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Steps below min_step_factor * max(1, |t|) abort with a Stiffness error.
  double min_step_factor = 1e-14;
};

/// Embedded Dormand-Prince 5(4) pair with FSAL and local extrapolation.
///
/// The stepper keeps the last accepted step's start point so callers can
/// re-integrate a single substep of arbitrary length from it; event
/// localization uses this instead of dense output.
template <int N>
class DormandPrince {
 public:
  using State = Eigen::Matrix<double, N, 1>;
  using Rhs = std::function<State(const State&)>;

  DormandPrince(Rhs rhs, StepperOptions options = {});

  /// Restart at (t, y). Selects an initial step automatically.
  void reset(double t, const State& y);

  /// Takes one accepted step not crossing t_limit. Throws Stiffness on step
  /// underflow.
  void advance(double t_limit);

  double t() const { return t_; }
  const State& y() const { return y_; }
  double previous_t() const { return t_prev_; }
  const State& previous_y() const { return y_prev_; }
  double last_step() const { return t_ - t_prev_; }
  int accepted_steps() const { return accepted_; }
  int rejected_steps() const { return rejected_; }

  /// Fifth-order solution of a single step of size h taken from the start of
  /// the last accepted step.
  State substep(double h) const;

 private:
  struct Trial {
    State y;
    State k7;
    double error;
  };
  Trial attempt(const State& y, const State& k1, double h) const;
  double initial_step(const State& y, const State& k1) const;
  double error_norm(const State& err, const State& y0, const State& y1) const;

  Rhs rhs_;
  StepperOptions options_;
  double t_ = 0.0;
  double t_prev_ = 0.0;
  State y_ = State::Zero();
  State y_prev_ = State::Zero();
  State k1_ = State::Zero();
  State k1_prev_ = State::Zero();
  double h_ = 0.0;
  int accepted_ = 0;
  int rejected_ = 0;
};

extern template class DormandPrince<1>;
extern template class DormandPrince<2>;

}  // namespace swcycle

#include "swcycle/filippov.hpp"

#include <cmath>
#include <sstream>

#include "swcycle/integrator.hpp"
#include "swcycle/roots.hpp"

namespace swcycle {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr double kCertificateResidualTol = 1e-8;

struct ThresholdFields {
  Velocity minus;
  Velocity plus;
};

ThresholdFields on_threshold(const SwitchedSystem& system, double y) {
  const Point p(system.center(), y);
  return {system.evaluate(Mode::Minus, p), system.evaluate(Mode::Plus, p)};
}

}  // namespace

double sliding_numerator(const SwitchedSystem& system, double y) {
  const auto [vm, vp] = on_threshold(system, y);
  return vp.x() * vm.y() - vm.x() * vp.y();
}

double sliding_rhs(const SwitchedSystem& system, double y) {
  const auto [vm, vp] = on_threshold(system, y);
  const double denom = vp.x() - vm.x();
  if (std::abs(denom) < kDenominatorFloor) {
    std::ostringstream msg;
    msg << "f+ - f- vanishes at y=" << y;
    throw NumericError(ErrorKind::DegenerateDenominator, msg.str());
  }
  if (!(vp.x() < 0.0 && vm.x() > 0.0)) {
    std::ostringstream msg;
    msg << "y=" << y << " is not in the sliding region (f-=" << vm.x() << ", f+=" << vp.x()
        << ")";
    throw NumericError(ErrorKind::NotSliding, msg.str());
  }
  return (vp.x() * vm.y() - vm.x() * vp.y()) / denom;
}

double switched_equilibrium(const SwitchedSystem& system, double y_guess) {
  auto residual = [&](double y) { return sliding_numerator(system, y); };
  const auto bracket = expand_bracket(residual, y_guess, 1.0, 1e4);
  if (!bracket) {
    std::ostringstream msg;
    msg << "no sign change of the sliding numerator within 1e4 of y=" << y_guess;
    throw NumericError(ErrorKind::NoEquilibrium, msg.str());
  }
  const RootResult root = bracketed_root(residual, bracket->first, bracket->second,
                                         RootOptions{0.0, 0.0, 100});
  if (!root.converged || !(std::abs(root.fx) < kResidualTol)) {
    std::ostringstream msg;
    msg << "switched equilibrium did not converge (residual " << root.fx << " at y=" << root.x
        << ")";
    throw NumericError(ErrorKind::Convergence, msg.str());
  }
  return root.x;
}

SlidingAnalysis stability_certificate(const SwitchedSystem& system, double eq_y) {
  const HypothesisReport report = check_hypotheses(system, {system.center(), eq_y});
  if (!report.transversal) {
    std::ostringstream msg;
    msg << "threshold is not sliding at y=" << eq_y << " (f-=" << report.f_minus_at_eq
        << ", f+=" << report.f_plus_at_eq << ")";
    throw NumericError(ErrorKind::NotSliding, msg.str());
  }
  if (!report.equilibrium(kCertificateResidualTol)) {
    std::ostringstream msg;
    msg << "y=" << eq_y << " is not a switched equilibrium (residual "
        << report.equilibrium_residual << ")";
    throw NumericError(ErrorKind::NotAnEquilibrium, msg.str());
  }
  SlidingAnalysis a;
  a.eq_y = eq_y;
  a.lambda = report.lambda;
  a.stability_value = report.stability_value;
  a.degenerate = report.stability_value == 0.0;
  a.stable = report.stability_value > 0.0;
  a.f_minus = report.f_minus_at_eq;
  a.f_plus = report.f_plus_at_eq;
  a.b_coefficient = report.stability_value / (report.f_plus_at_eq * report.f_minus_at_eq);
  return a;
}

SlidingPath integrate_sliding(const SwitchedSystem& system, double y0, double duration,
                              int samples, double rtol, double atol) {
  if (!(duration >= 0.0)) throw NumericError(ErrorKind::Domain, "duration must be >= 0");
  if (samples < 1) throw NumericError(ErrorKind::Domain, "samples must be >= 1");

  // Distance into the sliding region; positive while f+ < 0 < f-.
  auto margin = [&](double y) {
    const auto [vm, vp] = on_threshold(system, y);
    return std::min(vm.x(), -vp.x());
  };
  if (!(margin(y0) > 0.0)) {
    std::ostringstream msg;
    msg << "initial point y=" << y0 << " is not in the sliding region";
    throw NumericError(ErrorKind::NotSliding, msg.str());
  }

  using Stepper = DormandPrince<1>;
  Stepper stepper(
      [&](const Stepper::State& s) {
        const Point p(system.center(), s[0]);
        const Velocity vm = system.field_minus()(p);
        const Velocity vp = system.field_plus()(p);
        Stepper::State out;
        out[0] = (vp.x() * vm.y() - vm.x() * vp.y()) / (vp.x() - vm.x());
        return out;
      },
      StepperOptions{rtol, atol, 1e-14});
  stepper.reset(0.0, Stepper::State::Constant(y0));

  SlidingPath path;
  path.t.push_back(0.0);
  path.y.push_back(y0);
  for (int k = 1; k <= samples && duration > 0.0; ++k) {
    const double target = k == samples ? duration : duration * k / samples;
    while (stepper.t() < target) {
      stepper.advance(target);
      if (margin(stepper.y()[0]) > 0.0) continue;
      // Left the sliding region inside the last step: localize the exit.
      const double h = stepper.last_step();
      const auto inside = [&](double tau) { return margin(stepper.substep(tau)[0]); };
      const RootResult exit = bracketed_root(inside, 0.0, inside(0.0), h, inside(h),
                                             RootOptions{1e-14 * std::max(1.0, stepper.t()),
                                                         0.0, 200});
      path.t.push_back(stepper.previous_t() + exit.x);
      path.y.push_back(stepper.substep(exit.x)[0]);
      path.exited = true;
      return path;
    }
    path.t.push_back(stepper.t());
    path.y.push_back(stepper.y()[0]);
  }
  return path;
}

}  // namespace swcycle

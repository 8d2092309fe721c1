#include "swcycle/systems.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace swcycle {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DegenerateDenominator: return "degenerate_denominator";
    case ErrorKind::NotSliding: return "not_sliding";
    case ErrorKind::NoEquilibrium: return "no_equilibrium";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::NotAnEquilibrium: return "not_an_equilibrium";
    case ErrorKind::Stiffness: return "stiffness";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::NoReturn: return "no_return";
    case ErrorKind::Tangency: return "tangency";
    case ErrorKind::BudgetExceeded: return "budget_exceeded";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::NoCycle: return "no_cycle";
    case ErrorKind::NoRoot: return "no_root";
    case ErrorKind::DesignInfeasible: return "design_infeasible";
  }
  return "unknown";
}

std::string_view to_string(Mode mode) { return mode == Mode::Plus ? "plus" : "minus"; }

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "plus" || text == "+1" || text == "1" || text == "PLUS") return Mode::Plus;
  if (text == "minus" || text == "-1" || text == "MINUS") return Mode::Minus;
  return std::nullopt;
}

PlanarField PlanarField::from_function(Function fn) {
  PlanarField field;
  field.fn_ = std::move(fn);
  return field;
}

PlanarField PlanarField::affine(const Eigen::Matrix2d& matrix, const Eigen::Vector2d& offset) {
  PlanarField field;
  field.fn_ = [matrix, offset](const Point& p) -> Velocity { return matrix * p + offset; };
  field.affine_ = AffineForm{matrix, offset};
  return field;
}

SwitchedSystem::SwitchedSystem(PlanarField minus, PlanarField plus, double half_width,
                               double center)
    : minus_(std::move(minus)), plus_(std::move(plus)), half_width_(half_width),
      center_(center) {
  if (!(half_width >= 0.0) || !std::isfinite(half_width))
    throw NumericError(ErrorKind::Domain, "half_width must be finite and >= 0");
  if (!std::isfinite(center)) throw NumericError(ErrorKind::Domain, "center must be finite");
}

SwitchedSystem SwitchedSystem::with_half_width(double half_width) const {
  SwitchedSystem copy(minus_, plus_, half_width, center_);
  copy.working_bound_ = working_bound_;
  return copy;
}

SwitchedSystem SwitchedSystem::with_working_bound(double bound) const {
  if (!(bound > 0.0)) throw NumericError(ErrorKind::Domain, "working bound must be positive");
  SwitchedSystem copy = *this;
  copy.working_bound_ = bound;
  return copy;
}

bool SwitchedSystem::inside_working_rectangle(const Point& state) const {
  return std::abs(state.x()) <= working_bound_ && std::abs(state.y()) <= working_bound_;
}

Velocity SwitchedSystem::evaluate(Mode mode, const Point& state) const {
  if (!inside_working_rectangle(state)) {
    std::ostringstream msg;
    msg << "state (" << state.x() << ", " << state.y() << ") outside working rectangle";
    throw NumericError(ErrorKind::Domain, msg.str());
  }
  Velocity v = field(mode)(state);
  if (!std::isfinite(v.x()) || !std::isfinite(v.y())) {
    std::ostringstream msg;
    msg << "non-finite " << to_string(mode) << " field value at (" << state.x() << ", "
        << state.y() << ")";
    throw NumericError(ErrorKind::Evaluation, msg.str());
  }
  return v;
}

bool HypothesisReport::equilibrium(double tol) const {
  return std::abs(equilibrium_residual) < tol;
}

HypothesisReport check_hypotheses(const SwitchedSystem& system, const Point& eq_point) {
  const double c = system.center();
  if (std::abs(eq_point.x() - c) > 1e-9 * std::max(1.0, std::abs(c))) {
    std::ostringstream msg;
    msg << "point x=" << eq_point.x() << " is not on the switching line x=" << c;
    throw NumericError(ErrorKind::Domain, msg.str());
  }
  const double y = eq_point.y();
  const Point p(c, y);
  const Velocity vm = system.evaluate(Mode::Minus, p);
  const Velocity vp = system.evaluate(Mode::Plus, p);

  const double h = derivative_step(y);
  const Velocity dm = (system.evaluate(Mode::Minus, {c, y + h}) -
                       system.evaluate(Mode::Minus, {c, y - h})) / (2.0 * h);
  const Velocity dp = (system.evaluate(Mode::Plus, {c, y + h}) -
                       system.evaluate(Mode::Plus, {c, y - h})) / (2.0 * h);

  HypothesisReport r;
  r.f_minus_at_eq = vm.x();
  r.f_plus_at_eq = vp.x();
  r.g_minus_at_eq = vm.y();
  r.g_plus_at_eq = vp.y();
  r.transversal = vm.x() > 0.0 && vp.x() < 0.0;
  r.equilibrium_residual = vp.x() * vm.y() - vm.x() * vp.y();
  r.stability_value = dp.x() * vm.y() + vp.x() * dm.y() - dm.x() * vp.y() - vm.x() * dp.y();
  // lambda f- + (1 - lambda) f+ = 0 fixes lambda from the horizontal components.
  const double denom = vp.x() - vm.x();
  r.lambda = denom != 0.0 ? vp.x() / denom : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace swcycle

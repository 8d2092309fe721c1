#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "swcycle/errors.hpp"

namespace swcycle {

using Point = Eigen::Vector2d;
using Velocity = Eigen::Vector2d;

/// Active subsystem. PLUS is latched on reaching the right switching line,
/// MINUS on reaching the left one.
enum class Mode { Minus, Plus };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Affine vector field v = A p + b.
struct AffineForm {
  Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
};

/// A planar vector field (f, g). Either wraps an arbitrary callable or an
/// affine form; the affine form is kept so it can be reported and serialized.
class PlanarField {
 public:
  using Function = std::function<Velocity(const Point&)>;

  PlanarField() = default;

  static PlanarField from_function(Function fn);
  static PlanarField affine(const Eigen::Matrix2d& matrix, const Eigen::Vector2d& offset);

  Velocity operator()(const Point& p) const { return fn_(p); }

  const std::optional<AffineForm>& affine_form() const noexcept { return affine_; }

 private:
  Function fn_;
  std::optional<AffineForm> affine_;
};

/// Two planar fields with hysteresis switching on the vertical lines
/// x = center - half_width and x = center + half_width. With half_width == 0
/// the pair is the Filippov system with switching line x = center.
///
/// The analysis is translation invariant in x, so the switching lines are used
/// directly instead of shifting coordinates to put them at +-half_width.
class SwitchedSystem {
 public:
  static constexpr double kDefaultWorkingBound = 1e6;

  SwitchedSystem(PlanarField minus, PlanarField plus, double half_width = 0.0,
                 double center = 0.0);

  const PlanarField& field(Mode mode) const { return mode == Mode::Plus ? plus_ : minus_; }
  const PlanarField& field_minus() const { return minus_; }
  const PlanarField& field_plus() const { return plus_; }

  double half_width() const noexcept { return half_width_; }
  double center() const noexcept { return center_; }
  double right_line() const noexcept { return center_ + half_width_; }
  double left_line() const noexcept { return center_ - half_width_; }

  /// Half-size of the square |x|,|y| <= bound outside which integration aborts.
  double working_bound() const noexcept { return working_bound_; }

  SwitchedSystem with_half_width(double half_width) const;
  SwitchedSystem with_working_bound(double bound) const;

  /// (f^k, g^k) at the state. Throws Evaluation on a non-finite result and
  /// Domain when the state lies outside the working rectangle.
  Velocity evaluate(Mode mode, const Point& state) const;

  bool inside_working_rectangle(const Point& state) const;

 private:
  PlanarField minus_;
  PlanarField plus_;
  double half_width_;
  double center_;
  double working_bound_ = kDefaultWorkingBound;
};

/// Standing hypotheses of the bifurcation result evaluated at a point of the
/// switching line.
struct HypothesisReport {
  double f_minus_at_eq = 0.0;
  double f_plus_at_eq = 0.0;
  double g_minus_at_eq = 0.0;
  double g_plus_at_eq = 0.0;
  bool transversal = false;
  /// f+ g- - f- g+; zero at a switched equilibrium.
  double equilibrium_residual = 0.0;
  /// f+_y g- + f+ g-_y - f-_y g+ - f- g+_y; positive means the sliding
  /// equilibrium is asymptotically stable.
  double stability_value = 0.0;
  /// Weight of the MINUS field in the vanishing convex combination.
  double lambda = 0.0;

  bool equilibrium(double tol = 1e-8) const;
  bool satisfied(double tol = 1e-8) const {
    return transversal && equilibrium(tol) && stability_value > 0.0;
  }
};

/// Central-difference step used for y-derivatives of user fields.
inline double derivative_step(double y) { return 1e-6 * std::max(1.0, std::abs(y)); }

/// Throws Domain if eq_point is not on the centre line.
HypothesisReport check_hypotheses(const SwitchedSystem& system, const Point& eq_point);

}  // namespace swcycle

#pragma once

#include <string_view>

#include <Eigen/Core>

#include "swcycle/cycles.hpp"

namespace swcycle {

enum class TimeUnit { Second, Millisecond };

std::string_view to_string(TimeUnit unit);

/// Circuit constants of the dc-dc converter in SI units (ohm, henry, farad,
/// volt). time_unit selects the time scale of the generated model.
struct ConverterParams {
  double r_l = 0.25;
  double inductance = 1e-3;
  double r_load = 50.0;
  double capacitance = 20.5e-3;
  double v_s = 12.0;
  double v_d = 0.4;
  TimeUnit time_unit = TimeUnit::Millisecond;

  /// Throws Domain unless every constant is finite and positive.
  void validate() const;

  /// Rates are divided by this factor (1000 for milliseconds).
  double rate_scale() const { return time_unit == TimeUnit::Millisecond ? 1e-3 : 1.0; }
};

/// Hysteresis rule on n.(i_L, u_C): PLUS above c + eps, MINUS below c - eps.
struct ControlRule {
  Eigen::Vector2d n{0.91, 0.415};
  double c = 8.0;
  double eps = 0.2;

  void validate() const;
};

/// Converter subsystems in (i_L, u_C) coordinates with the oblique switching
/// rule they are driven by.
struct ConverterModel {
  ConverterParams params;
  ControlRule rule;
  AffineForm minus;  // switch open: inductor and capacitor decoupled
  AffineForm plus;   // switch closed

  double switching_value(const Point& iu) const { return rule.n.dot(iu); }
};

ConverterModel build_converter(const ConverterParams& params, const ControlRule& rule);

/// Rotation [[n1, -n2], [n2, n1]] taking (x, y) to (i_L, u_C).
Eigen::Matrix2d rotation(const Eigen::Vector2d& n);
Point to_normal(const Eigen::Vector2d& n, const Point& iu);
Point from_normal(const Eigen::Vector2d& n, const Point& xy);

/// The converter in rotated coordinates where the switching lines are
/// x = (c +- eps)/|n|^2. Uses the exact inverse of the rotation.
SwitchedSystem transform_to_normal(const ConverterParams& params, const ControlRule& rule);

/// Capacitor voltage at the switched equilibrium for threshold constant c.
/// y_guess seeds the equilibrium search in rotated coordinates.
double equilibrium_voltage(const ConverterParams& params, const Eigen::Vector2d& n, double c,
                           double y_guess);

/// Threshold constant c whose switched equilibrium has u_C == u_ref.
/// Throws DesignInfeasible when no such c is found.
double solve_reference_c(const ConverterParams& params, const Eigen::Vector2d& n, double u_ref);

struct CaseStudyOptions {
  CycleOptions cycle;
  /// Switches simulated before handing over to the fixed-point solver.
  long transient_switches = 200;
};

struct CaseStudy {
  ConverterParams params;
  ControlRule rule;
  Point initial_iu;
  Trajectory transient;
  SlidingAnalysis sliding;
  LimitCycle cycle;
  double asymptotic_period = 0.0;
  /// |numeric - asymptotic| / numeric
  double relative_gap = 0.0;
  double u_c_equilibrium = 0.0;
  double u_c_min = 0.0;
  double u_c_max = 0.0;
};

CaseStudy case_study(const ConverterParams& params, const ControlRule& rule,
                     const Point& initial_iu, const CaseStudyOptions& options = {});

}  // namespace swcycle

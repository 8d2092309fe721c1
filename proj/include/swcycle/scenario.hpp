#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swcycle/converter.hpp"

namespace swcycle {

/// Scenario parse or validation failure (CLI exit status 2).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a CLI run needs. Read from an INI-style file:
///
///   [system]     type = symmetric-test | tangency-test | converter | affine
///                half_width, center
///   [plus]       matrix = a11 a12 a21 a22, offset = b1 b2   (type = affine)
///   [minus]      same
///   [initial]    x, y, mode = plus | minus
///   [stop]       duration, switches
///   [cycle]      y_guess, eq_guess, residual_tol, max_iterations
///   [sweep]      half_widths = w1 w2 ...
///   [converter]  r_l, inductance, r_load, capacitance, v_s, v_d, time_unit,
///                n1, n2, c, eps, u_ref, i_l0, u_c0, transient_switches
///   [solver]     rtol, atol, t_max_arc, tangency_tol, switch_budget
///   [output]     dir
///
/// Unknown sections or keys are rejected.
struct Scenario {
  std::string type = "symmetric-test";
  double half_width = 0.1;
  double center = 0.0;
  std::optional<AffineForm> plus;
  std::optional<AffineForm> minus;

  std::optional<Point> initial;
  std::optional<Mode> mode;
  StopCriterion stop;

  std::optional<double> y_guess;
  double eq_guess = 0.0;
  std::vector<double> half_widths;

  ConverterParams converter;
  ControlRule rule;
  double u_ref = 18.0;
  Point initial_iu{2.3, 15.15};
  long transient_switches = 200;

  CycleOptions cycle;
  std::string output_dir = ".";
};

/// Parses INI text and applies `section.key=value` overrides on top.
Scenario parse_scenario(std::istream& in, const std::vector<std::string>& overrides = {});
Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});
Scenario default_scenario(const std::vector<std::string>& overrides = {});

/// The switched system described by the scenario.
SwitchedSystem build_system(const Scenario& scenario);

}  // namespace swcycle

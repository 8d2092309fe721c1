#include "swcycle/converter.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "swcycle/roots.hpp"

namespace swcycle {

std::string_view to_string(TimeUnit unit) {
  return unit == TimeUnit::Millisecond ? "ms" : "s";
}

void ConverterParams::validate() const {
  for (double v : {r_l, inductance, r_load, capacitance, v_s, v_d}) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw NumericError(ErrorKind::Domain, "converter parameters must be finite and positive");
  }
}

void ControlRule::validate() const {
  if (!n.allFinite() || !(n.norm() > 0.0))
    throw NumericError(ErrorKind::Domain, "switching normal must be non-zero");
  if (!std::isfinite(c)) throw NumericError(ErrorKind::Domain, "threshold c must be finite");
  if (!std::isfinite(eps) || !(eps >= 0.0))
    throw NumericError(ErrorKind::Domain, "eps must be finite and >= 0");
}

ConverterModel build_converter(const ConverterParams& params, const ControlRule& rule) {
  params.validate();
  rule.validate();
  const double s = params.rate_scale();
  const double L = params.inductance, C = params.capacitance;

  ConverterModel model;
  model.params = params;
  model.rule = rule;
  // Resistive damping enters with a negative sign in both subsystems.
  model.minus.matrix << -params.r_l / L, 0.0,
                        0.0, -1.0 / (params.r_load * C);
  model.minus.offset << params.v_s / L, 0.0;
  model.plus.matrix << -params.r_l / L, -1.0 / L,
                       1.0 / C, -1.0 / (params.r_load * C);
  model.plus.offset << (params.v_s - params.v_d) / L, 0.0;
  model.minus.matrix *= s;
  model.minus.offset *= s;
  model.plus.matrix *= s;
  model.plus.offset *= s;
  return model;
}

Eigen::Matrix2d rotation(const Eigen::Vector2d& n) {
  Eigen::Matrix2d r;
  r << n[0], -n[1],
       n[1], n[0];
  return r;
}

Point to_normal(const Eigen::Vector2d& n, const Point& iu) {
  return rotation(n).transpose() * iu / n.squaredNorm();
}

Point from_normal(const Eigen::Vector2d& n, const Point& xy) { return rotation(n) * xy; }

SwitchedSystem transform_to_normal(const ConverterParams& params, const ControlRule& rule) {
  const ConverterModel model = build_converter(params, rule);
  const Eigen::Matrix2d r = rotation(rule.n);
  const Eigen::Matrix2d r_inv = r.transpose() / rule.n.squaredNorm();
  auto rotate = [&](const AffineForm& f) {
    return PlanarField::affine(r_inv * f.matrix * r, r_inv * f.offset);
  };
  const double nn = rule.n.squaredNorm();
  return SwitchedSystem(rotate(model.minus), rotate(model.plus), rule.eps / nn, rule.c / nn);
}

double equilibrium_voltage(const ConverterParams& params, const Eigen::Vector2d& n, double c,
                           double y_guess) {
  const SwitchedSystem system = transform_to_normal(params, ControlRule{n, c, 0.0});
  const double y = switched_equilibrium(system, y_guess);
  return from_normal(n, {system.center(), y}).y();
}

double solve_reference_c(const ConverterParams& params, const Eigen::Vector2d& n,
                         double u_ref) {
  ControlRule{n, 0.0, 0.0}.validate();
  if (!std::isfinite(u_ref)) throw NumericError(ErrorKind::Domain, "u_ref must be finite");
  const double nn = n.squaredNorm();
  // u_C = n2 x + n1 y on the line x = c/|n|^2; seed y with the value that
  // would give u_ref exactly.
  auto mismatch = [&](double c) {
    const double y_guess = (u_ref - n[1] * c / nn) / n[0];
    return equilibrium_voltage(params, n, c, y_guess) - u_ref;
  };
  const auto bracket = expand_bracket(mismatch, 0.0, 1.0, 1e4);
  if (!bracket) {
    std::ostringstream msg;
    msg << "no threshold constant reaches u_ref=" << u_ref;
    throw NumericError(ErrorKind::DesignInfeasible, msg.str());
  }
  RootResult root;
  try {
    root = bracketed_root(mismatch, bracket->first, bracket->second, RootOptions{1e-13, 0.0, 100});
  } catch (const NumericError& e) {
    throw NumericError(ErrorKind::DesignInfeasible, e.what());
  }
  if (!root.converged || !(std::abs(root.fx) < 1e-8)) {
    std::ostringstream msg;
    msg << "reference design did not converge (mismatch " << root.fx << " V at c=" << root.x
        << ")";
    throw NumericError(ErrorKind::DesignInfeasible, msg.str());
  }
  return root.x;
}

CaseStudy case_study(const ConverterParams& params, const ControlRule& rule,
                     const Point& initial_iu, const CaseStudyOptions& options) {
  CaseStudy study;
  study.params = params;
  study.rule = rule;
  study.initial_iu = initial_iu;

  const SwitchedSystem system = transform_to_normal(params, rule);
  const Point start = to_normal(rule.n, initial_iu);
  const double seed = switched_equilibrium(system, start.y());
  study.sliding = stability_certificate(system, seed);
  study.u_c_equilibrium = from_normal(rule.n, {system.center(), seed}).y();

  study.transient = simulate(system, start, std::nullopt,
                             StopCriterion{std::nullopt, options.transient_switches},
                             options.cycle.flow);

  // Last arrival on the right line seeds the fixed-point solve.
  double guess = seed;
  for (auto it = study.transient.arcs.rbegin(); it != study.transient.arcs.rend(); ++it) {
    if (it->exit_event == ExitEvent::HitRight) {
      guess = it->end_state().y();
      break;
    }
  }
  CycleOptions cycle_opts = options.cycle;
  cycle_opts.eq_guess = seed;
  study.cycle = find_limit_cycle(system, system.half_width(), guess, cycle_opts);
  study.asymptotic_period = asymptotic_period(system, system.half_width(), study.cycle.eq_y);
  study.relative_gap =
      std::abs(study.cycle.period - study.asymptotic_period) / study.cycle.period;

  study.u_c_min = std::numeric_limits<double>::infinity();
  study.u_c_max = -std::numeric_limits<double>::infinity();
  for (const Arc* arc : {&study.cycle.arc_plus, &study.cycle.arc_minus}) {
    for (const Sample& s : arc->samples) {
      const double u = from_normal(rule.n, {s.x, s.y}).y();
      study.u_c_min = std::min(study.u_c_min, u);
      study.u_c_max = std::max(study.u_c_max, u);
    }
  }
  return study;
}

}  // namespace swcycle

#include "swcycle/builtins.hpp"

#include <cmath>

#include "swcycle/converter.hpp"

namespace swcycle {

SwitchedSystem symmetric_test_system(double half_width) {
  Eigen::Matrix2d a;
  a << 0.0, 0.0,
       0.0, -1.0;
  return SwitchedSystem(PlanarField::affine(a, {1.0, 1.0}),
                        PlanarField::affine(a, {-1.0, -1.0}), half_width, 0.0);
}

SwitchedSystem tangency_test_system(double half_width) {
  auto plus = PlanarField::from_function([](const Point& p) -> Velocity {
    const double d = 1.0 - p.y();
    return {-d * d, -1.0};
  });
  return SwitchedSystem(PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, 1.0}), plus,
                        half_width, 0.0);
}

double tangency_launch_height(double half_width) { return 1.0 + std::cbrt(6.0 * half_width); }

SwitchedSystem converter_system(double c, double eps) {
  ControlRule rule;
  rule.c = c;
  rule.eps = eps;
  return transform_to_normal(ConverterParams{}, rule);
}

SwitchedSystem random_stable_system(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(0.5, 2.0);
  for (;;) {
    Eigen::Matrix2d a_minus, a_plus;
    a_minus << entry(rng), entry(rng), entry(rng), entry(rng);
    a_plus << entry(rng), entry(rng), entry(rng), entry(rng);
    const double f_minus = speed(rng);
    const double f_plus = -speed(rng);
    const double g_minus = 2.0 * entry(rng);
    // Vanishing f+ g- - f- g+ at the origin.
    const double g_plus = f_plus * g_minus / f_minus;
    SwitchedSystem system(PlanarField::affine(a_minus, {f_minus, g_minus}),
                          PlanarField::affine(a_plus, {f_plus, g_plus}));
    const HypothesisReport r = check_hypotheses(system, {0.0, 0.0});
    if (r.satisfied() && r.stability_value > 0.1) return system;
  }
}

std::vector<std::string_view> builtin_names() {
  return {"symmetric-test", "tangency-test", "converter"};
}

}  // namespace swcycle

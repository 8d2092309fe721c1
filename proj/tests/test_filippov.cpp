#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "swcycle/builtins.hpp"
#include "swcycle/converter.hpp"
#include "swcycle/filippov.hpp"

using namespace swcycle;

namespace {

SwitchedSystem time_reversed_symmetric() {
  Eigen::Matrix2d a;
  a << 0.0, 0.0,
       0.0, 1.0;
  return SwitchedSystem(PlanarField::affine(a, {-1.0, -1.0}), PlanarField::affine(a, {1.0, 1.0}));
}

double numeric_slope(const SwitchedSystem& sys, double y) {
  const double h = 1e-6 * std::max(1.0, std::abs(y));
  return (sliding_rhs(sys, y + h) - sliding_rhs(sys, y - h)) / (2 * h);
}

}  // namespace

TEST_CASE("sliding_rhs on the symmetric system is y' = -y") {
  // (f+ g- - f- g+)/(f+ - f-) = ((-1)(1 - y) - (1)(-y - 1))/(-2) = -y.
  const SwitchedSystem sym = symmetric_test_system();
  CHECK(sliding_rhs(sym, 1.0) == doctest::Approx(-1.0));
  CHECK(sliding_rhs(sym, 0.0) == 0.0);
  CHECK(sliding_rhs(sym, -0.3) == doctest::Approx(0.3));
}

TEST_CASE("sliding_rhs errors") {
  try {
    sliding_rhs(time_reversed_symmetric(), 0.0);
    FAIL("expected not-sliding");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::NotSliding);
  }
  auto same = PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, 0.0});
  try {
    sliding_rhs(SwitchedSystem(same, same), 0.0);
    FAIL("expected a degenerate denominator");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateDenominator);
  }
}

TEST_CASE("sliding numerator on the converter reproduces the reference quadratic at its root") {
  // -0.533c + 0.243y + 0.01c^2 - 0.008cy + 0.003y^2 = 0 is a rounded form of
  // the equilibrium curve; its root near y = 16 must match ours to the
  // rounding of those coefficients.
  for (double c : {7.5, 7.976, 8.0, 8.5}) {
    ControlRule rule;
    rule.c = c;
    rule.eps = 0.0;
    const SwitchedSystem conv = transform_to_normal(ConverterParams{}, rule);
    const double y = switched_equilibrium(conv, 16.0);
    const double a = 0.003, b = 0.243 - 0.008 * c, k = -0.533 * c + 0.01 * c * c;
    const double reference_root = (-b + std::sqrt(b * b - 4 * a * k)) / (2 * a);
    CHECK(std::abs(y - reference_root) < 0.25);
    // Reference polynomial evaluated at our root, against the spread of its
    // rounded coefficients (5e-4 each on terms of size c, y, c^2, cy, y^2).
    const double reference = k + 0.243 * y - 0.008 * c * y + 0.003 * y * y;
    CHECK(std::abs(reference) < 5e-4 * (c + y + c * c + c * y + y * y));
  }
}

TEST_CASE("switched_equilibrium") {
  const SwitchedSystem sym = symmetric_test_system();
  CHECK(std::abs(switched_equilibrium(sym, 0.5)) < 1e-12);

  // y* = (18 - 0.415 c)/0.91 when c is the reference design for 18 V.
  ControlRule rule;
  rule.c = 7.976;
  rule.eps = 0.0;
  const SwitchedSystem conv = transform_to_normal(ConverterParams{}, rule);
  const double y = switched_equilibrium(conv, 16.0);
  CHECK(std::abs(y - (18.0 - 0.415 * 7.976) / 0.91) < 0.01);
  CHECK(std::abs(sliding_numerator(conv, y)) < 1e-10);

  // Parallel vertical fields g+ = g- = 1 - y and f+ = -f-: numerator 2 f+ g.
  Eigen::Matrix2d a;
  a << 0.0, 0.0,
       0.0, -1.0;
  const SwitchedSystem parallel(PlanarField::affine(a, {2.0, 1.0}),
                                PlanarField::affine(a, {-2.0, 1.0}));
  CHECK(switched_equilibrium(parallel, -3.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("switched_equilibrium reports missing roots") {
  auto vm = PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, 1.0});
  auto vp = PlanarField::affine(Eigen::Matrix2d::Zero(), {-1.0, 2.0});
  try {
    switched_equilibrium(SwitchedSystem(vm, vp), 0.0);
    FAIL("expected no equilibrium");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::NoEquilibrium);
  }
}

TEST_CASE("switched_equilibrium is independent of the guess within a basin") {
  const SwitchedSystem conv = converter_system();
  const double a = switched_equilibrium(conv, 15.0);
  const double b = switched_equilibrium(conv, 17.5);
  CHECK(std::abs(a - b) < 1e-10);
  // Frozen from an independent scipy brentq solve of the same residual.
  CHECK(a == doctest::Approx(16.183773111750394).epsilon(1e-9));
}

TEST_CASE("stability_certificate") {
  // Hand evaluation: stability 2, b = 2/((-1)(1)) = -2.
  const SlidingAnalysis s = stability_certificate(symmetric_test_system(), 0.0);
  CHECK(s.stability_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(s.b_coefficient == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(s.stable);
  CHECK_FALSE(s.degenerate);

  try {
    stability_certificate(time_reversed_symmetric(), 0.0);
    FAIL("expected refusal");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::NotSliding);
  }
  try {
    stability_certificate(symmetric_test_system(), 0.3);
    FAIL("expected not-an-equilibrium");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::NotAnEquilibrium);
  }
}

TEST_CASE("stability_certificate on the converter matches exact affine derivatives") {
  ControlRule rule;
  rule.c = 7.976;
  rule.eps = 0.0;
  const SwitchedSystem conv = transform_to_normal(ConverterParams{}, rule);
  const double y = switched_equilibrium(conv, 16.14);
  const SlidingAnalysis s = stability_certificate(conv, y);
  CHECK(s.stable);

  const AffineForm& m = *conv.field_minus().affine_form();
  const AffineForm& p = *conv.field_plus().affine_form();
  const Point q(conv.center(), y);
  const Eigen::Vector2d vm = m.matrix * q + m.offset, vp = p.matrix * q + p.offset;
  const double exact = p.matrix(0, 1) * vm.y() + vp.x() * m.matrix(1, 1) -
                       m.matrix(0, 1) * vp.y() - vm.x() * p.matrix(1, 1);
  CHECK(s.stability_value == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("sliding slope at equilibrium has sign opposite to the stability value") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const SwitchedSystem sys = random_stable_system(rng);
    const SlidingAnalysis s = stability_certificate(sys, 0.0);
    CHECK(numeric_slope(sys, 0.0) * s.stability_value < 0.0);
    CHECK(s.b_coefficient < 0.0);
    CHECK(s.b_coefficient ==
          doctest::Approx(s.stability_value / (s.f_plus * s.f_minus)).epsilon(1e-12));
  }
  const SwitchedSystem conv = converter_system();
  const double y = switched_equilibrium(conv, 16.0);
  CHECK(numeric_slope(conv, y) * stability_certificate(conv, y).stability_value < 0.0);
}

TEST_CASE("integrate_sliding") {
  const SwitchedSystem sym = symmetric_test_system();
  const SlidingPath path = integrate_sliding(sym, 1.0, 3.0, 30);
  CHECK_FALSE(path.exited);
  CHECK(path.t.back() == 3.0);
  CHECK(std::abs(path.y.back() - std::exp(-3.0)) < 1e-8);

  const SlidingPath rest = integrate_sliding(sym, 0.0, 5.0, 10);
  for (double y : rest.y) CHECK(y == 0.0);

  // |y - y*| non-increasing on the samples.
  for (std::size_t i = 1; i < path.y.size(); ++i) CHECK(std::abs(path.y[i]) <= std::abs(path.y[i - 1]));
}

TEST_CASE("integrate_sliding on the converter approaches the equilibrium monotonically") {
  const SwitchedSystem conv = converter_system();
  const double y_star = switched_equilibrium(conv, 16.0);
  const SlidingPath path = integrate_sliding(conv, 15.0, 20.0, 40);
  CHECK_FALSE(path.exited);
  for (std::size_t i = 1; i < path.y.size(); ++i) {
    CHECK(path.y[i] >= path.y[i - 1]);
    CHECK(std::abs(path.y[i] - y_star) <= std::abs(path.y[i - 1] - y_star));
  }
  // Brute-force fixed-step reference.
  const double ref = oracle::scalar_rk4([&](double y) { return sliding_rhs(conv, y); }, 15.0,
                                        20.0, 200000);
  CHECK(std::abs(path.y.back() - ref) < 1e-7);
}

TEST_CASE("integrate_sliding stops where sliding ends") {
  // f- = 1, f+ = y - 1: sliding for y < 1. Vertical speeds carry y upward.
  Eigen::Matrix2d ap;
  ap << 0.0, 1.0,
        0.0, 0.0;
  const SwitchedSystem sys(PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, 1.0}),
                           PlanarField::affine(ap, {-1.0, 1.0}));
  // Sliding velocity (f+ g- - f- g+)/(f+ - f-) = ((y-1) - 1)/(y - 2) = 1.
  const SlidingPath path = integrate_sliding(sys, 0.0, 5.0, 50);
  CHECK(path.exited);
  CHECK(path.y.back() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(path.t.back() == doctest::Approx(1.0).epsilon(1e-9));
}

#include "doctest.h"

#include <cmath>
#include <random>

#include "swcycle/builtins.hpp"
#include "swcycle/cycles.hpp"

using namespace swcycle;

namespace {

// Symmetric system: PLUS leg takes 2w, y -> -1 + (y + 1) e^{-2w}; MINUS leg
// mirrors it. Fixed point solves y = 1 + (-1 + (y + 1) e^{-2w} - 1) e^{-2w}.
double symmetric_fixed_point(double w) {
  const double q = std::exp(-2.0 * w);
  return (1.0 - 2.0 * q + q * q) / (1.0 - q * q);
}

}  // namespace

TEST_CASE("poincare_map is the identity on a zero-width band") {
  const SwitchedSystem sym = symmetric_test_system(0.0);
  CHECK(poincare_map(sym, 0.0, 0.3) == 0.3);
}

TEST_CASE("symmetric system limit cycle matches the closed form") {
  const SwitchedSystem sym = symmetric_test_system();
  for (double w : {0.1, 0.05, 0.01}) {
    const LimitCycle cycle = find_limit_cycle(sym, w, 0.0);
    CHECK(cycle.fixed_y == doctest::Approx(symmetric_fixed_point(w)).epsilon(1e-9));
    CHECK(cycle.period == doctest::Approx(4.0 * w).epsilon(1e-10));
    CHECK(cycle.multiplier == doctest::Approx(std::exp(-4.0 * w)).epsilon(1e-5));
    CHECK(cycle.stable);
    CHECK(std::abs(cycle.residual) < 1e-11);
    CHECK(cycle.arc_plus.exit_event == ExitEvent::HitLeft);
    CHECK(cycle.arc_minus.exit_event == ExitEvent::HitRight);
  }
}

TEST_CASE("the return map crosses the diagonal at the fixed point") {
  const SwitchedSystem sym = symmetric_test_system();
  const double y = symmetric_fixed_point(0.1);
  CHECK(poincare_map(sym, 0.1, y - 0.05) - (y - 0.05) > 0.0);
  CHECK(poincare_map(sym, 0.1, y + 0.05) - (y + 0.05) < 0.0);
}

TEST_CASE("cycles shrink onto the equilibrium as the band closes") {
  const SwitchedSystem sym = symmetric_test_system();
  double previous = INFINITY;
  for (double w : {0.2, 0.1, 0.05, 0.025}) {
    const LimitCycle cycle = find_limit_cycle(sym, w, 0.0);
    CHECK(cycle.amplitude < previous);
    CHECK(cycle.amplitude < 2.0 * w + std::abs(cycle.fixed_y) + 1e-12);
    previous = cycle.amplitude;
  }
}

TEST_CASE("asymptotic period") {
  const SwitchedSystem sym = symmetric_test_system();
  CHECK(asymptotic_period(sym, 0.1, 0.0) == doctest::Approx(0.4));
  CHECK(asymptotic_period(sym, 0.0, 0.0) == 0.0);
  CHECK(asymptotic_slope(sym, 0.0) == doctest::Approx(4.0));

  auto flat = PlanarField::affine(Eigen::Matrix2d::Zero(), {0.0, 1.0});
  const SwitchedSystem degenerate(flat, symmetric_test_system().field_plus());
  CHECK_THROWS_AS(asymptotic_slope(degenerate, 0.0), NumericError);
}

TEST_CASE("asymptotic period agrees with the numeric period to first order") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 3; ++k) {
    const SwitchedSystem sys = random_stable_system(rng);
    double previous_gap = INFINITY;
    for (double w : {1e-1, 1e-2, 1e-3}) {
      const LimitCycle cycle = find_limit_cycle_from_equilibrium(sys, w);
      const double gap = std::abs(cycle.period - asymptotic_period(sys, w, cycle.eq_y)) / cycle.period;
      CHECK(gap < previous_gap);
      previous_gap = gap;
    }
    CHECK(previous_gap < 2e-2);
  }
}

TEST_CASE("sweep returns sorted rows and matches single solves") {
  const SwitchedSystem sym = symmetric_test_system();
  for (int workers : {1, 3}) {
    const auto rows = sweep(sym, {0.025, 0.1, 0.05}, 0.0, {}, workers);
    REQUIRE(rows.size() == 3);
    const double widths[] = {0.025, 0.05, 0.1};
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(rows[i].error.empty());
      CHECK(rows[i].half_width == widths[i]);
      CHECK(rows[i].period_numeric == doctest::Approx(4.0 * widths[i]).epsilon(1e-10));
      CHECK(rows[i].period_asymptotic == doctest::Approx(4.0 * widths[i]));
      CHECK(rows[i].fixed_y == doctest::Approx(symmetric_fixed_point(widths[i])).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweep records per-row failures") {
  const SwitchedSystem sym = symmetric_test_system();
  const auto rows = sweep(sym, {0.0, 0.1});
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].error.empty());
  CHECK(rows[1].error.empty());
}

TEST_CASE("brute-force scan agrees with the secant solve") {
  const SwitchedSystem sym = symmetric_test_system();
  const double y = brute_force_fixed_point(sym, 0.1, -0.5, 0.5, 101);
  CHECK(std::abs(y - find_limit_cycle(sym, 0.1, 0.0).fixed_y) < 1e-9);

  const SwitchedSystem conv = converter_system();
  const LimitCycle cycle = find_limit_cycle_from_equilibrium(conv, conv.half_width(), 16.0);
  const double yb = brute_force_fixed_point(conv, conv.half_width(), cycle.eq_y - 1.0,
                                            cycle.eq_y + 1.0, 100);
  CHECK(std::abs(yb - cycle.fixed_y) < 1e-8);

  CHECK_THROWS_AS(brute_force_fixed_point(sym, 0.1, 2.0, 3.0, 100), NumericError);
  CHECK_THROWS_AS(brute_force_fixed_point(sym, 0.1, -0.5, 0.5, 10), NumericError);
}

TEST_CASE("find_limit_cycle rejects bad inputs") {
  const SwitchedSystem sym = symmetric_test_system();
  CHECK_THROWS_AS(find_limit_cycle(sym, 0.0, 0.0), NumericError);

  // Same-sign horizontal components: not transversal.
  const SwitchedSystem parallel(PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, 1.0}),
                                PlanarField::affine(Eigen::Matrix2d::Zero(), {1.0, -1.0}));
  try {
    find_limit_cycle(parallel, 0.1, 0.0);
    FAIL("expected failure");
  } catch (const NumericError& e) {
    CHECK((e.kind() == ErrorKind::Hypothesis || e.kind() == ErrorKind::NoEquilibrium));
  }
}

TEST_CASE("find_limit_cycle surfaces tangency") {
  const double w = 0.1;
  const SwitchedSystem sys = tangency_test_system(w);
  CycleOptions opts;
  opts.eq_guess = 0.0;
  opts.max_iterations = 1;
  try {
    find_limit_cycle(sys, w, tangency_launch_height(w), opts);
    FAIL("expected a tangency error");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::Tangency);
  }
}

TEST_CASE("converter cycle, frozen against an independent scipy computation") {
  const SwitchedSystem conv = converter_system();
  const LimitCycle cycle = find_limit_cycle_from_equilibrium(conv, conv.half_width(), 16.0);
  CHECK(cycle.eq_y == doctest::Approx(16.183773111750394).epsilon(1e-10));
  CHECK(cycle.fixed_y == doctest::Approx(16.090923707377883).epsilon(1e-8));
  CHECK(cycle.period == doctest::Approx(0.10388216707645626).epsilon(1e-7));
  CHECK(asymptotic_period(conv, conv.half_width(), cycle.eq_y) ==
        doctest::Approx(0.10387042499926705).epsilon(1e-9));
  CHECK(cycle.stable);
  CHECK(cycle.multiplier > 0.0);
}

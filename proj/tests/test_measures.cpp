#include <catch2/catch_amalgamated.hpp>

#include "steerlab/measures.hpp"
#include "test_helpers.hpp"

using namespace steerlab;
using Catch::Matchers::WithinAbs;

namespace {

double si_werner_closed(double p) {
  auto f = [](double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); };
  return 3.0 * (f(1.0 + p) + f(1.0 - p));
}

}  // namespace

TEST_CASE("concurrence of werner states") {
  REQUIRE_THAT(concurrence(werner(1.0)), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(concurrence(werner(1.0 / 3.0)), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(concurrence(werner(0.8)), WithinAbs(0.7, 1e-12));
  REQUIRE(concurrence(werner(0.2)) == 0.0);
}

TEST_CASE("x-form concurrence") {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    REQUIRE_THAT(concurrence_x(to_x_params(werner(p))), WithinAbs(expected, 1e-15));
  }
  REQUIRE(concurrence_x(to_x_params(werner(0.0))) == 0.0);
}

TEST_CASE("both concurrence routes agree on random X states") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const XStateParams x = testutil::random_x_params(rng);
    REQUIRE_THAT(concurrence(x_state_matrix(x)), WithinAbs(concurrence_x(x), 1e-9));
  }
}

TEST_CASE("steering functional extremes and closed form") {
  REQUIRE_THAT(steering_si(bloch_from_x(to_x_params(werner(1.0)))), WithinAbs(6.0, 1e-12));
  REQUIRE(steering_si(bloch_from_x(to_x_params(werner(0.0)))) == 0.0);
  // frozen evaluation of the closed form at p = 0.5
  REQUIRE_THAT(steering_si(bloch_from_x(to_x_params(werner(0.5)))),
               WithinAbs(1.1323312532452028, 1e-12));
  for (double p : {0.1, 0.4, 0.65, 0.9}) {
    REQUIRE_THAT(steering_si(bloch_from_x(to_x_params(werner(p)))),
                 WithinAbs(si_werner_closed(p), 1e-12));
  }
}

TEST_CASE("steering functional rejects unphysical parameters") {
  BlochXParams b;
  b.c1 = 1.0 + 2e-9;
  REQUIRE_THROWS_AS(steering_si(b), InvalidStateError);
}

TEST_CASE("normalized steering") {
  const SteeringReport top = steering_s(bloch_from_x(to_x_params(werner(1.0))));
  REQUIRE_THAT(top.s, WithinAbs(1.0, 1e-12));
  REQUIRE(top.steerable);
  const SteeringReport mid = steering_s(bloch_from_x(to_x_params(werner(0.5))));
  REQUIRE(mid.s == 0.0);
  REQUIRE_FALSE(mid.steerable);
}

TEST_CASE("werner steerability threshold by bisection") {
  double lo = 0.5, hi = 0.9;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (steering_si(bloch_from_x(to_x_params(werner(mid)))) < 2.0 ? lo : hi) = mid;
  }
  REQUIRE_THAT(0.5 * (lo + hi), WithinAbs(0.65209533718120945, 1e-9));
}

TEST_CASE("conditional entropy sum at the extremes") {
  REQUIRE_THAT(conditional_entropy_sum(werner(1.0)), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(conditional_entropy_sum(werner(0.0)), WithinAbs(3.0, 1e-12));
}

TEST_CASE("entropy route matches the steering functional on X states") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const XStateParams x = testutil::random_x_params(rng);
    const double si = steering_si(bloch_from_x(x));
    const double ce = conditional_entropy_sum(x_state_matrix(x));
    REQUIRE_THAT(si, WithinAbs(6.0 - 2.0 * ce, 1e-9));
  }
}

TEST_CASE("bures fidelity basics") {
  std::mt19937 rng(41);
  SECTION("self fidelity is one") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix4 rho = testutil::random_density(rng);
      REQUIRE_THAT(bures_fidelity(rho, rho), WithinAbs(1.0, 1e-9));
    }
  }
  SECTION("orthogonal pure states have zero overlap") {
    DensityMatrix4 zz, oo;
    zz.mat(0, 0) = 1.0;
    oo.mat(3, 3) = 1.0;
    REQUIRE_THAT(bures_fidelity(zz, oo), WithinAbs(0.0, 1e-12));
  }
  SECTION("pure-state reduction against the maximally mixed state") {
    REQUIRE_THAT(bures_fidelity(werner(1.0), werner(0.0)), WithinAbs(0.25, 1e-9));
  }
  SECTION("symmetric in its arguments") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix4 a = testutil::random_density(rng);
      const DensityMatrix4 b = testutil::random_density(rng);
      REQUIRE_THAT(bures_fidelity(a, b), WithinAbs(bures_fidelity(b, a), 1e-9));
    }
  }
  SECTION("clamped to [0, 1], raw defect small") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix4 a = testutil::random_density(rng);
      const DensityMatrix4 b = testutil::random_density(rng);
      const double f = bures_fidelity(a, b);
      REQUIRE(f >= 0.0);
      REQUIRE(f <= 1.0);
      REQUIRE(bures_fidelity_raw(a, b) <= 1.0 + 1e-9);
    }
  }
}

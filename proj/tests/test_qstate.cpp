#include <catch2/catch_amalgamated.hpp>

#include "steerlab/qstate.hpp"
#include "test_helpers.hpp"

using namespace steerlab;
using Catch::Matchers::WithinAbs;

TEST_CASE("werner endpoints") {
  REQUIRE(max_abs_diff(werner(0.0).mat, scale(ComplexMatrix::identity(4), 0.25)) == 0.0);
  const DensityMatrix4 singlet = werner(1.0);
  REQUIRE(singlet.mat(1, 1) == Complex(0.5));
  REQUIRE(singlet.mat(2, 2) == Complex(0.5));
  REQUIRE(singlet.mat(1, 2) == Complex(-0.5));
  REQUIRE(max_abs(singlet.mat) == 0.5);
  REQUIRE_THROWS_AS(werner(-0.1), InvalidArgumentError);
  REQUIRE_THROWS_AS(werner(1.1), InvalidArgumentError);
}

TEST_CASE("x parameters of a werner state") {
  const XStateParams x = to_x_params(werner(0.8));
  REQUIRE_THAT(x.rho11, WithinAbs(0.05, 1e-15));
  REQUIRE_THAT(x.rho22, WithinAbs(0.45, 1e-15));
  REQUIRE_THAT(x.rho33, WithinAbs(0.45, 1e-15));
  REQUIRE_THAT(x.rho44, WithinAbs(0.05, 1e-15));
  REQUIRE(x.rho14 == 0.0);
  REQUIRE_THAT(x.rho23, WithinAbs(-0.4, 1e-15));

  const XStateParams mixed = to_x_params(werner(0.0));
  REQUIRE(mixed.rho11 == 0.25);
  REQUIRE(mixed.rho23 == 0.0);
}

TEST_CASE("entries off the X pattern are reported") {
  DensityMatrix4 rho = werner(0.5);
  rho.mat(0, 1) = 0.01;
  rho.mat(1, 0) = 0.01;
  REQUIRE_THROWS_MATCHES(to_x_params(rho, 1e-8), NotXStateError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("(1,2)")));
}

TEST_CASE("bloch parameters") {
  SECTION("werner family: c1 = c2 = c3 = -p, no local polarization") {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
      const BlochXParams b = bloch_from_x(to_x_params(werner(p)));
      REQUIRE_THAT(b.c1, WithinAbs(-p, 1e-15));
      REQUIRE_THAT(b.c2, WithinAbs(-p, 1e-15));
      REQUIRE_THAT(b.c3, WithinAbs(-p, 1e-15));
      REQUIRE(b.r == 0.0);
      REQUIRE(b.s == 0.0);
    }
  }
  SECTION("pure |00>") {
    XStateParams x;
    x.rho11 = 1.0;
    const BlochXParams b = bloch_from_x(x);
    REQUIRE(b.c3 == 1.0);
    REQUIRE(b.r == 1.0);
    REQUIRE(b.s == 1.0);
    REQUIRE(b.c1 == 0.0);
    REQUIRE(b.c2 == 0.0);
  }
}

TEST_CASE("x-matrix round trip is exact") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const XStateParams x = testutil::random_x_params(rng);
    const XStateParams back = to_x_params(x_state_matrix(x));
    REQUIRE(back.rho11 == x.rho11);
    REQUIRE(back.rho22 == x.rho22);
    REQUIRE(back.rho33 == x.rho33);
    REQUIRE(back.rho44 == x.rho44);
    REQUIRE_THAT(back.rho14, WithinAbs(x.rho14, 1e-15));
    REQUIRE_THAT(back.rho23, WithinAbs(x.rho23, 1e-15));
  }
}

TEST_CASE("bloch round trip is the identity") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const XStateParams x = testutil::random_x_params(rng);
    const BlochXParams b = bloch_from_x(x);
    const BlochXParams back = bloch_from_x(to_x_params(x_state_from_bloch(b)));
    REQUIRE_THAT(back.c1, WithinAbs(b.c1, 1e-12));
    REQUIRE_THAT(back.c2, WithinAbs(b.c2, 1e-12));
    REQUIRE_THAT(back.c3, WithinAbs(b.c3, 1e-12));
    REQUIRE_THAT(back.r, WithinAbs(b.r, 1e-12));
    REQUIRE_THAT(back.s, WithinAbs(b.s, 1e-12));
  }
}

TEST_CASE("validation report") {
  SECTION("werner states are valid across the parameter range") {
    for (int i = 0; i <= 100; ++i) {
      const ValidationReport rep = validate(werner(i / 100.0));
      REQUIRE(rep.ok(1e-10));
    }
  }
  SECTION("werner(0.5) in detail") {
    const ValidationReport rep = validate(werner(0.5));
    REQUIRE(rep.hermiticity_defect < 1e-12);
    REQUIRE(rep.trace_defect < 1e-12);
    REQUIRE_THAT(rep.min_eigenvalue, WithinAbs(0.125, 1e-12));
  }
  SECTION("unnormalized input shows a trace defect, not an exception") {
    DensityMatrix4 rho;
    rho.mat = scale(ComplexMatrix::identity(4), 0.5);
    const ValidationReport rep = validate(rho);
    REQUIRE_THAT(rep.trace_defect, WithinAbs(1.0, 1e-15));
  }
  SECTION("pure singlet sits at the PSD boundary") {
    const ValidationReport rep = validate(werner(1.0));
    REQUIRE_THAT(rep.min_eigenvalue, WithinAbs(0.0, 1e-12));
  }
}

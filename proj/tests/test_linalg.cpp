#include <catch2/catch_amalgamated.hpp>

#include "steerlab/eig.hpp"
#include "steerlab/matrix.hpp"
#include "steerlab/qstate.hpp"
#include "test_helpers.hpp"

using namespace steerlab;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
  ComplexMatrix m(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST_CASE("product with identity is a no-op") {
  std::mt19937 rng(7);
  const ComplexMatrix m = testutil::random_hermitian(rng, 4);
  REQUIRE(max_abs_diff(ComplexMatrix::identity(4) * m, m) == 0.0);
}

TEST_CASE("orthogonal projectors multiply to zero") {
  ComplexMatrix p0(2, 2), p1(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  REQUIRE(max_abs(p0 * p1) == 0.0);
}

TEST_CASE("spin-flip operator squares to identity") {
  const ComplexMatrix yy = sigma_yy();
  REQUIRE(max_abs_diff(yy * yy, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  REQUIRE_THROWS_AS(mat_mul(ComplexMatrix(2, 2), ComplexMatrix(4, 4)), InvalidArgumentError);
}

TEST_CASE("eigenvalues of a diagonal matrix come back sorted") {
  const EigenSystem es = eig_hermitian(diag4(3.0, 1.0, 2.0, 0.0));
  REQUIRE(es.values == std::vector<double>{3.0, 2.0, 1.0, 0.0});
}

TEST_CASE("sigma_x eigensystem") {
  const EigenSystem es = eig_hermitian(pauli_x());
  REQUIRE_THAT(es.values[0], WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(es.values[1], WithinAbs(-1.0, 1e-14));
  // |+> component magnitudes 1/sqrt(2) each
  REQUIRE_THAT(std::abs(es.vectors(0, 0)), WithinAbs(std::sqrt(0.5), 1e-12));
  REQUIRE_THAT(std::abs(es.vectors(1, 0)), WithinAbs(std::sqrt(0.5), 1e-12));
  REQUIRE_THAT(std::abs(es.vectors(0, 0) + es.vectors(1, 0)), WithinAbs(std::sqrt(2.0), 1e-12));
}

TEST_CASE("werner spectrum: one large plus a triple eigenvalue") {
  const EigenSystem es = eig_hermitian(werner(0.5).mat);
  REQUIRE_THAT(es.values[0], WithinAbs(0.625, 1e-12));
  for (int i = 1; i < 4; ++i) REQUIRE_THAT(es.values[i], WithinAbs(0.125, 1e-12));
}

TEST_CASE("eigendecomposition reconstructs random Hermitian inputs") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix h = testutil::random_hermitian(rng, 4);
    const EigenSystem es = eig_hermitian(h);
    ComplexMatrix lambda(4, 4);
    for (std::size_t i = 0; i < 4; ++i) lambda(i, i) = es.values[i];
    REQUIRE(max_abs_diff(es.vectors * lambda * adjoint(es.vectors), h) < 1e-10);
    REQUIRE(max_abs_diff(es.vectors * adjoint(es.vectors), ComplexMatrix::identity(4)) < 1e-10);
    double sum = 0.0;
    for (double v : es.values) sum += v;
    REQUIRE_THAT(sum, WithinAbs(trace(h).real(), 1e-10));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  REQUIRE_THROWS_AS(eig_hermitian(m), InvalidArgumentError);
}

TEST_CASE("sqrt_psd on easy diagonals") {
  REQUIRE(max_abs_diff(sqrt_psd(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-14);
  REQUIRE(max_abs_diff(sqrt_psd(diag4(4.0, 1.0, 0.0, 9.0)), diag4(2.0, 1.0, 0.0, 3.0)) < 1e-14);
  // maximally mixed state roots to I/2
  const ComplexMatrix half = sqrt_psd(werner(0.0).mat);
  REQUIRE(max_abs_diff(half, scale(ComplexMatrix::identity(4), 0.5)) < 1e-14);
}

TEST_CASE("sqrt_psd squares back to the input") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = testutil::random_hermitian(rng, 4);
    const ComplexMatrix psd = h * adjoint(h);
    const ComplexMatrix root = sqrt_psd(psd, 1e-8);
    REQUIRE(max_abs_diff(root * root, psd) < 1e-9);
    REQUIRE(hermiticity_defect(root) < 1e-12);
  }
}

TEST_CASE("sqrt_psd rejects indefinite matrices") {
  REQUIRE_THROWS_AS(sqrt_psd(diag4(1.0, 1.0, 1.0, -0.5)), NotPsdError);
}

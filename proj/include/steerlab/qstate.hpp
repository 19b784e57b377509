#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "steerlab/eig.hpp"
#include "steerlab/matrix.hpp"

namespace steerlab {

// Two-qubit density matrix in the product basis |00>, |01>, |10>, |11>,
// qubit A being the left (most significant) factor.
struct DensityMatrix4 {
  ComplexMatrix mat{4, 4};
};

// The seven real entries of an X-shaped state: four populations plus the two
// antidiagonal coherences (both real in this basis).
struct XStateParams {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double rho44 = 0.0;
  double rho14 = 0.0;
  double rho23 = 0.0;
};

// Bloch picture of an X state: correlation coefficients c1..c3 and the local
// z polarizations r (qubit A) and s (qubit B).
struct BlochXParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double r = 0.0;
  double s = 0.0;
};

struct ValidationReport {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;

  bool ok(double tol = 1e-10) const {
    return hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
  }
};

// Werner state: p * |phi-><phi-| + (1-p)/4 * I with |phi-> = (|01> - |10>)/sqrt(2).
inline DensityMatrix4 werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("werner: p must lie in [0, 1]");
  DensityMatrix4 rho;
  const double off = (1.0 - p) / 4.0;
  rho.mat(0, 0) = off;
  rho.mat(3, 3) = off;
  rho.mat(1, 1) = (1.0 + p) / 4.0;
  rho.mat(2, 2) = (1.0 + p) / 4.0;
  rho.mat(1, 2) = -p / 2.0;
  rho.mat(2, 1) = -p / 2.0;
  return rho;
}

// Builds the density matrix with the X pattern from its seven parameters.
inline DensityMatrix4 x_state_matrix(const XStateParams& x) {
  DensityMatrix4 rho;
  rho.mat(0, 0) = x.rho11;
  rho.mat(1, 1) = x.rho22;
  rho.mat(2, 2) = x.rho33;
  rho.mat(3, 3) = x.rho44;
  rho.mat(0, 3) = x.rho14;
  rho.mat(3, 0) = x.rho14;
  rho.mat(1, 2) = x.rho23;
  rho.mat(2, 1) = x.rho23;
  return rho;
}

// Extracts the X parameters, rejecting any entry off the X pattern (or a
// residual imaginary part on the coherences) larger than tol.
inline XStateParams to_x_params(const DensityMatrix4& rho, double tol = 1e-8) {
  static constexpr bool kXPattern[4][4] = {
      {true, false, false, true},
      {false, true, true, false},
      {false, true, true, false},
      {true, false, false, true},
  };
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (kXPattern[i][j]) continue;
      const double mag = std::abs(rho.mat(i, j));
      if (mag >= tol) {
        throw NotXStateError("to_x_params: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") has magnitude " + std::to_string(mag) + " outside the X pattern");
      }
    }
  }
  for (const auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 3}, {1, 2}}) {
    const double im = std::abs(rho.mat(i, j).imag());
    if (im >= tol) {
      throw NotXStateError("to_x_params: coherence (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") has imaginary part " + std::to_string(im));
    }
  }
  XStateParams x;
  x.rho11 = rho.mat(0, 0).real();
  x.rho22 = rho.mat(1, 1).real();
  x.rho33 = rho.mat(2, 2).real();
  x.rho44 = rho.mat(3, 3).real();
  x.rho14 = rho.mat(0, 3).real();
  x.rho23 = rho.mat(1, 2).real();
  return x;
}

inline BlochXParams bloch_from_x(const XStateParams& x) {
  BlochXParams b;
  b.c1 = 2.0 * (x.rho23 + x.rho14);
  b.c2 = 2.0 * (x.rho23 - x.rho14);
  b.c3 = x.rho11 - x.rho22 - x.rho33 + x.rho44;
  b.r = x.rho11 + x.rho22 - x.rho33 - x.rho44;
  b.s = x.rho11 - x.rho22 + x.rho33 - x.rho44;
  return b;
}

// Inverse of bloch_from_x via the standard Bloch expansion; diagonal entries
// are (1 +- c3 +- r +- s)/4 and antidiagonal ones (c1 -+ c2)/4.
inline DensityMatrix4 x_state_from_bloch(const BlochXParams& b) {
  XStateParams x;
  x.rho11 = (1.0 + b.c3 + b.r + b.s) / 4.0;
  x.rho22 = (1.0 - b.c3 + b.r - b.s) / 4.0;
  x.rho33 = (1.0 - b.c3 - b.r + b.s) / 4.0;
  x.rho44 = (1.0 + b.c3 - b.r - b.s) / 4.0;
  x.rho14 = (b.c1 - b.c2) / 4.0;
  x.rho23 = (b.c1 + b.c2) / 4.0;
  return x_state_matrix(x);
}

inline ValidationReport validate(const DensityMatrix4& rho) {
  ValidationReport rep;
  rep.hermiticity_defect = hermiticity_defect(rho.mat);
  rep.trace_defect = std::abs(trace(rho.mat) - Complex(1.0, 0.0));
  ComplexMatrix sym(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) sym(i, j) = 0.5 * (rho.mat(i, j) + std::conj(rho.mat(j, i)));
  const EigenSystem es = eig_hermitian(sym, 1e10 /* report, don't reject */);
  rep.min_eigenvalue = es.values.back();
  return rep;
}

}  // namespace steerlab

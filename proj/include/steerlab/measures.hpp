#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "steerlab/eig.hpp"
#include "steerlab/matrix.hpp"
#include "steerlab/qstate.hpp"

namespace steerlab {

namespace detail {

// x * log2(x) with the 0 log 0 = 0 convention; arguments in [-1e-9, 0) are
// rounding noise at boundary states and are clamped to 0.
inline double xlog2(double x) {
  if (x < -1e-9) throw InvalidStateError("steering functional: argument " + std::to_string(x) + " below -1e-9");
  if (x <= 0.0) return 0.0;
  return x * std::log2(x);
}

inline double shannon2(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  return h;
}

}  // namespace detail

// Wootters concurrence. The spin-flipped product rho * Y * conj(rho) * Y is
// not Hermitian, so its spectrum is taken from the isospectral Hermitian PSD
// form sqrt(rho) * Y * conj(rho) * Y * sqrt(rho).
inline double concurrence(const DensityMatrix4& rho) {
  const ComplexMatrix yy = sigma_yy();
  const ComplexMatrix root = sqrt_psd(rho.mat);
  ComplexMatrix k = root * yy * conjugate(rho.mat) * yy * root;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (k(i, j) + std::conj(k(j, i)));
      k(i, j) = avg;
      k(j, i) = std::conj(avg);
    }
  const EigenSystem es = eig_hermitian(k, 1e-8);
  double c = std::sqrt(std::max(es.values[0], 0.0));
  for (std::size_t i = 1; i < 4; ++i) c -= std::sqrt(std::max(es.values[i], 0.0));
  return std::clamp(std::max(c, 0.0), 0.0, 1.0);
}

// Reduced concurrence for X states.
inline double concurrence_x(const XStateParams& x) {
  const double inner = std::abs(x.rho14) - std::sqrt(std::max(x.rho22 * x.rho33, 0.0));
  const double outer = std::abs(x.rho23) - std::sqrt(std::max(x.rho11 * x.rho44, 0.0));
  return 2.0 * std::max({0.0, inner, outer});
}

struct SteeringReport {
  double si = 0.0;
  double s = 0.0;
  bool steerable = false;
};

// Entropic steering functional for X states under the three Pauli
// measurements (base-2 logs); ranges over [0, 6] and certifies steering
// above 2.
inline double steering_si(const BlochXParams& b) {
  using detail::xlog2;
  double si = 0.0;
  for (double c : {b.c1, b.c2}) si += xlog2(1.0 + c) + xlog2(1.0 - c);
  si -= xlog2(1.0 + b.r) + xlog2(1.0 - b.r);
  si += 0.5 * (xlog2(1.0 + b.c3 + b.r + b.s) + xlog2(1.0 + b.c3 - b.r - b.s) +
               xlog2(1.0 - b.c3 - b.r + b.s) + xlog2(1.0 - b.c3 + b.r - b.s));
  // mathematically in [0, 6]; scrub ulp-level rounding at the boundaries
  return std::clamp(si, 0.0, 6.0);
}

// Normalized steering S = max{0, (SI - 2) / 4}.
inline SteeringReport steering_s(const BlochXParams& b) {
  SteeringReport rep;
  rep.si = steering_si(b);
  rep.s = std::max(0.0, (rep.si - 2.0) / 4.0);
  rep.steerable = rep.si > 2.0;
  return rep;
}

// Sum over the three Pauli bases of the conditional Shannon entropy
// H(B|A) = H(p_ab) - H(p_a) of the joint measurement-outcome distribution.
// Independent route to the steering functional: SI = 6 - 2 * this sum on
// X states.
inline double conditional_entropy_sum(const DensityMatrix4& rho) {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const std::array<ComplexMatrix, 3> paulis = {pauli_x(), pauli_y(), pauli_z()};
  double total = 0.0;
  for (const auto& w : paulis) {
    std::array<ComplexMatrix, 2> proj;
    for (int a = 0; a < 2; ++a) {
      const double sign = a == 0 ? 1.0 : -1.0;
      proj[a] = scale(add(id2, scale(w, sign)), 0.5);
    }
    double joint[4];
    double marginal[2] = {0.0, 0.0};
    for (int a = 0; a < 2; ++a) {
      for (int bb = 0; bb < 2; ++bb) {
        const double pr = std::max(trace(kron(proj[a], proj[bb]) * rho.mat).real(), 0.0);
        joint[2 * a + bb] = pr;
        marginal[a] += pr;
      }
    }
    total += detail::shannon2(joint, 4) - detail::shannon2(marginal, 2);
  }
  return total;
}

// Unclamped Bures fidelity (tr sqrt(sqrt(rho0) xi sqrt(rho0)))^2; may exceed
// 1 by rounding through the two matrix square roots.
inline double bures_fidelity_raw(const DensityMatrix4& rho0, const DensityMatrix4& xi) {
  const ComplexMatrix root0 = sqrt_psd(rho0.mat);
  ComplexMatrix inner = root0 * xi.mat * root0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (inner(i, j) + std::conj(inner(j, i)));
      inner(i, j) = avg;
      inner(j, i) = std::conj(avg);
    }
  const double tr = trace(sqrt_psd(inner, 1e-8)).real();
  return tr * tr;
}

inline double bures_fidelity(const DensityMatrix4& rho0, const DensityMatrix4& xi) {
  return std::clamp(bures_fidelity_raw(rho0, xi), 0.0, 1.0);
}

}  // namespace steerlab

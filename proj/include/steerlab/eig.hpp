#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "steerlab/matrix.hpp"

namespace steerlab {

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < h.cols; ++j)
      if (i != j) s += std::norm(h(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.
// Each rotation phases the (p,q) pivot to a real value, then zeroes it with a
// plane rotation. Quadratic convergence makes a handful of sweeps plenty at
// the 2x2/4x4 sizes used here.
inline EigenSystem eig_hermitian(const ComplexMatrix& h, double tol = 1e-10) {
  if (h.rows != h.cols) throw InvalidArgumentError("eig_hermitian: matrix must be square");
  if (hermiticity_defect(h) > tol)
    throw InvalidArgumentError("eig_hermitian: matrix not Hermitian within tolerance");

  const std::size_t n = h.rows;
  // Work on the symmetrized copy so rounding in the input cannot bias sweeps.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  constexpr int kMaxSweeps = 100;
  constexpr double kOffdiagThreshold = 1e-12;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq < 1e-300) continue;
        const Complex phase = apq / abs_apq;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Rotation angle for the phased (real symmetric) 2x2 block; the
        // smaller-magnitude root of t^2 - 2*tau*t - 1 = 0 annihilates the pivot.
        const double tau = (aqq - app) / (2.0 * abs_apq);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // j = diag-phase * plane rotation, unitarity by construction
        const Complex jpp = c;
        const Complex jpq = -s;
        const Complex jqp = std::conj(phase) * s;
        const Complex jqq = std::conj(phase) * c;
        // a <- j^dag a j, applied as column then row updates
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    converged = detail::offdiag_norm(a) < kOffdiagThreshold;
  }
  if (!converged) throw NumericFailureError("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

// Principal square root of a Hermitian PSD matrix. Eigenvalues within -tol of
// zero are clamped to zero before rooting; anything lower is rejected.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol = 1e-10) {
  const EigenSystem es = eig_hermitian(m, tol);
  const std::size_t n = m.rows;
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = es.values[k];
    if (lam < -tol) throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(lam) + " below PSD floor");
    roots[k] = std::sqrt(std::max(lam, 0.0));
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += es.vectors(i, k) * roots[k] * std::conj(es.vectors(j, k));
      out(i, j) = sum;
    }
  }
  // Re-symmetrize to scrub accumulation noise.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  return out;
}

}  // namespace steerlab

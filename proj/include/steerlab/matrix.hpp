#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "steerlab/errors.hpp"

namespace steerlab {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this library is 2x2 or 4x4,
// so no attempt is made at being clever about storage or blocking.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> entries;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

inline ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) {
    throw InvalidArgumentError("mat_mul: dimension mismatch (" + std::to_string(a.rows) + "x" +
                               std::to_string(a.cols) + " times " + std::to_string(b.rows) + "x" +
                               std::to_string(b.cols) + ")");
  }
  ComplexMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& e : out.entries) e = std::conj(e);
  return out;
}

inline ComplexMatrix scale(const ComplexMatrix& m, Complex factor) {
  ComplexMatrix out = m;
  for (auto& e : out.entries) e *= factor;
  return out;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
  return out;
}

inline Complex trace(const ComplexMatrix& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows, m.cols); ++i) t += m(i, i);
  return t;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return out;
}

inline double max_abs(const ComplexMatrix& m) {
  double v = 0.0;
  for (const auto& e : m.entries) v = std::max(v, std::abs(e));
  return v;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) v = std::max(v, std::abs(a.entries[i] - b.entries[i]));
  return v;
}

// max_ij |m_ij - conj(m_ji)|
inline double hermiticity_defect(const ComplexMatrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
  return v;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// sigma_y (x) sigma_y: real antidiagonal (-1, 1, 1, -1), used by the spin-flip
// construction in the concurrence.
inline ComplexMatrix sigma_yy() {
  ComplexMatrix m(4, 4);
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

}  // namespace steerlab

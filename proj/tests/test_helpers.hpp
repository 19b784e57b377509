#pragma once

#include <random>

#include "steerlab/steerlab.hpp"

namespace testutil {

using steerlab::Complex;
using steerlab::ComplexMatrix;

inline ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v(dist(rng), dist(rng));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

// rho = A A^dag / tr(A A^dag) with Gaussian A: Hermitian, PSD, unit trace.
inline steerlab::DensityMatrix4 random_density(std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix a(4, 4);
  for (auto& e : a.entries) e = Complex(dist(rng), dist(rng));
  ComplexMatrix rho = a * steerlab::adjoint(a);
  const double tr = steerlab::trace(rho).real();
  steerlab::DensityMatrix4 out;
  out.mat = steerlab::scale(rho, 1.0 / tr);
  return out;
}

// Valid X state: Dirichlet-ish populations plus coherences inside the
// positivity disks of the two 2x2 blocks.
inline steerlab::XStateParams random_x_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double w[4];
  double sum = 0.0;
  for (double& v : w) {
    v = -std::log(std::max(uni(rng), 1e-12));
    sum += v;
  }
  steerlab::XStateParams x;
  x.rho11 = w[0] / sum;
  x.rho22 = w[1] / sum;
  x.rho33 = w[2] / sum;
  x.rho44 = w[3] / sum;
  x.rho14 = (2.0 * uni(rng) - 1.0) * std::sqrt(x.rho11 * x.rho44);
  x.rho23 = (2.0 * uni(rng) - 1.0) * std::sqrt(x.rho22 * x.rho33);
  return x;
}

}  // namespace testutil

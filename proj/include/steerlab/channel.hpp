#pragma once

#include <cmath>
#include <string>

#include "steerlab/matrix.hpp"
#include "steerlab/qstate.hpp"

namespace steerlab {

// Lorentzian reservoir parameters: excited-state decay rate gamma0 and
// spectral width lambda, both in inverse time units. The decay envelope
// oscillates (memory effects) iff lambda < 2 * gamma0.
struct ReservoirParams {
  double gamma0 = 1.0;
  double lambda = 0.1;

  bool non_markovian() const { return lambda < 2.0 * gamma0; }
};

// Excited-state survival probability G_t for the damped qubit,
//   G_t = e^{-lambda t} [cos(d t / 2) + (lambda / d) sin(d t / 2)]^2,
//   d = sqrt(2 gamma0 lambda - lambda^2).
// For lambda > 2 gamma0 the analytic continuation d -> i d' turns the
// trigonometric bracket into its hyperbolic counterpart; that branch is
// opt-in via allow_markovian. lambda = 2 gamma0 exactly is rejected.
inline double decay_factor(const ReservoirParams& res, double t, bool allow_markovian = false) {
  if (!(res.gamma0 > 0.0) || !(res.lambda > 0.0))
    throw InvalidArgumentError("decay_factor: gamma0 and lambda must be positive");
  if (!(t >= 0.0)) throw InvalidArgumentError("decay_factor: t must be nonnegative");
  const double disc = 2.0 * res.gamma0 * res.lambda - res.lambda * res.lambda;
  double bracket = 0.0;
  if (disc > 0.0) {
    const double d = std::sqrt(disc);
    bracket = std::cos(d * t / 2.0) + (res.lambda / d) * std::sin(d * t / 2.0);
  } else if (disc < 0.0) {
    if (!allow_markovian)
      throw RegimeError("decay_factor: lambda >= 2*gamma0 (memoryless regime); pass the continuation flag");
    const double dp = std::sqrt(-disc);
    bracket = std::cosh(dp * t / 2.0) + (res.lambda / dp) * std::sinh(dp * t / 2.0);
  } else {
    throw RegimeError("decay_factor: lambda == 2*gamma0 boundary not supported");
  }
  const double g = std::exp(-res.lambda * t) * bracket * bracket;
  return std::min(std::max(g, 0.0), 1.0);
}

enum class Target { A, B, Both };

// Post-selected local operation: renormalized state plus the pre-normalization
// trace (the probability this branch of the measurement occurs).
struct LocalOpResult {
  DensityMatrix4 state;
  double success_prob = 1.0;
};

namespace detail {

inline ComplexMatrix lift(const ComplexMatrix& op, Target target) {
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  switch (target) {
    case Target::A:
      return kron(op, id2);
    case Target::B:
      return kron(id2, op);
    case Target::Both:
      return kron(op, op);
  }
  throw InvalidArgumentError("lift: bad target");
}

inline LocalOpResult postselect(const DensityMatrix4& rho, const ComplexMatrix& op, const char* what) {
  const ComplexMatrix out = op * rho.mat * adjoint(op);
  const double tr = trace(out).real();
  if (tr < 1e-15)
    throw DegenerateOutcomeError(std::string(what) + ": success probability " + std::to_string(tr) +
                                 " below 1e-15");
  LocalOpResult res;
  res.state.mat = scale(out, 1.0 / tr);
  res.success_prob = tr;
  return res;
}

}  // namespace detail

// Amplitude damping with survival probability g on the selected qubit(s),
// Kraus pair K0 = |0><0| + sqrt(g)|1><1|, K1 = sqrt(1-g)|0><1|. Trace
// preserving; `Both` applies the channel to A then B (they commute).
inline DensityMatrix4 amplitude_damp(const DensityMatrix4& rho, Target target, double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw InvalidArgumentError("amplitude_damp: g must lie in [0, 1]");
  ComplexMatrix k0(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(g);
  ComplexMatrix k1(2, 2);
  k1(0, 1) = std::sqrt(1.0 - g);

  auto apply_one = [&](const DensityMatrix4& in, Target single) {
    const ComplexMatrix l0 = detail::lift(k0, single);
    const ComplexMatrix l1 = detail::lift(k1, single);
    DensityMatrix4 out;
    out.mat = add(l0 * in.mat * adjoint(l0), l1 * in.mat * adjoint(l1));
    return out;
  };
  if (target == Target::Both) return apply_one(apply_one(rho, Target::A), Target::B);
  return apply_one(rho, target);
}

// Pre-decoherence partial collapse M = |0><0| + sqrt(1-m)|1><1| on the
// selected qubit(s); `Both` uses the tensor-product operator with a single
// renormalization.
inline LocalOpResult weak_measure(const DensityMatrix4& rho, Target target, double m) {
  if (!(m >= 0.0 && m < 1.0)) throw InvalidArgumentError("weak_measure: m must lie in [0, 1)");
  ComplexMatrix op(2, 2);
  op(0, 0) = 1.0;
  op(1, 1) = std::sqrt(1.0 - m);
  return detail::postselect(rho, detail::lift(op, target), "weak_measure");
}

// Reversing counterpart M = sqrt(1-mr)|0><0| + |1><1|.
inline LocalOpResult measure_reverse(const DensityMatrix4& rho, Target target, double mr) {
  if (!(mr >= 0.0 && mr < 1.0)) throw InvalidArgumentError("measure_reverse: mr must lie in [0, 1)");
  ComplexMatrix op(2, 2);
  op(0, 0) = std::sqrt(1.0 - mr);
  op(1, 1) = 1.0;
  return detail::postselect(rho, detail::lift(op, target), "measure_reverse");
}

}  // namespace steerlab

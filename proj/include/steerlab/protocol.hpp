#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "steerlab/channel.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/optimize.hpp"
#include "steerlab/qstate.hpp"

namespace steerlab {

enum class ScenarioCase { A, B };
enum class Objective { Concurrence, Steering };

// Reversal-strength policy: a fixed value, the analytic optimum, or a
// numeric maximization of the chosen objective.
struct MrPolicy {
  enum class Kind { Explicit, AnalyticOptimal, NumericOptimal };
  Kind kind = Kind::Explicit;
  double value = 0.0;
  Objective objective = Objective::Concurrence;

  static MrPolicy explicit_value(double v) { return {Kind::Explicit, v, Objective::Concurrence}; }
  static MrPolicy analytic() { return {Kind::AnalyticOptimal, 0.0, Objective::Concurrence}; }
  static MrPolicy numeric(Objective obj) { return {Kind::NumericOptimal, 0.0, obj}; }
};

struct ScenarioConfig {
  ScenarioCase scenario = ScenarioCase::A;
  double p = 0.8;
  double m = 0.0;
  MrPolicy mr = MrPolicy::explicit_value(0.0);
  ReservoirParams reservoir;
  bool allow_markovian = false;
};

struct ProtocolOutcome {
  DensityMatrix4 state;
  double success_prob = 1.0;
  double mr_used = 0.0;
  double g_used = 1.0;
};

inline double clamp_mr(double mr) { return std::clamp(mr, 0.0, 1.0 - 1e-9); }

// Cap for reversal strengths the library picks on its own (analytic or
// numeric policies). With 1 - mr >= 1e-7 the reversal's success probability
// is bounded below by (1 - mr)^2 = 1e-14, which keeps policy-driven sweeps
// clear of the 1e-15 degenerate-outcome floor even at the zeros of the decay
// envelope, where the optimal strength approaches 1. The normalized state
// differs from the mr -> 1 limit by O(1e-7), below every measure tolerance.
inline constexpr double kPolicyMrCap = 1.0 - 1e-7;

namespace detail {

inline void check_protocol_args(double p, double m, double mr, double g) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("protocol: p must lie in [0, 1]");
  if (!(m >= 0.0 && m < 1.0)) throw InvalidArgumentError("protocol: m must lie in [0, 1)");
  if (!(mr >= 0.0 && mr < 1.0)) throw InvalidArgumentError("protocol: mr must lie in [0, 1)");
  if (!(g >= 0.0 && g <= 1.0)) throw InvalidArgumentError("protocol: g must lie in [0, 1]");
}

}  // namespace detail

// One-sided scenario by channel composition: collapse A, damp A with decay
// factor g, reverse A. Success probability is the product of the two
// post-selection traces.
inline ProtocolOutcome evolve_case_a(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const LocalOpResult wm = weak_measure(werner(p), Target::A, m);
  const DensityMatrix4 damped = amplitude_damp(wm.state, Target::A, g);
  const LocalOpResult rev = measure_reverse(damped, Target::A, mr);
  return {rev.state, wm.success_prob * rev.success_prob, mr, g};
}

// Two-sided scenario: tensor-product collapse on A and B (one
// renormalization per stage), both qubits damped independently, then the
// tensor-product reversal.
inline ProtocolOutcome evolve_case_b(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const LocalOpResult wm = weak_measure(werner(p), Target::Both, m);
  const DensityMatrix4 damped = amplitude_damp(wm.state, Target::Both, g);
  const LocalOpResult rev = measure_reverse(damped, Target::Both, mr);
  return {rev.state, wm.success_prob * rev.success_prob, mr, g};
}

// Compact analytic form of the one-sided final state. Matches the channel
// composition to rounding; kept as an independent route for cross-checking.
inline XStateParams closed_form_case_a(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const double den = m - 2.0 + (2.0 + g * (m - 1.0) - m) * mr;
  if (std::abs(den) <= 1e-12)
    throw SingularConfigurationError("closed_form_case_a: vanishing normalizer");
  XStateParams x;
  x.rho11 = (mr - 1.0) * (2.0 + g * (m - 1.0) * (1.0 + p) - m * (1.0 + p)) / (2.0 * den);
  x.rho22 = (1.0 - mr) * (m - 2.0 + g * (m - 1.0) * (p - 1.0) - m * p) / (2.0 * den);
  x.rho33 = g * (m - 1.0) * (1.0 + p) / (2.0 * den);
  x.rho44 = g * (1.0 - m) * (p - 1.0) / (2.0 * den);
  x.rho14 = 0.0;
  x.rho23 = p * std::sqrt(g) * std::sqrt(1.0 - m) * std::sqrt(1.0 - mr) / den;
  return x;
}

// Closed-form concurrence of the one-sided final state.
inline double concurrence_case_a(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const double den = m - 2.0 + (2.0 + g * (m - 1.0) - m) * mr;
  if (std::abs(den) <= 1e-12)
    throw SingularConfigurationError("concurrence_case_a: vanishing normalizer");
  double theta = g * (1.0 - mr) * (m - 1.0) * (p - 1.0) * (2.0 + (1.0 + p) * (g * (m - 1.0) - m));
  theta = std::max(theta, 0.0);
  const double c = (std::sqrt(theta) -
                    2.0 * p * std::sqrt(g) * std::sqrt(1.0 - m) * std::sqrt(1.0 - mr)) /
                   den;
  return std::max(0.0, c);
}

// Reversal strength maximizing the one-sided concurrence; reduces to mr = m
// at g = 1 (exact undo when nothing decayed).
inline double optimal_mr_a(double m, double g) {
  return clamp_mr((2.0 - 2.0 * g - m + 2.0 * g * m) / (2.0 - g - m + g * m));
}

namespace detail {

// Shared brackets of the two-sided closed forms.
inline double case_b_population_bracket(double p, double m, double g) {
  return m * (4.0 + m * (p - 1.0)) - 4.0 + g * g * (p - 1.0) +
         g * (4.0 + m * (m - 4.0 - m * p));
}

inline double case_b_normalizer(double p, double m, double mr, double g) {
  return 2.0 * m * (2.0 + (g * (2.0 + g - g * p - 2.0 * mr) + 2.0 * (-2.0 + mr)) * mr) - 4.0 -
         m * m * (-1.0 + p) * ((1.0 - g) * (2.0 + g - mr) * mr - 1.0) +
         mr * (8.0 - 4.0 * mr + g * (-4.0 + (4.0 + g * (-1.0 + p)) * mr));
}

}  // namespace detail

// Compact analytic form of the two-sided final state, transcribed as
// published. For m > 0 it deviates from the channel composition (the
// composition is canonical; see the regression pins in the acceptance
// suite); exact on the m = 0, g = 1 and p = 1 slices.
inline XStateParams closed_form_case_b(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const double q = detail::case_b_normalizer(p, m, mr, g);
  if (std::abs(q) <= 1e-12)
    throw SingularConfigurationError("closed_form_case_b: vanishing normalizer");
  const double bracket = detail::case_b_population_bracket(p, m, g);
  XStateParams x;
  x.rho11 = (mr - 1.0) * (mr - 1.0) * bracket / q;
  x.rho22 = g * (g - 2.0 + m - p * g + m * p) * (1.0 - mr) / q;
  x.rho33 = g * (m - 1.0) * (m - 2.0 + g * (m - 1.0) * (p - 1.0) - m * p) * (mr - 1.0) / q;
  x.rho44 = g * g * (1.0 - m) * (1.0 - m) * (p - 1.0) / q;
  x.rho14 = 0.0;
  x.rho23 = 2.0 * g * (m - 1.0) * p * (mr - 1.0) / q;
  return x;
}

// Closed-form concurrence of the two-sided final state (same provenance and
// caveat as closed_form_case_b).
inline double concurrence_case_b(double p, double m, double mr, double g) {
  detail::check_protocol_args(p, m, mr, g);
  const double q = detail::case_b_normalizer(p, m, mr, g);
  if (std::abs(q) <= 1e-12)
    throw SingularConfigurationError("concurrence_case_b: vanishing normalizer");
  const double bracket = detail::case_b_population_bracket(p, m, g);
  double upsilon = g * g * (1.0 - m) * (1.0 - m) * (p - 1.0) * bracket * (mr - 1.0) * (mr - 1.0);
  upsilon = std::max(upsilon, 0.0);
  const double c = (2.0 * std::sqrt(upsilon) - 4.0 * g * (-1.0 + m) * p * (mr - 1.0)) / q;
  return std::max(0.0, c);
}

// Approximate optimal reversal strength for the two-sided scenario,
//   mr = 1 - sqrt(g^2 (1-m)^2 (p-1) / bracket).
// The radicand degenerates to 0/0 at p = 1, g = 1; callers fall back to the
// numeric optimizer on ApproximationDomainError.
inline double optimal_mr_b(double m, double g, double p) {
  const double bracket = detail::case_b_population_bracket(p, m, g);
  const double radicand = g * g * (1.0 - m) * (1.0 - m) * (p - 1.0) / bracket;
  if (!(radicand >= 0.0) || !std::isfinite(radicand))
    throw ApproximationDomainError("optimal_mr_b: radicand " + std::to_string(radicand) +
                                   " outside [0, inf)");
  return clamp_mr(1.0 - std::sqrt(radicand));
}

struct OptimalMr {
  double mr = 0.0;
  double value = 0.0;
};

// Maximizes the chosen objective of the composed evolution over the
// reversal strength: coarse 256-point scan, then golden-section refinement
// of the best cell. The scan is log-spaced in 1 - mr because the optimum
// approaches 1 like 1 - O(g(1-m)) under strong damping, squeezing the whole
// positive-objective window (and the steering objective's max{0, .} kink)
// into a sliver a uniform grid steps over.
inline OptimalMr optimal_mr_numeric(ScenarioCase scenario, double p, double m, double g,
                                    Objective objective) {
  auto evaluate = [&](double mr) {
    const ProtocolOutcome out = scenario == ScenarioCase::A ? evolve_case_a(p, m, mr, g)
                                                            : evolve_case_b(p, m, mr, g);
    if (objective == Objective::Concurrence) return concurrence(out.state);
    return steering_s(bloch_from_x(to_x_params(out.state))).s;
  };

  constexpr int kCoarsePoints = 256;
  auto grid_at = [&](int i) {
    // mr = 0 at i = 0, rising to the cap with 1 - mr geometric in between
    return std::min(1.0 - std::pow(1.0 - kPolicyMrCap, static_cast<double>(i) / (kCoarsePoints - 1)),
                    kPolicyMrCap);
  };
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kCoarsePoints; ++i) {
    const double v = evaluate(grid_at(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo_bracket = grid_at(std::max(best - 1, 0));
  const double hi_bracket = grid_at(std::min(best + 1, kCoarsePoints - 1));
  const auto [mr, value] = golden_section_maximize(evaluate, lo_bracket, hi_bracket, 1e-8);
  if (value >= best_value) return {mr, value};
  return {grid_at(best), best_value};
}

// Resolves a policy to a concrete reversal strength for the given scenario
// point. The analytic policy falls back to the numeric optimizer where the
// two-sided approximation leaves its domain.
inline double resolve_mr(ScenarioCase scenario, const MrPolicy& policy, double p, double m, double g) {
  switch (policy.kind) {
    case MrPolicy::Kind::Explicit:
      return clamp_mr(policy.value);
    case MrPolicy::Kind::AnalyticOptimal: {
      double mr = 0.0;
      if (scenario == ScenarioCase::A) {
        mr = optimal_mr_a(m, g);
      } else {
        try {
          mr = optimal_mr_b(m, g, p);
        } catch (const ApproximationDomainError&) {
          mr = optimal_mr_numeric(scenario, p, m, g, Objective::Concurrence).mr;
        }
      }
      return std::min(mr, kPolicyMrCap);
    }
    case MrPolicy::Kind::NumericOptimal:
      return std::min(optimal_mr_numeric(scenario, p, m, g, policy.objective).mr, kPolicyMrCap);
  }
  throw InvalidArgumentError("resolve_mr: bad policy");
}

}  // namespace steerlab

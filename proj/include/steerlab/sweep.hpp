#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "steerlab/channel.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/protocol.hpp"
#include "steerlab/qstate.hpp"

namespace steerlab {

// One record of any sweep or figure grid.
struct SweepRow {
  double t = 0.0;
  double g = 1.0;
  double p = 0.0;
  double m = 0.0;
  double mr = 0.0;
  double concurrence = 0.0;
  double si = 0.0;
  double s = 0.0;
  double fidelity = 1.0;
  double success_prob = 1.0;
};

inline constexpr const char* kCsvHeader = "t,g,p,m,mr,concurrence,si,s,fidelity,success_prob";

struct TimeGrid {
  double start = 0.0;
  double end = 30.0;
  std::size_t steps = 600;

  void check() const {
    if (steps == 0) throw InvalidArgumentError("time grid: empty");
    if (!(start >= 0.0)) throw InvalidArgumentError("time grid: t must be nonnegative");
    if (steps > 1 && !(end > start)) throw InvalidArgumentError("time grid: not strictly increasing");
  }
  double at(std::size_t i) const {
    return steps == 1 ? start : start + (end - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

// Worker count: STEERLAB_THREADS caps parallelism, 0 or unset means all cores.
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("STEERLAB_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* tail = nullptr;
  const long v = std::strtol(env, &tail, 10);
  if (tail == env || *tail != '\0' || v < 0) return hw;
  if (v == 0) return hw;
  return static_cast<unsigned>(v);
}

// Index-parallel loop with deterministic output: each index writes its own
// slot, so scheduling order never shows in the results. The first exception
// wins and is rethrown on the caller thread.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Evaluates one protocol point: resolve the reversal strength, run the
// composed evolution, and measure everything. Fidelity is taken against the
// initial Werner state.
inline SweepRow evaluate_point(ScenarioCase scenario, double p, double m, const MrPolicy& policy,
                               const ReservoirParams& reservoir, bool allow_markovian, double t) {
  SweepRow row;
  row.t = t;
  row.p = p;
  row.m = m;
  row.g = decay_factor(reservoir, t, allow_markovian);
  row.mr = resolve_mr(scenario, policy, p, m, row.g);
  const ProtocolOutcome out = scenario == ScenarioCase::A ? evolve_case_a(p, m, row.mr, row.g)
                                                          : evolve_case_b(p, m, row.mr, row.g);
  row.success_prob = out.success_prob;
  row.concurrence = concurrence(out.state);
  const SteeringReport steer = steering_s(bloch_from_x(to_x_params(out.state)));
  row.si = steer.si;
  row.s = steer.s;
  row.fidelity = bures_fidelity(werner(p), out.state);
  return row;
}

inline std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const TimeGrid& grid) {
  grid.check();
  std::vector<SweepRow> rows(grid.steps);
  parallel_for(grid.steps, [&](std::size_t i) {
    rows[i] = evaluate_point(config.scenario, config.p, config.m, config.mr, config.reservoir,
                             config.allow_markovian, grid.at(i));
  });
  return rows;
}

// 12 significant digits, C locale semantics; %g keeps the files compact and
// the round trip through any plotting tool lossless enough.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    os << format_value(r.t) << ',' << format_value(r.g) << ',' << format_value(r.p) << ','
       << format_value(r.m) << ',' << format_value(r.mr) << ',' << format_value(r.concurrence) << ','
       << format_value(r.si) << ',' << format_value(r.s) << ',' << format_value(r.fidelity) << ','
       << format_value(r.success_prob) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Figure presets

struct FigureOptions {
  std::vector<double> curve_m = {0.0, 0.4, 0.8};
  double p_fixed_override = -1.0;  // < 0 means keep each panel's default
  std::size_t curve_points = 600;
  std::size_t surface_points = 120;
  ReservoirParams reservoir;
  bool allow_markovian = false;
};

using FigureFile = std::pair<std::string, std::vector<SweepRow>>;

namespace detail {

// m axes stop below 1 so the reversal stage keeps a representable success
// probability at the decay-envelope zeros; p runs the full physical range.
inline constexpr double kMaxAxisM = 0.98;
inline constexpr double kTimeEnd = 30.0;

inline double axis_at(double lo, double hi, std::size_t i, std::size_t n) {
  return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

inline std::vector<SweepRow> curves_over_t(ScenarioCase scenario, double p, const std::vector<double>& ms,
                                           const MrPolicy& policy, const FigureOptions& opt) {
  std::vector<SweepRow> rows(ms.size() * opt.curve_points);
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t ci = idx / opt.curve_points;
    const std::size_t ti = idx % opt.curve_points;
    const double t = axis_at(0.0, kTimeEnd, ti, opt.curve_points);
    rows[idx] = evaluate_point(scenario, p, ms[ci], policy, opt.reservoir, opt.allow_markovian, t);
  });
  return rows;
}

enum class Axis { M, P, T };

inline std::vector<SweepRow> surface(ScenarioCase scenario, Axis outer, Axis inner, double p_fixed,
                                     double m_fixed, double t_fixed, const MrPolicy& policy,
                                     const FigureOptions& opt) {
  const std::size_t n = opt.surface_points;
  std::vector<SweepRow> rows(n * n);
  auto axis_value = [&](Axis axis, std::size_t i) {
    switch (axis) {
      case Axis::M:
        return axis_at(0.0, kMaxAxisM, i, n);
      case Axis::P:
        return axis_at(0.0, 1.0, i, n);
      case Axis::T:
        return axis_at(0.0, kTimeEnd, i, n);
    }
    return 0.0;
  };
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t oi = idx / n;
    const std::size_t ii = idx % n;
    double p = p_fixed, m = m_fixed, t = t_fixed;
    for (const auto& [axis, i] : {std::pair<Axis, std::size_t>{outer, oi}, {inner, ii}}) {
      const double v = axis_value(axis, i);
      if (axis == Axis::M) m = v;
      if (axis == Axis::P) p = v;
      if (axis == Axis::T) t = v;
    }
    rows[idx] = evaluate_point(scenario, p, m, policy, opt.reservoir, opt.allow_markovian, t);
  });
  return rows;
}

}  // namespace detail

// Data grids for the preset figures 2..8. Panels that share a grid are
// written once per panel name so each file stands alone for plotting.
inline std::vector<FigureFile> figure_data(int n, const FigureOptions& opt) {
  using detail::Axis;
  const MrPolicy analytic = MrPolicy::analytic();
  const MrPolicy none = MrPolicy::explicit_value(0.0);
  auto fixed_p = [&](double fallback) { return opt.p_fixed_override >= 0.0 ? opt.p_fixed_override : fallback; };

  std::vector<FigureFile> files;
  switch (n) {
    case 2: {
      const auto rows = detail::curves_over_t(ScenarioCase::A, fixed_p(0.8), opt.curve_m, analytic, opt);
      files.emplace_back("fig2a.csv", rows);
      files.emplace_back("fig2b.csv", rows);
      break;
    }
    case 3: {
      const auto mt = detail::surface(ScenarioCase::A, Axis::M, Axis::T, fixed_p(0.8), 0.0, 0.0, analytic, opt);
      const auto pt = detail::surface(ScenarioCase::A, Axis::P, Axis::T, 0.0, 0.2, 0.0, analytic, opt);
      const auto pm = detail::surface(ScenarioCase::A, Axis::P, Axis::M, 0.0, 0.0, 8.0, analytic, opt);
      files.emplace_back("fig3a1.csv", mt);
      files.emplace_back("fig3a2.csv", pt);
      files.emplace_back("fig3a3.csv", pm);
      files.emplace_back("fig3b1.csv", mt);
      files.emplace_back("fig3b2.csv", pt);
      files.emplace_back("fig3b3.csv", pm);
      break;
    }
    case 4: {
      files.emplace_back("fig4a.csv",
                         detail::surface(ScenarioCase::B, Axis::M, Axis::T, fixed_p(0.2), 0.0, 0.0, analytic, opt));
      files.emplace_back("fig4b.csv",
                         detail::surface(ScenarioCase::B, Axis::P, Axis::T, 0.0, 0.2, 0.0, analytic, opt));
      files.emplace_back("fig4c.csv",
                         detail::surface(ScenarioCase::B, Axis::P, Axis::M, 0.0, 0.0, 2.0, analytic, opt));
      break;
    }
    case 5: {
      const auto rows = detail::curves_over_t(ScenarioCase::B, fixed_p(0.9), opt.curve_m, analytic, opt);
      files.emplace_back("fig5a.csv", rows);
      files.emplace_back("fig5b.csv", rows);
      break;
    }
    case 6: {
      files.emplace_back("fig6a.csv",
                         detail::surface(ScenarioCase::B, Axis::M, Axis::T, fixed_p(0.9), 0.0, 0.0, analytic, opt));
      files.emplace_back("fig6b.csv",
                         detail::surface(ScenarioCase::B, Axis::P, Axis::T, 0.0, 0.4, 0.0, analytic, opt));
      files.emplace_back("fig6c.csv",
                         detail::surface(ScenarioCase::B, Axis::P, Axis::M, 0.0, 0.0, 8.0, analytic, opt));
      break;
    }
    case 7: {
      files.emplace_back("fig7a.csv",
                         detail::surface(ScenarioCase::A, Axis::P, Axis::T, 0.0, 0.0, 0.0, none, opt));
      files.emplace_back("fig7b.csv",
                         detail::surface(ScenarioCase::B, Axis::P, Axis::T, 0.0, 0.0, 0.0, none, opt));
      break;
    }
    case 8: {
      const double p = fixed_p(0.9);
      files.emplace_back("fig8a_wmr.csv",
                         detail::surface(ScenarioCase::A, Axis::M, Axis::T, p, 0.0, 0.0, analytic, opt));
      files.emplace_back("fig8a_wm.csv",
                         detail::surface(ScenarioCase::A, Axis::M, Axis::T, p, 0.0, 0.0, none, opt));
      files.emplace_back("fig8b_wmr.csv",
                         detail::surface(ScenarioCase::B, Axis::M, Axis::T, p, 0.0, 0.0, analytic, opt));
      files.emplace_back("fig8b_wm.csv",
                         detail::surface(ScenarioCase::B, Axis::M, Axis::T, p, 0.0, 0.0, none, opt));
      break;
    }
    default:
      throw InvalidArgumentError("figure: n must be in 2..8");
  }
  return files;
}

// Decay-factor table for diagnostics.
struct GtProbeRow {
  double t = 0.0;
  double g = 1.0;
};

inline std::vector<GtProbeRow> gt_probe(const ReservoirParams& reservoir, double t_start, double t_end,
                                        double step, bool allow_markovian = false) {
  if (!(step > 0.0) || !(t_start >= 0.0) || !(t_end >= t_start))
    throw InvalidArgumentError("gt_probe: bad range");
  const auto count = static_cast<std::size_t>((t_end - t_start) / step + 1e-12) + 1;
  std::vector<GtProbeRow> rows(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = t_start + step * static_cast<double>(i);
    rows[i] = {t, decay_factor(reservoir, t, allow_markovian)};
  }
  return rows;
}

}  // namespace steerlab

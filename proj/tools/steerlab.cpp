// Command-line front end: parameter sweeps, preset figure grids, and a
// decay-factor probe. Exit codes: 0 ok, 2 usage/config error, 3 I/O error,
// 4 numeric failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "steerlab/steerlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

struct SweepCliOptions {
  std::string scenario = "a";
  double p = 0.8;
  double m = 0.0;
  std::string mr = "0";
  double gamma0 = 1.0;
  double lambda = 0.1;
  double t_start = 0.0;
  double t_end = 30.0;
  std::size_t t_steps = 600;
  std::string objective = "concurrence";
  bool allow_markovian = false;
  std::string out = "-";
  std::string config_path;
};

// Fills options the user did not pass on the command line from the JSON
// config file (identical keys, flags win).
void merge_config_file(const CLI::App& cmd, SweepCliOptions& o) {
  std::ifstream in(o.config_path);
  if (!in) throw steerlab::InvalidArgumentError("cannot open config file: " + o.config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw steerlab::InvalidArgumentError("config file: " + std::string(e.what()));
  }
  auto take = [&](const char* flag, const char* key, auto& slot) {
    if (cmd.count(flag) == 0 && j.contains(key)) j.at(key).get_to(slot);
  };
  take("--case", "case", o.scenario);
  take("--p", "p", o.p);
  take("--m", "m", o.m);
  take("--gamma0", "gamma0", o.gamma0);
  take("--lambda", "lambda", o.lambda);
  take("--t-start", "t-start", o.t_start);
  take("--t-end", "t-end", o.t_end);
  take("--t-steps", "t-steps", o.t_steps);
  take("--objective", "objective", o.objective);
  take("--allow-markovian", "allow-markovian", o.allow_markovian);
  take("--out", "out", o.out);
  if (cmd.count("--mr") == 0 && j.contains("mr")) {
    const auto& v = j.at("mr");
    o.mr = v.is_string() ? v.get<std::string>() : steerlab::format_value(v.get<double>());
  }
}

steerlab::ScenarioConfig build_config(const SweepCliOptions& o) {
  steerlab::ScenarioConfig cfg;
  if (o.scenario == "a" || o.scenario == "A")
    cfg.scenario = steerlab::ScenarioCase::A;
  else if (o.scenario == "b" || o.scenario == "B")
    cfg.scenario = steerlab::ScenarioCase::B;
  else
    throw steerlab::InvalidArgumentError("--case must be a or b");

  steerlab::Objective objective = steerlab::Objective::Concurrence;
  if (o.objective == "steering")
    objective = steerlab::Objective::Steering;
  else if (o.objective != "concurrence")
    throw steerlab::InvalidArgumentError("--objective must be concurrence or steering");

  if (o.mr == "analytic") {
    cfg.mr = steerlab::MrPolicy::analytic();
  } else if (o.mr == "numeric") {
    cfg.mr = steerlab::MrPolicy::numeric(objective);
  } else {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(o.mr, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != o.mr.size()) throw steerlab::InvalidArgumentError("--mr must be a number, analytic, or numeric");
    if (!(value >= 0.0 && value < 1.0)) throw steerlab::InvalidArgumentError("--mr value must lie in [0, 1)");
    cfg.mr = steerlab::MrPolicy::explicit_value(value);
  }

  if (!(o.p >= 0.0 && o.p <= 1.0)) throw steerlab::InvalidArgumentError("--p must lie in [0, 1]");
  if (!(o.m >= 0.0 && o.m < 1.0)) throw steerlab::InvalidArgumentError("--m must lie in [0, 1)");
  if (!(o.gamma0 > 0.0) || !(o.lambda > 0.0))
    throw steerlab::InvalidArgumentError("--gamma0 and --lambda must be positive");
  cfg.p = o.p;
  cfg.m = o.m;
  cfg.reservoir = {o.gamma0, o.lambda};
  cfg.allow_markovian = o.allow_markovian;
  if (!cfg.allow_markovian && !cfg.reservoir.non_markovian())
    throw steerlab::RegimeError("lambda >= 2*gamma0: pass --allow-markovian for the memoryless branch");
  return cfg;
}

int write_text(const std::string& out, const std::string& text) {
  if (out == "-" || out.empty()) {
    std::cout << text;
    return std::cout.good() ? kExitOk : kExitIo;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file: " << out << "\n";
    return kExitIo;
  }
  file << text;
  file.flush();
  if (!file.good()) {
    std::cerr << "error: write failed: " << out << "\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string rows_to_csv(const std::vector<steerlab::SweepRow>& rows) {
  std::ostringstream os;
  steerlab::write_csv(os, rows);
  return os.str();
}

int run_sweep_command(const CLI::App& cmd, SweepCliOptions& o) {
  steerlab::ScenarioConfig cfg;
  steerlab::TimeGrid grid;
  try {
    if (!o.config_path.empty()) merge_config_file(cmd, o);
    cfg = build_config(o);
    grid = {o.t_start, o.t_end, o.t_steps};
    grid.check();
  } catch (const steerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<steerlab::SweepRow> rows;
  try {
    rows = steerlab::run_sweep(cfg, grid);
  } catch (const steerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  const int rc = write_text(o.out, rows_to_csv(rows));
  if (rc == kExitOk && o.out != "-" && !o.out.empty())
    std::cerr << "wrote " << rows.size() << " rows to " << o.out << "\n";
  return rc;
}

int run_figure_command(int n, const std::string& out_dir, steerlab::FigureOptions& opt) {
  for (double m : opt.curve_m)
    if (!(m >= 0.0 && m < 1.0)) {
      std::cerr << "error: --m values must lie in [0, 1)\n";
      return kExitConfig;
    }
  if (opt.p_fixed_override > 1.0) {
    std::cerr << "error: --p must lie in [0, 1]\n";
    return kExitConfig;
  }
  if (!(opt.reservoir.gamma0 > 0.0) || !(opt.reservoir.lambda > 0.0)) {
    std::cerr << "error: --gamma0 and --lambda must be positive\n";
    return kExitConfig;
  }
  if (!opt.allow_markovian && !opt.reservoir.non_markovian()) {
    std::cerr << "error: lambda >= 2*gamma0: pass --allow-markovian\n";
    return kExitConfig;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitIo;
  }

  std::vector<steerlab::FigureFile> files;
  try {
    files = steerlab::figure_data(n, opt);
  } catch (const steerlab::InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const steerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  for (const auto& [name, rows] : files) {
    const auto path = (std::filesystem::path(out_dir) / name).string();
    const int rc = write_text(path, rows_to_csv(rows));
    if (rc != kExitOk) return rc;
    std::cerr << "wrote " << rows.size() << " rows to " << path << "\n";
  }
  return kExitOk;
}

int run_gt_probe_command(const steerlab::ReservoirParams& reservoir, double t_start, double t_end,
                         double step, bool allow_markovian, const std::string& out) {
  std::vector<steerlab::GtProbeRow> rows;
  try {
    if (!allow_markovian && !reservoir.non_markovian())
      throw steerlab::RegimeError("lambda >= 2*gamma0: pass --allow-markovian for the memoryless branch");
    rows = steerlab::gt_probe(reservoir, t_start, t_end, step, allow_markovian);
  } catch (const steerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::ostringstream os;
  os << "# regime: " << (reservoir.non_markovian() ? "non-Markovian (lambda < 2*gamma0)" : "Markovian (lambda > 2*gamma0)")
     << ", gamma0=" << steerlab::format_value(reservoir.gamma0)
     << ", lambda=" << steerlab::format_value(reservoir.lambda) << "\n";
  os << "t,g\n";
  for (const auto& r : rows) os << steerlab::format_value(r.t) << ',' << steerlab::format_value(r.g) << '\n';
  return write_text(out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit Werner states under oscillatory amplitude damping: entanglement, steering, fidelity, and partial-collapse protection"};
  app.require_subcommand(1);

  SweepCliOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep the protocol over a time grid and emit CSV rows");
  sweep->add_option("--case", sweep_opts.scenario, "Scenario: a (one-sided) or b (two-sided)");
  sweep->add_option("--p", sweep_opts.p, "Werner mixing parameter in [0, 1]");
  sweep->add_option("--m", sweep_opts.m, "Weak-measurement strength in [0, 1)");
  sweep->add_option("--mr", sweep_opts.mr, "Reversal strength: value in [0, 1), analytic, or numeric");
  sweep->add_option("--gamma0", sweep_opts.gamma0, "Qubit decay rate");
  sweep->add_option("--lambda", sweep_opts.lambda, "Reservoir spectral width");
  sweep->add_option("--t-start", sweep_opts.t_start, "Grid start time");
  sweep->add_option("--t-end", sweep_opts.t_end, "Grid end time");
  sweep->add_option("--t-steps", sweep_opts.t_steps, "Number of grid points");
  sweep->add_option("--objective", sweep_opts.objective, "Objective for --mr numeric: concurrence or steering");
  sweep->add_flag("--allow-markovian", sweep_opts.allow_markovian, "Enable the lambda > 2*gamma0 branch");
  sweep->add_option("--out", sweep_opts.out, "Output path, - for stdout");
  sweep->add_option("--config", sweep_opts.config_path, "JSON config file, same keys as the flags");

  int figure_n = 2;
  std::string figure_out_dir = ".";
  steerlab::FigureOptions figure_opts;
  double figure_p = -1.0;
  CLI::App* figure = app.add_subcommand("figure", "Write the data grid(s) for a preset figure (2..8)");
  figure->add_option("n", figure_n, "Figure number")->required()->check(CLI::Range(2, 8));
  figure->add_option("--out-dir", figure_out_dir, "Directory for the CSV files");
  figure->add_option("--p", figure_p, "Override the preset's fixed Werner parameter");
  figure->add_option("--m", figure_opts.curve_m, "Curve m values for the curve presets");
  figure->add_option("--curve-points", figure_opts.curve_points, "Points per 1-D curve");
  figure->add_option("--surface-points", figure_opts.surface_points, "Points per surface axis");
  figure->add_option("--gamma0", figure_opts.reservoir.gamma0, "Qubit decay rate");
  figure->add_option("--lambda", figure_opts.reservoir.lambda, "Reservoir spectral width");
  figure->add_flag("--allow-markovian", figure_opts.allow_markovian, "Enable the lambda > 2*gamma0 branch");

  steerlab::ReservoirParams probe_reservoir;
  double probe_t_start = 0.0, probe_t_end = 30.0, probe_step = 0.05;
  bool probe_allow = false;
  std::string probe_out = "-";
  CLI::App* probe = app.add_subcommand("gt-probe", "Tabulate the decay factor G_t");
  probe->add_option("--gamma0", probe_reservoir.gamma0, "Qubit decay rate");
  probe->add_option("--lambda", probe_reservoir.lambda, "Reservoir spectral width");
  probe->add_option("--t-start", probe_t_start, "Range start");
  probe->add_option("--t-end", probe_t_end, "Range end");
  probe->add_option("--t-step", probe_step, "Step size");
  probe->add_flag("--allow-markovian", probe_allow, "Enable the lambda > 2*gamma0 branch");
  probe->add_option("--out", probe_out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(*sweep, sweep_opts);
    if (figure->parsed()) {
      figure_opts.p_fixed_override = figure_p;
      return run_figure_command(figure_n, figure_out_dir, figure_opts);
    }
    if (probe->parsed())
      return run_gt_probe_command(probe_reservoir, probe_t_start, probe_t_end, probe_step, probe_allow,
                                  probe_out);
  } catch (const steerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}

#include "sweep/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sweep/errors.hpp"
#include "sweep/oracle.hpp"
#include "sweep/scenario.hpp"
#include "sweep/table.hpp"
#include "sweep/verify.hpp"

namespace sweep::cli {
namespace {

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ModelError(Fault::MalformedDocument, "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

double scenario_tau(const Scenario& sc) {
  return std::visit([](const auto& s) { return s.tau; }, sc);
}

void set_tau(Scenario& sc, double tau) {
  std::visit([&](auto& s) { s.tau = tau; }, sc);
}

double scenario_horizon(const Scenario& sc) {
  return std::visit([](const auto& s) { return s.horizon; }, sc);
}

struct TauRange {
  double start = 1.0;
  double stop = 10.0;
  double step = 1.0;
};

TauRange parse_tau_range(const std::string& text) {
  TauRange r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':') {
    throw CLI::ValidationError("--tau-sweep", "expected START:STOP:STEP");
  }
  if (!(r.step > 0.0) || r.start > r.stop) {
    throw CLI::ValidationError("--tau-sweep", "need step > 0 and start <= stop");
  }
  return r;
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) {
    throw ModelError(Fault::MalformedDocument, "cannot write " + path);
  }
  return file;
}

void write_trajectory_csv(const Scenario& sc, const SolveReport& report, double dt,
                          std::ostream& out) {
  const double T = scenario_horizon(sc);
  out << "t";
  for (std::size_t i = 0; i < report.trajectories.size(); ++i) {
    out << ",x" << (i + 1) << ",y" << (i + 1);
  }
  out << "\n";
  for (double t = 0.0; t <= T + 1e-12; t += dt) {
    const double tc = std::min(t, T);
    out << format_cell(tc);
    for (const auto& traj : report.trajectories) {
      const Vec2 p = traj.position_at(tc);
      out << "," << format_cell(p.x) << "," << format_cell(p.y);
    }
    out << "\n";
  }
}

int run_solve(const std::string& config, std::optional<double> tau,
              const std::string& tau_sweep, const std::string& out_path,
              const std::string& trajectory_path, double dt) {
  Scenario sc = load_scenario(config);
  std::vector<std::pair<double, SolveReport>> rows;
  if (!tau_sweep.empty()) {
    const TauRange range = parse_tau_range(tau_sweep);
    for (double t = range.start; t <= range.stop + 1e-12; t += range.step) {
      set_tau(sc, t);
      rows.emplace_back(t, verify::solve_scenario(sc));
    }
  } else {
    if (tau) set_tau(sc, *tau);
    rows.emplace_back(scenario_tau(sc), verify::solve_scenario(sc));
  }

  std::ofstream file;
  emit_table(rows, open_or_stdout(out_path, file));

  if (!trajectory_path.empty()) {
    std::ofstream traj_file(trajectory_path);
    if (!traj_file) {
      throw ModelError(Fault::MalformedDocument, "cannot write " + trajectory_path);
    }
    const double step = dt > 0.0 ? dt : scenario_horizon(sc) / 600.0;
    write_trajectory_csv(sc, rows.back().second, step, traj_file);
  }
  return 0;
}

int run_simulate(const std::string& config, const std::vector<double>& controls, double h,
                 const std::string& out_path) {
  const Scenario sc = load_scenario(config);
  const oracle::SimScene scene = oracle::SimScene::from(sc);
  if (controls.size() != static_cast<std::size_t>(scene.agent_count())) {
    throw ModelError(Fault::BadArguments, "need one control per agent");
  }
  oracle::SimConfig cfg;
  cfg.step = h;
  const oracle::SimTrace trace = oracle::simulate(scene, controls, cfg);
  std::ofstream file;
  std::ostream& out = open_or_stdout(out_path, file);
  oracle::write_trace_csv(trace, scene, out);
  std::cerr << "J_sim = " << oracle::simulated_cost(trace, scene, controls) << "\n";
  return 0;
}

int run_verify(const std::string& config, double h) {
  const Scenario sc = load_scenario(config);
  const SolveReport report = verify::solve_scenario(sc);

  bool ok = true;
  const auto invariants = verify::check_invariants(sc, report);
  for (const auto& f : invariants.failures) {
    std::cerr << "invariant violated: " << f << "\n";
  }
  ok = ok && invariants.ok;

  const auto cmp = verify::compare_with_oracle(sc, report, h);
  const double dev_tol = 50.0 * h;
  const double cost_tol = 500.0 * h;
  std::cout << "max trajectory deviation: " << cmp.sup_deviation
            << " (tolerance " << dev_tol << ")\n"
            << "cost gap |J_sim - J_analytic|: " << cmp.cost_gap
            << " (tolerance " << cost_tol << ", J_sim = " << cmp.j_sim
            << ", J_analytic = " << cmp.j_analytic << ")\n";
  ok = ok && cmp.sup_deviation <= dev_tol && cmp.cost_gap <= cost_tol;

  const double grid_best = verify::grid_oracle_best_cost(sc);
  std::cout << "grid oracle best J: " << grid_best << " vs solver J: " << report.cost << "\n";
  ok = ok && report.cost <= grid_best + 1e-3 * std::max(1.0, std::abs(grid_best));

  if (std::holds_alternative<SingleScenario>(sc)) {
    const auto scan =
        verify::mid_arc_numeric_scan(std::get<SingleScenario>(sc), 16, scenario_horizon(sc) / 2000.0);
    if (scan) {
      std::cout << "mid-arc numeric best J: " << scan->best_numeric_cost
                << " (excluded regime; solver J " << report.cost << ")\n";
      ok = ok && report.cost <= scan->best_numeric_cost + cost_tol;
    }
  }

  std::cout << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Optimal crowd-motion controls with obstacle and corridor contact"};
  app.require_subcommand(1);
  // --h is a documented flag; keep help on --help only so the names don't clash.
  app.set_help_flag("--help", "print help");

  std::string config, out_path, trajectory_path, tau_sweep, controls_text;
  double tau_value = 0.0, h = 1e-3, dt = 0.0;
  bool tau_given = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--config", config, "scenario document (JSON)")->required();
  };

  CLI::App* solve = app.add_subcommand("solve", "solve a scenario (single tau or sweep)");
  add_config(solve);
  solve->add_option("--tau", tau_value, "override the document's tau")
      ->each([&](const std::string&) { tau_given = true; });
  solve->add_option("--tau-sweep", tau_sweep, "A:B:STEP sweep over tau");
  solve->add_option("--out", out_path, "result CSV path (default stdout)");
  solve->add_option("--trajectory", trajectory_path, "trajectory CSV for the last solved row");
  solve->add_option("--dt", dt, "trajectory sampling step");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tau sweep (default 1:10:1)");
  add_config(sweep_cmd);
  sweep_cmd->add_option("--tau-sweep", tau_sweep, "A:B:STEP sweep over tau");
  sweep_cmd->add_option("--out", out_path, "result CSV path (default stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "run the catching-up integrator");
  add_config(simulate);
  simulate->add_option("--controls", controls_text, "comma-separated controls")->required();
  simulate->add_option("--h", h, "time step");
  simulate->add_option("--out", out_path, "trace CSV path (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "analytic vs. integrator cross-check");
  add_config(verify_cmd);
  verify_cmd->add_option("--h", h, "time step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      return run_solve(config, tau_given ? std::optional<double>(tau_value) : std::nullopt,
                       tau_sweep, out_path, trajectory_path, dt);
    }
    if (sweep_cmd->parsed()) {
      return run_solve(config, std::nullopt, tau_sweep.empty() ? "1:10:1" : tau_sweep, out_path,
                       "", 0.0);
    }
    if (simulate->parsed()) {
      std::vector<double> controls;
      std::stringstream ss(controls_text);
      std::string item;
      while (std::getline(ss, item, ',')) controls.push_back(std::stod(item));
      return run_simulate(config, controls, h, out_path);
    }
    if (verify_cmd->parsed()) {
      return run_verify(config, h);
    }
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.fault()) {  // scenario-document problems are usage errors
      case Fault::MalformedDocument:
      case Fault::MissingField:
      case Fault::NonFinite:
      case Fault::BadArguments:
      case Fault::BadAgentCount:
      case Fault::InfeasibleStart:
      case Fault::DestinationInsideObstacle:
      case Fault::NotCollinear:
      case Fault::InitialOverlap:
      case Fault::AgentPastDestination:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace sweep::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sweep/scenario.hpp"
#include "sweep/trajectory.hpp"

namespace sweep::verify {

/// Dispatches to the matching analytic solver.
SolveReport solve_scenario(const Scenario& sc);

/// Bolza cost of the report's analytic trajectories: terminal squared
/// distances to the destination plus the control-energy integral.
double analytic_bolza_cost(const Scenario& sc, const SolveReport& report);

struct OracleComparison {
  double sup_deviation = 0.0;  // max over time and agents of |x_sim - x_analytic|
  double cost_gap = 0.0;       // |j_sim - j_analytic|
  double j_sim = 0.0;
  double j_analytic = 0.0;
};

/// Runs the catching-up integrator at the report's controls and measures the
/// worst position deviation from the analytic trajectories plus the cost gap.
OracleComparison compare_with_oracle(const Scenario& sc, const SolveReport& report, double h);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Model invariants on the analytic solution: nonpenetration, nonnegative
/// multipliers, arc/line speeds, contact gaps, ratio identities, advance
/// conservation.
CheckResult check_invariants(const Scenario& sc, const SolveReport& report);

/// Brute-force minimum over the same branch structure the solvers search,
/// on refined grids; used to cross-check solver optima.
double grid_oracle_best_cost(const Scenario& sc);

struct MidArcScan {
  double best_numeric_cost = 0.0;
  double control_at_best = 0.0;
};

/// Samples the mid-arc control window (between the straight-line and
/// full-swing branches) with the numeric integrator; empty when the window is
/// empty. Confirms the excluded regime is not optimal.
std::optional<MidArcScan> mid_arc_numeric_scan(const SingleScenario& sc, int samples, double h);

}  // namespace sweep::verify

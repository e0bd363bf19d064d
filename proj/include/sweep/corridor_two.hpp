#pragma once

#include <optional>

#include "sweep/scenario.hpp"
#include "sweep/trajectory.hpp"

namespace sweep::corridor_two {

/// Half of the initial slack: Lambda_12 = (rho_1(0) - rho_2(0) - L1 - L2) / 2.
double lambda12(const CorridorScenario& sc);

/// Interaction level during contact under the ratio relation a1 = (s1/s2) a2:
/// eta_12 = a2 (s1^2 - s2^2) / (2 s2).
double eta12_level(const CorridorScenario& sc, double a2);

/// Contact time t_f12 = Lambda_12 / eta_12(a2); empty when the agents do not
/// meet within the horizon.
TwoAgentSchedule contact_time_two(const CorridorScenario& sc, double a2);

/// Contact time for independently chosen controls (no ratio assumed):
/// t = 2 Lambda_12 / (a1 s1 - a2 s2).
std::optional<double> pair_contact_time(const CorridorScenario& sc, double a1, double a2);

/// Smallest a2 for which contact happens by the horizon.
double contact_bound(const CorridorScenario& sc);

/// Contact-branch objective in a2 alone (a1 tied by the ratio relation).
/// Requires a2 >= contact_bound.
double cost_contact_branch(const CorridorScenario& sc, double a2);

/// No-contact objective for independent controls; requires the gap constraint
/// T (a1 s1 - a2 s2) <= 2 Lambda_12.
double cost_free_branch(const CorridorScenario& sc, double a1, double a2);

/// Piecewise-linear axis trajectories for the given controls and schedule:
/// individual slopes before contact, the common averaged slope after.
std::vector<PiecewiseTrajectory> trajectories_two(const CorridorScenario& sc,
                                                  const std::vector<double>& a,
                                                  const TwoAgentSchedule& sched);

/// Compares the closed-form contact branch against the constrained free
/// branch and returns the cheaper optimum.
SolveReport solve_two(const CorridorScenario& sc);

}  // namespace sweep::corridor_two

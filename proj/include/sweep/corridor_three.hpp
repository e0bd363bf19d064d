#pragma once

#include "sweep/scenario.hpp"
#include "sweep/trajectory.hpp"

namespace sweep::corridor_three {

/// Pairwise slack halves for the contact chain.
double lambda12(const CorridorScenario& sc);
double lambda23(const CorridorScenario& sc);

/// Which pair meets first: compares Lambda_12/(s1^2-s2^2) against
/// Lambda_23/(s2^2-s3^2); equality within 1e-9 means simultaneous contact.
TripleCase case_discriminant(const CorridorScenario& sc);

struct ThreeAgentMultipliers {
  StepFunction eta12;
  StepFunction eta23;
};

/// Piecewise-constant multiplier profiles under the ratio relations
/// a1 = (s1/s3) a3, a2 = (s2/s3) a3, with breakpoints at the contact times.
ThreeAgentMultipliers eta_profiles_three(const CorridorScenario& sc, double a3, TripleCase order);

/// Pair and triple contact times for the given case; entries past the horizon
/// are left empty.
ThreeAgentSchedule contact_times_three(const CorridorScenario& sc, double a3, TripleCase order);

/// Per-agent axis trajectories under the ratio relations: individual slopes,
/// then the pair window's averaged slope, then the common slope of all three.
std::vector<PiecewiseTrajectory> trajectories_three(const CorridorScenario& sc, double a3,
                                                    const ThreeAgentSchedule& sched);

/// Objective of the full contact-chain branch as a function of a3 alone
/// (terminal squared distances plus the energy term matching the reference
/// solver's tables).
double cost_chain_branch(const CorridorScenario& sc, double a3);

/// Bolza cost of the same chain solution (quadratic control energy); used to
/// compare branches on a common scale.
double chain_bolza_cost(const CorridorScenario& sc, double a3);

/// Smallest a3 with t_f123(a3) <= T.
double chain_bound(const CorridorScenario& sc);

/// Extended-branch objectives (Bolza functional); +infinity when the given
/// controls violate the branch's contact pattern.
double cost_pair12_only(const CorridorScenario& sc, double a2, double a3);
double cost_pair23_only(const CorridorScenario& sc, double a1, double a3);
double cost_no_contact(const CorridorScenario& sc, double a1, double a2, double a3);

/// Minimizes the contact-chain branch and the extended branches (one pair
/// only, or no contact at all) and returns the cheapest; extended winners are
/// flagged in the report.
SolveReport solve_three(const CorridorScenario& sc);

}  // namespace sweep::corridor_three

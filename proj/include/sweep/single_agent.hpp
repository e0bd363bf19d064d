#pragma once

#include <optional>

#include "sweep/scenario.hpp"
#include "sweep/trajectory.hpp"

namespace sweep::single_agent {

/// Contact geometry of the chord from start to destination against the
/// inflated obstacle disk: first-hit parameter, contact and leave points,
/// departure angle, and the swing orientation (+1 CCW / -1 CW).
struct SingleContactGeometry {
  double mu = 0.0;
  Vec2 contact_point;   // x(t_f)
  Vec2 leave_point;     // x(t_l)
  double departure_angle_deg = 0.0;  // theta in (0, 180)
  double pre_contact_distance = 0.0;  // d(mu) = mu * ||x_des - x0||
  int orientation = +1;
};

/// None when the open chord misses the inflated disk (free flight).
/// Throws DestinationInsideObstacle only via scenario validation; a validated
/// scenario always admits a departure point.
std::optional<SingleContactGeometry> contact_geometry(const SingleScenario& sc);

/// t_f = d(mu) / (s a); t_l = t_f + pi * theta * (L + r) / (180 a).
/// No clipping against the horizon; callers check t_l <= T.
SingleSchedule contact_times(const SingleScenario& sc, const SingleContactGeometry& geom,
                             double a);

/// Smallest control for which the arc is finished by the horizon
/// (t_l(a) <= T for all a >= a_min).
double control_lower_bound(const SingleScenario& sc, const SingleContactGeometry& geom);

/// Arc length along the circle between contact and leave points.
double arc_length(const SingleScenario& sc, const SingleContactGeometry& geom);

struct CostValue {
  double value = 0.0;
  /// True when the control lands in the mid-arc regime the closed forms do
  /// not cover and the value came from the catching-up integrator.
  bool numeric = false;
};

/// Piecewise cost: straight-line branch when the agent never reaches the
/// contact point, swing-and-go branch when the arc completes by T, numeric
/// fallback in between. Terminal miss is signed (overshoot counts squared).
CostValue cost(const SingleScenario& sc, const std::optional<SingleContactGeometry>& geom,
               double a);

/// Three-piece trajectory: line to the contact point, arc around the
/// obstacle, line toward the destination. Requires t_l(a) <= T.
PiecewiseTrajectory trajectory(const SingleScenario& sc, const SingleContactGeometry& geom,
                               double a);

/// Straight-line trajectory for the no-contact / pre-contact regime.
PiecewiseTrajectory free_trajectory(const SingleScenario& sc, double a);

/// Multiplier weight on the normal direction: zero off contact, and during
/// [t_f, t_l] equal to s a <unit(x - x_des), unit(x - x_obs)> clamped at 0.
double eta_at(const SingleScenario& sc, const SingleContactGeometry& geom, double a, double t);

/// Closed-form minimization over the straight-line and full-swing branches;
/// returns the better branch with schedule, trajectory and eta samples.
SolveReport solve(const SingleScenario& sc);

}  // namespace sweep::single_agent

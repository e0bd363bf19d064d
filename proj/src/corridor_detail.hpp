#pragma once

#include <utility>
#include <vector>

#include "sweep/scenario.hpp"
#include "sweep/trajectory.hpp"

namespace sweep::detail {

/// Piecewise-constant advance speeds toward the destination: each entry is
/// (speed, window end time); windows must cover [0, T] in order.
struct SpeedWindow {
  double speed = 0.0;
  double until = 0.0;
};

/// Maps a signed axis coordinate history onto the plane. rho decreases at
/// `speed` within each window; positions are destination - rho * axis.
inline PiecewiseTrajectory axis_trajectory(const CorridorScenario& sc, double rho_start,
                                           const std::vector<SpeedWindow>& windows) {
  PiecewiseTrajectory path;
  double t = 0.0;
  double rho = rho_start;
  for (const SpeedWindow& w : windows) {
    const double end = w.until;
    if (end < t) continue;
    path.add(LineSegment{t, end, sc.position_for_rho(rho), w.speed * sc.axis});
    rho -= w.speed * (end - t);
    t = end;
  }
  return path;
}

inline double rho_at(const PiecewiseTrajectory& traj, const CorridorScenario& sc, double t) {
  return dot(sc.destination - traj.position_at(t), sc.axis);
}

}  // namespace sweep::detail

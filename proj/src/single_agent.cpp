#include "sweep/single_agent.hpp"

#include <cmath>

#include "sweep/errors.hpp"
#include "sweep/optimizer.hpp"
#include "sweep/oracle.hpp"

namespace sweep::single_agent {
namespace {

constexpr int kEtaSamples = 201;

double chord_length(const SingleScenario& sc) {
  return distance(sc.destination, sc.start);
}

std::vector<EtaSample> zero_eta(double horizon) {
  std::vector<EtaSample> out;
  out.reserve(kEtaSamples);
  for (int i = 0; i < kEtaSamples; ++i) {
    out.push_back({horizon * i / double(kEtaSamples - 1), 0.0});
  }
  return out;
}

}  // namespace

std::optional<SingleContactGeometry> contact_geometry(const SingleScenario& sc) {
  const double D = chord_length(sc);
  if (D == 0.0) return std::nullopt;  // already at the destination

  const double inflated = sc.inflated_radius();
  const auto mu = segment_circle_first_hit(sc.start, sc.destination, sc.obstacle_center, inflated);
  if (!mu) return std::nullopt;

  SingleContactGeometry g;
  g.mu = *mu;
  g.pre_contact_distance = g.mu * D;
  g.contact_point = sc.start + g.mu * (sc.destination - sc.start);

  // Departure point: the inflated circle meets the circle of diameter
  // obstacle--destination (tangency condition eta(t_l) = 0); of the two
  // intersections take the one closer to the contact point, breaking the
  // symmetric tie counterclockwise.
  const Vec2 mid = 0.5 * (sc.obstacle_center + sc.destination);
  const double thales_radius = 0.5 * distance(sc.destination, sc.obstacle_center);
  const std::vector<Vec2> candidates =
      circle_circle_intersections(sc.obstacle_center, inflated, mid, thales_radius);
  if (candidates.empty()) {
    throw ModelError(Fault::DestinationInsideObstacle, "no tangential departure point");
  }
  Vec2 leave = candidates.front();
  if (candidates.size() == 2) {
    const double d0 = distance(candidates[0], g.contact_point);
    const double d1 = distance(candidates[1], g.contact_point);
    const double scale = std::max(1.0, D);
    if (std::abs(d0 - d1) <= 1e-9 * scale) {
      const Vec2 r = g.contact_point - sc.obstacle_center;
      leave = cross(r, candidates[0] - sc.obstacle_center) >= 0.0 ? candidates[0] : candidates[1];
    } else {
      leave = (d0 <= d1) ? candidates[0] : candidates[1];
    }
  }
  g.leave_point = leave;
  g.departure_angle_deg =
      angle_between_deg(g.contact_point - sc.obstacle_center, g.leave_point - sc.obstacle_center);
  const double side =
      cross(g.contact_point - sc.obstacle_center, g.leave_point - sc.obstacle_center);
  g.orientation = (side < 0.0) ? -1 : +1;
  return g;
}

double arc_length(const SingleScenario& sc, const SingleContactGeometry& geom) {
  return kPi * geom.departure_angle_deg * sc.inflated_radius() / 180.0;
}

SingleSchedule contact_times(const SingleScenario& sc, const SingleContactGeometry& geom,
                             double a) {
  if (!(a > 0.0)) throw ModelError(Fault::NonPositiveControl, "control must be positive");
  SingleSchedule sched;
  sched.contact_time = geom.pre_contact_distance / (sc.nominal_speed * a);
  sched.leave_time = *sched.contact_time + arc_length(sc, geom) / a;
  return sched;
}

double control_lower_bound(const SingleScenario& sc, const SingleContactGeometry& geom) {
  return (geom.pre_contact_distance / sc.nominal_speed + arc_length(sc, geom)) / sc.horizon;
}

CostValue cost(const SingleScenario& sc, const std::optional<SingleContactGeometry>& geom,
               double a) {
  if (a < 0.0) throw ModelError(Fault::NonPositiveControl, "control must be nonnegative");
  const double D = chord_length(sc);
  const double s = sc.nominal_speed;
  const double T = sc.horizon;
  const double energy = sc.tau * T / 2.0 * a * a;

  if (!geom || s * a * T <= geom->pre_contact_distance + 1e-12 * std::max(1.0, D)) {
    const double miss = D - s * a * T;  // signed: overshoot counts squared
    return {0.5 * miss * miss + energy, false};
  }
  if (a >= control_lower_bound(sc, *geom) - 1e-12) {
    const double arc = arc_length(sc, *geom);
    const double leave_dist = distance(geom->leave_point, sc.destination);
    const double miss = leave_dist - (T * a - arc - geom->pre_contact_distance / s) * s;
    return {0.5 * miss * miss + energy, false};
  }
  // Mid-arc regime: outside the closed forms, integrate it.
  oracle::SimConfig cfg;
  cfg.step = T / 4000.0;
  const auto trace = oracle::simulate(oracle::SimScene::from(sc), {a}, cfg);
  return {oracle::simulated_cost(trace, oracle::SimScene::from(sc), {a}), true};
}

PiecewiseTrajectory free_trajectory(const SingleScenario& sc, double a) {
  if (a < 0.0) throw ModelError(Fault::NonPositiveControl, "control must be nonnegative");
  PiecewiseTrajectory path;
  Vec2 vel{0.0, 0.0};
  if (chord_length(sc) > 0.0 && a > 0.0) {
    vel = sc.nominal_speed * a * unit_direction(sc.destination, sc.start);
  }
  path.add(LineSegment{0.0, sc.horizon, sc.start, vel});
  return path;
}

PiecewiseTrajectory trajectory(const SingleScenario& sc, const SingleContactGeometry& geom,
                               double a) {
  const SingleSchedule sched = contact_times(sc, geom, a);
  const double tf = *sched.contact_time;
  const double tl = *sched.leave_time;
  if (tl > sc.horizon + 1e-9) {
    throw ModelError(Fault::ArcExceedsHorizon, "arc not finished by the horizon");
  }
  const double inflated = sc.inflated_radius();
  PiecewiseTrajectory path;
  path.add(LineSegment{0.0, tf, sc.start,
                       sc.nominal_speed * a * unit_direction(sc.destination, sc.start)});
  const Vec2 r0 = geom.contact_point - sc.obstacle_center;
  path.add(ArcSegment{tf, tl, sc.obstacle_center, inflated, std::atan2(r0.y, r0.x),
                      geom.orientation * a / inflated});
  path.add(LineSegment{tl, sc.horizon, geom.leave_point,
                       sc.nominal_speed * a * unit_direction(sc.destination, geom.leave_point)});
  return path;
}

double eta_at(const SingleScenario& sc, const SingleContactGeometry& geom, double a, double t) {
  const SingleSchedule sched = contact_times(sc, geom, a);
  if (t < *sched.contact_time || t > *sched.leave_time) return 0.0;
  const double swept = rad_to_deg((t - *sched.contact_time) * a / sc.inflated_radius());
  const Vec2 x = rotate_about(geom.contact_point, sc.obstacle_center, swept, geom.orientation);
  const double push = sc.nominal_speed * a *
                      dot(unit_direction(x, sc.destination), unit_direction(x, sc.obstacle_center));
  return std::max(0.0, push);
}

SolveReport solve(const SingleScenario& sc) {
  const double D = chord_length(sc);
  const double s = sc.nominal_speed;
  const double T = sc.horizon;
  const double tau = sc.tau;
  const auto geom = contact_geometry(sc);

  // Straight-line branch: J = 1/2 (D - s T a)^2 + tau T/2 a^2.
  optimizer::Quadratic1D straight;
  straight.c2 = 0.5 * s * s * T * T + 0.5 * tau * T;
  straight.c1 = -D * s * T;
  straight.c0 = 0.5 * D * D;
  straight.lo = 0.0;
  if (geom && s > 0.0) straight.hi = geom->pre_contact_distance / (s * T);
  if (straight.c2 <= 0.0) {
    // s == 0 and tau == 0: nothing to optimize, stay put.
    SolveReport report;
    report.controls = {0.0};
    report.cost = 0.5 * D * D;
    report.schedule = SingleSchedule{};
    report.trajectories = {free_trajectory(sc, 0.0)};
    report.eta = {{"eta", zero_eta(T)}};
    return report;
  }
  auto [a_line, j_line] = argmin_quadratic(straight);

  SolveReport report;
  if (geom) {
    // Swing branch: J = 1/2 (c + b s - T s a)^2 + tau T/2 a^2 on [a_min, inf).
    const double arc = arc_length(sc, *geom);
    const double leave_dist = distance(geom->leave_point, sc.destination);
    const double reach = leave_dist + (arc + geom->pre_contact_distance / s) * s;
    optimizer::Quadratic1D swing;
    swing.c2 = 0.5 * s * s * T * T + 0.5 * tau * T;
    swing.c1 = -reach * s * T;
    swing.c0 = 0.5 * reach * reach;
    swing.lo = control_lower_bound(sc, *geom);
    auto [a_swing, j_swing] = argmin_quadratic(swing);

    if (j_swing < j_line) {
      report.controls = {a_swing};
      report.cost = j_swing;
      report.schedule = contact_times(sc, *geom, a_swing);
      report.trajectories = {trajectory(sc, *geom, a_swing)};
      std::vector<EtaSample> samples;
      samples.reserve(kEtaSamples);
      for (int i = 0; i < kEtaSamples; ++i) {
        const double t = T * i / double(kEtaSamples - 1);
        samples.push_back({t, eta_at(sc, *geom, a_swing, t)});
      }
      report.eta = {{"eta", std::move(samples)}};
      return report;
    }
  }
  report.controls = {a_line};
  report.cost = j_line;
  report.schedule = SingleSchedule{};
  report.trajectories = {free_trajectory(sc, a_line)};
  report.eta = {{"eta", zero_eta(T)}};
  return report;
}

}  // namespace sweep::single_agent

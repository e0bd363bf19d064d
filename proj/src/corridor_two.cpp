#include "sweep/corridor_two.hpp"

#include <algorithm>
#include <cmath>

#include "corridor_detail.hpp"
#include "sweep/errors.hpp"

namespace sweep::corridor_two {
namespace {

constexpr int kEtaSamples = 201;

double scale_of(const CorridorScenario& sc) {
  return std::max(1.0, sc.rho0[0]);
}

void require_two(const CorridorScenario& sc) {
  if (sc.agent_count() != 2) {
    throw ModelError(Fault::BadAgentCount, "two-agent solver needs exactly 2 agents");
  }
}

struct FreeOptimum {
  double a1 = 0.0;
  double a2 = 0.0;
  double cost = 0.0;
};

/// Minimizes the free-branch quadratic under T(a1 s1 - a2 s2) <= 2 Lambda,
/// a >= 0. Separable unless the gap constraint is active.
FreeOptimum free_branch_optimum(const CorridorScenario& sc) {
  const double T = sc.horizon;
  const double tau = sc.tau;
  const double s1 = sc.speeds[0], s2 = sc.speeds[1];
  const double r1 = sc.rho0[0], r2 = sc.rho0[1];
  const double cap = 2.0 * lambda12(sc);

  auto eval = [&](double a1, double a2) {
    const double m1 = r1 - T * s1 * a1;
    const double m2 = r2 - T * s2 * a2;
    return 0.5 * (m1 * m1 + m2 * m2) + tau * T / 2.0 * (a1 * a1 + a2 * a2);
  };

  double a1 = s1 * r1 / (T * s1 * s1 + tau);
  double a2 = s2 * r2 / (T * s2 * s2 + tau);
  if (T * (a1 * s1 - a2 * s2) > cap + 1e-12 * scale_of(sc)) {
    // Project onto the active gap line via the stationarity conditions.
    const double c1 = T * s1 * s1 / (T * s1 * s1 + tau);
    const double c2 = T * s2 * s2 / (T * s2 * s2 + tau);
    const double lam = (c1 * r1 - c2 * r2 - cap) / (c1 + c2);
    a1 = s1 * (r1 - lam) / (T * s1 * s1 + tau);
    a2 = s2 * (r2 + lam) / (T * s2 * s2 + tau);
    if (a1 < 0.0) {
      a1 = 0.0;
      a2 = s2 * r2 / (T * s2 * s2 + tau);  // gap constraint inactive at a1 = 0
    }
  }
  a1 = std::max(a1, 0.0);
  a2 = std::max(a2, 0.0);
  return {a1, a2, eval(a1, a2)};
}

}  // namespace

double lambda12(const CorridorScenario& sc) {
  require_two(sc);
  const double raw = 0.5 * (sc.rho0[0] - sc.rho0[1] - sc.pair_radius(0, 1));
  // Initially-touching configurations can carry a tiny negative residue.
  return (std::abs(raw) <= 1e-9 * scale_of(sc)) ? 0.0 : raw;
}

double eta12_level(const CorridorScenario& sc, double a2) {
  require_two(sc);
  if (a2 < 0.0) throw ModelError(Fault::NonPositiveControl, "control must be nonnegative");
  const double s1 = sc.speeds[0], s2 = sc.speeds[1];
  return a2 * (s1 * s1 - s2 * s2) / (2.0 * s2);
}

TwoAgentSchedule contact_time_two(const CorridorScenario& sc, double a2) {
  const double lam = lambda12(sc);
  if (lam == 0.0) return {0.0};
  const double level = eta12_level(sc, a2);
  if (level <= 0.0) return {};
  const double t = lam / level;
  if (t > sc.horizon) return {};
  return {t};
}

std::optional<double> pair_contact_time(const CorridorScenario& sc, double a1, double a2) {
  require_two(sc);
  const double closing = a1 * sc.speeds[0] - a2 * sc.speeds[1];
  const double lam = lambda12(sc);
  if (closing <= 0.0) {
    return lam == 0.0 && closing == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  }
  const double t = 2.0 * lam / closing;
  if (t > sc.horizon) return std::nullopt;
  return t;
}

double contact_bound(const CorridorScenario& sc) {
  require_two(sc);
  const double s1 = sc.speeds[0], s2 = sc.speeds[1];
  return 2.0 * s2 * lambda12(sc) / (sc.horizon * (s1 * s1 - s2 * s2));
}

double cost_contact_branch(const CorridorScenario& sc, double a2) {
  require_two(sc);
  const double bound = contact_bound(sc);
  if (a2 < bound - 1e-12 * std::max(1.0, bound)) {
    throw ModelError(Fault::BelowContactBound, "contact would happen after the horizon");
  }
  const double T = sc.horizon;
  const double s1 = sc.speeds[0], s2 = sc.speeds[1];
  const double lam = lambda12(sc);
  const double common = a2 * (s1 * s1 + s2 * s2) / (2.0 * s2);
  const double m1 = sc.rho0[0] - lam - T * common;
  const double m2 = sc.rho0[1] + lam - T * common;
  const double ratio = s1 / s2;
  return 0.5 * (m1 * m1 + m2 * m2) + sc.tau * T / 2.0 * (1.0 + ratio * ratio) * a2 * a2;
}

double cost_free_branch(const CorridorScenario& sc, double a1, double a2) {
  require_two(sc);
  const double T = sc.horizon;
  if (T * (a1 * sc.speeds[0] - a2 * sc.speeds[1]) >
      2.0 * lambda12(sc) + 1e-12 * scale_of(sc)) {
    throw ModelError(Fault::ContactWouldOccur, "controls violate the no-contact condition");
  }
  const double m1 = sc.rho0[0] - T * sc.speeds[0] * a1;
  const double m2 = sc.rho0[1] - T * sc.speeds[1] * a2;
  return 0.5 * (m1 * m1 + m2 * m2) + sc.tau * T / 2.0 * (a1 * a1 + a2 * a2);
}

std::vector<PiecewiseTrajectory> trajectories_two(const CorridorScenario& sc,
                                                  const std::vector<double>& a,
                                                  const TwoAgentSchedule& sched) {
  require_two(sc);
  const double T = sc.horizon;
  const double v1 = a[0] * sc.speeds[0];
  const double v2 = a[1] * sc.speeds[1];
  std::vector<PiecewiseTrajectory> out;
  if (!sched.pair_time) {
    out.push_back(detail::axis_trajectory(sc, sc.rho0[0], {{v1, T}}));
    out.push_back(detail::axis_trajectory(sc, sc.rho0[1], {{v2, T}}));
    return out;
  }
  const double tc = *sched.pair_time;
  const double common = 0.5 * (v1 + v2);
  out.push_back(detail::axis_trajectory(sc, sc.rho0[0], {{v1, tc}, {common, T}}));
  out.push_back(detail::axis_trajectory(sc, sc.rho0[1], {{v2, tc}, {common, T}}));
  return out;
}

SolveReport solve_two(const CorridorScenario& sc) {
  require_two(sc);
  const double T = sc.horizon;
  const double tau = sc.tau;
  const double s1 = sc.speeds[0], s2 = sc.speeds[1];

  // Contact branch: quadratic in a2 on [contact_bound, inf).
  const double K = (s1 * s1 + s2 * s2) / (2.0 * s2);
  const double denom = 2.0 * T * T * K * K + tau * T * (s1 * s1 + s2 * s2) / (s2 * s2);
  double a2c = T * K * (sc.rho0[0] + sc.rho0[1]) / denom;
  a2c = std::max(a2c, contact_bound(sc));
  const double j_contact = cost_contact_branch(sc, a2c);

  const FreeOptimum free = free_branch_optimum(sc);

  SolveReport report;
  if (j_contact <= free.cost) {
    const double a1c = s1 / s2 * a2c;
    report.controls = {a1c, a2c};
    report.cost = j_contact;
    const TwoAgentSchedule sched = contact_time_two(sc, a2c);
    report.schedule = sched;
    report.trajectories = trajectories_two(sc, report.controls, sched);
    StepFunction eta;
    if (sched.pair_time) {
      eta.breaks = {*sched.pair_time};
      eta.levels = {0.0, eta12_level(sc, a2c)};
    } else {
      eta.levels = {0.0};
    }
    report.eta = {{"eta12", sample_step_function(eta, 0.0, T, kEtaSamples)}};
  } else {
    report.controls = {free.a1, free.a2};
    report.cost = free.cost;
    const TwoAgentSchedule sched{pair_contact_time(sc, free.a1, free.a2)};
    report.schedule = sched;
    report.trajectories = trajectories_two(sc, report.controls, sched);
    StepFunction eta;
    eta.levels = {0.0};  // touching without pushing carries no multiplier
    report.eta = {{"eta12", sample_step_function(eta, 0.0, T, kEtaSamples)}};
  }
  return report;
}

}  // namespace sweep::corridor_two

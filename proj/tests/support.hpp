#pragma once

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sweep/corridor_three.hpp"
#include "sweep/corridor_two.hpp"
#include "sweep/scenario.hpp"
#include "sweep/single_agent.hpp"
#include "sweep/verify.hpp"

namespace testsupport {

inline std::string read_file(const std::string& name) {
  std::ifstream in(std::string(SCENARIO_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline sweep::SingleScenario load_single(const std::string& name, double tau = 1.0) {
  auto sc = sweep::parse_single(read_file(name));
  sc.tau = tau;
  return sc;
}

inline sweep::CorridorScenario load_corridor(const std::string& name, double tau = 1.0) {
  auto sc = sweep::parse_corridor(read_file(name));
  sc.tau = tau;
  return sc;
}

inline bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1e-12, std::abs(want));
}

// Reference results (tau, a, t_f, t_l, J) for the single-agent fixtures.
struct SingleRow {
  double tau, a, tf, tl, J;
};

inline const std::vector<SingleRow>& table_ex31() {
  static const std::vector<SingleRow> t = {
      {1.0, 2.675632, 0.840923, 4.929998, 21.532945},
      {2.0, 2.668700, 0.843107, 4.942803, 42.954320},
      {3.0, 2.661804, 0.845291, 4.955609, 64.264990},
      {4.0, 2.654944, 0.847476, 4.968414, 85.465812},
      {5.0, 2.648119, 0.849660, 4.981219, 106.557632},
      {6.0, 2.641329, 0.851844, 4.994024, 127.541289},
      {7.0, 2.634573, 0.854028, 5.006829, 148.417612},
      {8.0, 2.627853, 0.856212, 5.019635, 169.187424},
      {9.0, 2.621166, 0.858397, 5.032440, 189.851537},
      {10.0, 2.614513, 0.860581, 5.045245, 210.410756}};
  return t;
}

inline const std::vector<SingleRow>& table_ex32() {
  static const std::vector<SingleRow> t = {
      {1.0, 2.771724, 1.018491, 5.275958, 23.107381},
      {2.0, 2.764543, 1.021136, 5.289662, 46.095035},
      {3.0, 2.757400, 1.023782, 5.303366, 68.963889},
      {4.0, 2.750293, 1.026427, 5.317069, 91.714863},
      {5.0, 2.743223, 1.029072, 5.330773, 114.348866},
      {6.0, 2.736189, 1.031718, 5.344477, 136.866796},
      {7.0, 2.729191, 1.034363, 5.358181, 159.269545},
      {8.0, 2.722229, 1.037009, 5.371885, 181.557995},
      {9.0, 2.715302, 1.039654, 5.385588, 203.733017},
      {10.0, 2.708411, 1.042300, 5.399292, 225.795476}};
  return t;
}

struct Ex33Row {
  double tau, a, J;
};

inline const std::vector<Ex33Row>& table_ex33() {
  static const std::vector<Ex33Row> t = {
      {1.0, 0.9974025924461699, 2.992207792207821},
      {2.0, 0.9948186479096565, 5.968911917098474},
      {3.0, 0.992248057110637, 8.930232558139565},
      {4.0, 0.9896907167795382, 11.876288659793842},
      {5.0, 0.9871465247276625, 14.807197943444757},
      {6.0, 0.984615379889146, 17.72307692307695},
      {7.0, 0.9820971819338324, 20.624040920716144},
      {8.0, 0.9795918320755072, 23.510204081632683},
      {9.0, 0.9770992320887493, 26.381679389313003},
      {10.0, 0.9746192847468523, 29.23857868020307}};
  return t;
}

struct TwoRow {
  double tau, a1, a2, tf12, J;
};

inline const std::vector<TwoRow>& table_ex51() {
  static const std::vector<TwoRow> t = {
      {1.0, 1.195021, 0.597510, 2.510417, 14.377593},
      {2.0, 1.190083, 0.595041, 2.520833, 19.710744},
      {3.0, 1.185185, 0.592593, 2.531250, 25.000000},
      {4.0, 1.180328, 0.590164, 2.541667, 30.245902},
      {5.0, 1.175510, 0.587755, 2.552083, 35.448980},
      {6.0, 1.170732, 0.585366, 2.562500, 40.609756},
      {7.0, 1.165992, 0.582996, 2.572917, 45.728745},
      {8.0, 1.161290, 0.580645, 2.583333, 50.806452},
      {9.0, 1.156626, 0.578313, 2.593750, 55.843373},
      {10.0, 1.152000, 0.576000, 2.604167, 60.840000}};
  return t;
}

inline const std::vector<TwoRow>& table_ex52() {
  static const std::vector<TwoRow> t = {
      {1.0, 1.166355, 0.728972, 2.170803, 21.685981},
      {2.0, 1.164179, 0.727612, 2.174861, 27.350746},
      {3.0, 1.162011, 0.726257, 2.178918, 32.994413},
      {4.0, 1.159851, 0.724907, 2.182976, 38.617100},
      {5.0, 1.157699, 0.723562, 2.187033, 44.218924},
      {6.0, 1.155556, 0.722222, 2.191091, 49.800000},
      {7.0, 1.153420, 0.720887, 2.195149, 55.360444},
      {8.0, 1.151291, 0.719557, 2.199206, 60.900369},
      {9.0, 1.149171, 0.718232, 2.203264, 66.419890},
      {10.0, 1.147059, 0.716912, 2.207321, 71.919118}};
  return t;
}

struct ThreeRow {
  double tau, a1, a2, a3, tf12, tf23, J;
};

inline const std::vector<ThreeRow>& table_ex53() {
  static const std::vector<ThreeRow> t = {
      {1.0, 1.306309, 0.653154, 0.272148, 2.296547, 2.796989, 60.465},
      {2.0, 1.291812, 0.645906, 0.269128, 2.322319, 2.828377, 84.660},
      {3.0, 1.277315, 0.638658, 0.266107, 2.348676, 2.860477, 108.585},
      {4.0, 1.262819, 0.631409, 0.263087, 2.375638, 2.893314, 132.240},
      {5.0, 1.248322, 0.624161, 0.260067, 2.403226, 2.926914, 155.625},
      {6.0, 1.233825, 0.616913, 0.257047, 2.431462, 2.961303, 178.740},
      {7.0, 1.219329, 0.609664, 0.254027, 2.460370, 2.996510, 201.585},
      {8.0, 1.204832, 0.602416, 0.251007, 2.489973, 3.032564, 224.160},
      {9.0, 1.190336, 0.595168, 0.247987, 2.520298, 3.069497, 246.465},
      {10.0, 1.175839, 0.587919, 0.244966, 2.551370, 3.107340, 268.500}};
  return t;
}

inline const std::vector<ThreeRow>& table_ex54() {
  static const std::vector<ThreeRow> t = {
      {1.0, 1.322654, 0.423249, 0.264531, 2.750828, 1.527018, 87.065833},
      {2.0, 1.314776, 0.420728, 0.262955, 2.767311, 1.536168, 109.663333},
      {3.0, 1.306898, 0.418207, 0.261380, 2.783992, 1.545428, 132.125833},
      {4.0, 1.299020, 0.415686, 0.259804, 2.800877, 1.554801, 154.453333},
      {5.0, 1.291141, 0.413165, 0.258228, 2.817967, 1.564288, 176.645833},
      {6.0, 1.283263, 0.410644, 0.256653, 2.835267, 1.573891, 198.703333},
      {7.0, 1.275385, 0.408123, 0.255077, 2.852780, 1.583613, 220.625833},
      {8.0, 1.267507, 0.405602, 0.253501, 2.870512, 1.593456, 242.413333},
      {9.0, 1.259629, 0.403081, 0.251926, 2.888465, 1.603422, 264.065833},
      {10.0, 1.251751, 0.400560, 0.250350, 2.906644, 1.613513, 285.583333}};
  return t;
}

// ---- Randomized feasible scenarios -----------------------------------------

inline sweep::SingleScenario random_single(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    sweep::SingleScenario sc;
    sc.horizon = 4.0 + 4.0 * u01(rng);
    sc.tau = 0.1 + 9.9 * u01(rng);
    sc.agent_radius = 1.0 + 3.0 * u01(rng);
    sc.obstacle_radius = 1.0 + 3.0 * u01(rng);
    const double dist = 20.0 + 40.0 * u01(rng);
    const double ang = 2.0 * sweep::kPi * u01(rng);
    sc.destination = {10.0 * (u01(rng) - 0.5), 10.0 * (u01(rng) - 0.5)};
    const sweep::Vec2 dir{std::cos(ang), std::sin(ang)};
    sc.start = sc.destination + dist * dir;
    // Obstacle near the chord so contact actually happens in most draws.
    const double along = 0.15 + 0.7 * u01(rng);
    const double inflated = sc.agent_radius + sc.obstacle_radius;
    const double off = (2.6 * u01(rng) - 1.3) * inflated;
    sc.obstacle_center =
        sc.destination + (dist * along) * dir + off * sweep::perp(dir);
    if (sweep::distance(sc.start, sc.obstacle_center) < inflated) continue;
    if (sweep::distance(sc.destination, sc.obstacle_center) <= inflated + 0.05) continue;
    sc.nominal_speed = dist / sc.horizon;
    sweep::validate(sc);
    return sc;
  }
}

inline sweep::CorridorScenario random_corridor(std::mt19937& rng, int agents) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  sweep::CorridorScenario sc;
  sc.horizon = 4.0 + 4.0 * u01(rng);
  sc.tau = 0.1 + 9.9 * u01(rng);
  sc.destination = {10.0 * (u01(rng) - 0.5), 10.0 * (u01(rng) - 0.5)};
  const double ang = 2.0 * sweep::kPi * u01(rng);
  sc.axis = {std::cos(ang), std::sin(ang)};

  const bool touching = u01(rng) < 0.1;  // exercise the initially-in-contact case
  std::vector<double> radius(agents), rho(agents);
  for (int i = 0; i < agents; ++i) radius[i] = 1.0 + 3.0 * u01(rng);
  rho[agents - 1] = 6.0 + 14.0 * u01(rng);
  for (int i = agents - 2; i >= 0; --i) {
    const double slack = touching ? 0.0 : 0.5 + 24.5 * u01(rng);
    rho[i] = rho[i + 1] + radius[i] + radius[i + 1] + slack;
  }
  for (int i = 0; i < agents; ++i) {
    sc.agents.push_back({sc.destination - rho[i] * sc.axis, radius[i]});
    sc.rho0.push_back(rho[i]);
    sc.speeds.push_back(rho[i] / sc.horizon);
  }
  sweep::validate(sc);
  return sc;
}

// ---- Property suite (acceptance criterion-style invariants) ----------------

struct PropertyFailure {
  std::string what;
  std::string scenario;
};

/// Runs the invariant battery on one solved scenario; returns empty on
/// success.
inline std::vector<std::string> check_solution_properties(const sweep::Scenario& sc,
                                                          const sweep::SolveReport& report) {
  std::vector<std::string> failures;
  const auto basic = sweep::verify::check_invariants(sc, report);
  failures.insert(failures.end(), basic.failures.begin(), basic.failures.end());

  // Exact contact gaps at and after the contact events.
  if (std::holds_alternative<sweep::CorridorScenario>(sc)) {
    const auto& c = std::get<sweep::CorridorScenario>(sc);
    const double scale = std::max(1.0, c.rho0[0]);
    auto rho = [&](int i, double t) {
      return dot(c.destination - report.trajectories[i].position_at(t), c.axis);
    };
    auto check_pair_after = [&](int i, double t_from) {
      const double want = c.pair_radius(i, i + 1);
      for (int k = 0; k <= 64; ++k) {
        const double t = t_from + (c.horizon - t_from) * k / 64.0;
        if (std::abs(rho(i, t) - rho(i + 1, t) - want) > 1e-9 * scale) {
          failures.push_back("contact gap not exact after contact");
          return;
        }
      }
    };
    if (c.agent_count() == 2) {
      const auto& sched = std::get<sweep::TwoAgentSchedule>(report.schedule);
      bool pushing = false;
      for (const auto& s : report.eta[0].samples) pushing |= s.value > 0.0;
      if (sched.pair_time && pushing) check_pair_after(0, *sched.pair_time);
    } else {
      const auto& sched = std::get<sweep::ThreeAgentSchedule>(report.schedule);
      if (!report.extended_branch) {
        if (sched.t12) check_pair_after(0, *sched.t12);
        if (sched.t23) check_pair_after(1, *sched.t23);
      } else {
        bool pushing12 = false, pushing23 = false;
        for (const auto& s : report.eta[0].samples) pushing12 |= s.value > 0.0;
        for (const auto& s : report.eta[1].samples) pushing23 |= s.value > 0.0;
        if (sched.t12 && pushing12) check_pair_after(0, *sched.t12);
        if (sched.t23 && pushing23) check_pair_after(1, *sched.t23);
      }
    }
  }

  // Solver optimum agrees with the brute-force grid.
  const double grid_best = sweep::verify::grid_oracle_best_cost(sc);
  if (std::abs(report.cost - grid_best) > 1e-3 * std::max(1.0, std::abs(grid_best))) {
    failures.push_back("grid oracle disagrees with the solver optimum (J " +
                       std::to_string(report.cost) + " vs " + std::to_string(grid_best) + ")");
  }
  return failures;
}

inline std::string describe(const sweep::Scenario& sc) {
  return std::visit([](const auto& s) { return sweep::serialize(s); }, sc);
}

}  // namespace testsupport

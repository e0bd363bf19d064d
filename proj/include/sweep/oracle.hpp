#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "sweep/scenario.hpp"

namespace sweep::oracle {

/// Catching-up discretization parameters.
struct SimConfig {
  double step = 1e-3;
  int projection_max_iters = 50;
  double projection_tol = 1e-10;
  int sample_stride = 1;
};

struct Constraint {
  enum class Kind { AgentObstacle, AgentPair };
  Kind kind = Kind::AgentObstacle;
  int a = 0;  // agent index
  int b = 0;  // obstacle index or second agent index
};

/// Normalized scene the integrator runs on: n agents, m obstacles, one common
/// destination. Corridor scenarios keep the desired-velocity direction frozen
/// along the corridor axis (the model the corridor solvers integrate); single
/// scenarios aim the desired velocity at the destination pointwise.
struct SimScene {
  double horizon = 0.0;
  double tau = 0.0;
  Vec2 destination;
  std::vector<Vec2> start;
  std::vector<double> agent_radius;
  std::vector<double> speed;
  std::vector<Vec2> obstacle_center;
  std::vector<double> obstacle_radius;
  bool frozen_axis = false;
  Vec2 axis{1.0, 0.0};
  std::vector<Constraint> constraints;

  int agent_count() const { return static_cast<int>(start.size()); }
  double length_scale() const;

  static SimScene from(const SingleScenario& sc);
  static SimScene from(const CorridorScenario& sc);
  static SimScene from(const Scenario& sc);
};

/// Discrete trace: one entry per recorded step. `active` and `eta_hat` are
/// indexed by scene constraint order.
struct SimTrace {
  std::vector<double> times;
  std::vector<std::vector<Vec2>> positions;
  std::vector<std::vector<std::uint8_t>> active;
  std::vector<std::vector<double>> eta_hat;
  double running_cost = 0.0;
};

/// Stacked per-agent desired velocities; an agent standing exactly on the
/// destination gets zero (limit convention).
std::vector<Vec2> desired_velocity(const std::vector<Vec2>& config,
                                   const std::vector<double>& controls, const SimScene& scene);

/// Cyclic constraint correction (obstacles radially, agent pairs by symmetric
/// split) until every signed distance is above -tolerance. `corrections`, when
/// provided, accumulates per-constraint displacement along the gradient.
std::vector<Vec2> project_admissible(std::vector<Vec2> config, const SimScene& scene,
                                     const SimConfig& cfg = {},
                                     std::vector<double>* corrections = nullptr);

/// One catching-up step of length h; `eta_out`, when provided, receives the
/// recovered multipliers for this step.
std::vector<Vec2> catching_up_step(const std::vector<Vec2>& config,
                                   const std::vector<double>& controls, const SimScene& scene,
                                   double h, const SimConfig& cfg = {},
                                   std::vector<double>* eta_out = nullptr);

SimTrace simulate(const SimScene& scene, const std::vector<double>& controls,
                  const SimConfig& cfg);

/// Bolza cost of a completed trace: terminal squared distances plus exact
/// control energy (controls are constant in time).
double simulated_cost(const SimTrace& trace, const SimScene& scene,
                      const std::vector<double>& controls);

/// CSV export: t, x1, y1, ..., xn, yn, active flags (semicolon-joined),
/// recovered multipliers.
void write_trace_csv(const SimTrace& trace, const SimScene& scene, std::ostream& out);

struct GridResult {
  std::vector<double> controls;
  double value = 0.0;
};

/// Multi-resolution grid minimizer: per level, 101 points per dimension, then
/// a x10 zoom around the incumbent (clamped to the original box). Ties break
/// toward smaller controls.
GridResult grid_refine_search(const std::function<double(const std::vector<double>&)>& objective,
                              std::vector<double> lo, std::vector<double> hi, int levels);

}  // namespace sweep::oracle

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sweep/geometry.hpp"

namespace sweep {

/// Single agent vs. one static obstacle. Validated on construction; nominal
/// speed is derived so the uncontrolled agent reaches the destination at T.
struct SingleScenario {
  double horizon = 0.0;      // T
  Vec2 start;                // x0
  Vec2 destination;          // x_des
  Vec2 obstacle_center;      // x_obs
  double agent_radius = 0.0;     // L
  double obstacle_radius = 0.0;  // r
  double tau = 0.0;
  double nominal_speed = 0.0;  // s = ||x_des - x0|| / T

  double inflated_radius() const { return agent_radius + obstacle_radius; }
};

struct CorridorAgent {
  Vec2 start;
  double radius = 0.0;
};

/// Two or three agents collinear with a common destination. Agents are
/// re-indexed at parse time so index 0 is farthest from the destination.
/// rho0 are signed distances along the axis; they may go negative over time
/// (overshoot past the destination is representable).
struct CorridorScenario {
  double horizon = 0.0;
  Vec2 destination;
  double tau = 0.0;
  std::vector<CorridorAgent> agents;
  Vec2 axis;                   // unit vector pointing from agents toward destination
  std::vector<double> rho0;    // rho_i(0) = <destination - x_i0, axis>, descending
  std::vector<double> speeds;  // s_i = rho_i(0) / T

  int agent_count() const { return static_cast<int>(agents.size()); }
  /// Plane position for a given axis coordinate.
  Vec2 position_for_rho(double rho) const { return destination - rho * axis; }
  double pair_radius(int i, int j) const { return agents[i].radius + agents[j].radius; }
};

using Scenario = std::variant<SingleScenario, CorridorScenario>;

SingleScenario parse_single(std::string_view text);
CorridorScenario parse_corridor(std::string_view text);
/// Dispatches on the document's "kind" key.
Scenario parse_scenario(std::string_view text);

std::string serialize(const SingleScenario& sc);
std::string serialize(const CorridorScenario& sc);

/// Axis reduction: unit vector e from the points toward the destination plus
/// signed coordinates rho_i = <destination - p_i, e>. Throws NotCollinear when
/// the points do not lie on one line through the destination.
std::pair<Vec2, std::vector<double>> corridor_reduce(const std::vector<Vec2>& positions,
                                                     Vec2 destination);

/// Re-checks the construction invariants (used by parse and by tests that
/// build scenarios directly).
void validate(const SingleScenario& sc);
void validate(const CorridorScenario& sc);

}  // namespace sweep

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sweep/geometry.hpp"

namespace sweep {

/// x(t) = origin + (t - t_begin) * velocity on [t_begin, t_end].
struct LineSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  Vec2 origin;
  Vec2 velocity;
};

/// Circular motion about `center`: angle(t) = start_angle + (t - t_begin) *
/// angular_rate (radians, signed; positive = counterclockwise).
struct ArcSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  Vec2 center;
  double radius = 0.0;
  double start_angle = 0.0;
  double angular_rate = 0.0;
};

using TrajectorySegment = std::variant<LineSegment, ArcSegment>;

/// Time-indexed sequence of line and arc segments, continuous at the joints.
class PiecewiseTrajectory {
 public:
  void add(TrajectorySegment seg) { segments_.push_back(seg); }

  Vec2 position_at(double t) const;
  Vec2 velocity_at(double t) const;
  double t_begin() const;
  double t_end() const;
  const std::vector<TrajectorySegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

 private:
  const TrajectorySegment& segment_for(double t) const;
  std::vector<TrajectorySegment> segments_;
};

/// Right-continuous piecewise-constant function; levels.size() ==
/// breaks.size() + 1.
struct StepFunction {
  std::vector<double> breaks;
  std::vector<double> levels;

  double at(double t) const;
};

struct EtaSample {
  double t = 0.0;
  double value = 0.0;
};

struct EtaProfile {
  std::string label;
  std::vector<EtaSample> samples;
};

struct SingleSchedule {
  std::optional<double> contact_time;  // t_f
  std::optional<double> leave_time;    // t_l
};

struct TwoAgentSchedule {
  std::optional<double> pair_time;  // t_f12
};

enum class TripleCase { Pair12First, Pair23First, Simultaneous };

const char* triple_case_name(TripleCase c);

struct ThreeAgentSchedule {
  std::optional<double> t12;
  std::optional<double> t23;
  std::optional<double> t123;
  TripleCase order = TripleCase::Simultaneous;
};

using Schedule = std::variant<std::monostate, SingleSchedule, TwoAgentSchedule, ThreeAgentSchedule>;

/// Full solver output: optimal controls, optimal objective value, contact
/// schedule, per-agent trajectories, and sampled multiplier profiles.
struct SolveReport {
  std::vector<double> controls;
  double cost = 0.0;
  Schedule schedule;
  std::vector<PiecewiseTrajectory> trajectories;
  std::vector<EtaProfile> eta;
  /// True when the winner came from a branch outside the closed-form case
  /// analysis (corridor mixed/no-contact branches).
  bool extended_branch = false;
};

/// Uniform sampling helper used for eta profiles in reports.
std::vector<EtaSample> sample_step_function(const StepFunction& f, double t0, double t1, int count);

}  // namespace sweep

#include "sweep/trajectory.hpp"

#include <cmath>

#include "sweep/errors.hpp"

namespace sweep {
namespace {

double seg_begin(const TrajectorySegment& s) {
  return std::visit([](const auto& v) { return v.t_begin; }, s);
}

double seg_end(const TrajectorySegment& s) {
  return std::visit([](const auto& v) { return v.t_end; }, s);
}

}  // namespace

const char* triple_case_name(TripleCase c) {
  switch (c) {
    case TripleCase::Pair12First: return "Pair12First";
    case TripleCase::Pair23First: return "Pair23First";
    case TripleCase::Simultaneous: return "Simultaneous";
  }
  return "?";
}

const TrajectorySegment& PiecewiseTrajectory::segment_for(double t) const {
  if (segments_.empty()) {
    throw ModelError(Fault::BadArguments, "empty trajectory");
  }
  for (const auto& s : segments_) {
    if (t <= seg_end(s)) return s;
  }
  return segments_.back();
}

Vec2 PiecewiseTrajectory::position_at(double t) const {
  const TrajectorySegment& s = segment_for(t);
  return std::visit(
      [&](const auto& seg) -> Vec2 {
        using T = std::decay_t<decltype(seg)>;
        const double dt = std::clamp(t, seg.t_begin, seg.t_end) - seg.t_begin;
        if constexpr (std::is_same_v<T, LineSegment>) {
          return seg.origin + dt * seg.velocity;
        } else {
          const double ang = seg.start_angle + dt * seg.angular_rate;
          return seg.center + seg.radius * Vec2{std::cos(ang), std::sin(ang)};
        }
      },
      s);
}

Vec2 PiecewiseTrajectory::velocity_at(double t) const {
  const TrajectorySegment& s = segment_for(t);
  return std::visit(
      [&](const auto& seg) -> Vec2 {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSegment>) {
          return seg.velocity;
        } else {
          const double dt = std::clamp(t, seg.t_begin, seg.t_end) - seg.t_begin;
          const double ang = seg.start_angle + dt * seg.angular_rate;
          return seg.radius * seg.angular_rate * Vec2{-std::sin(ang), std::cos(ang)};
        }
      },
      s);
}

double PiecewiseTrajectory::t_begin() const {
  if (segments_.empty()) throw ModelError(Fault::BadArguments, "empty trajectory");
  return seg_begin(segments_.front());
}

double PiecewiseTrajectory::t_end() const {
  if (segments_.empty()) throw ModelError(Fault::BadArguments, "empty trajectory");
  return seg_end(segments_.back());
}

double StepFunction::at(double t) const {
  std::size_t i = 0;
  while (i < breaks.size() && t >= breaks[i]) ++i;
  return levels[i];
}

std::vector<EtaSample> sample_step_function(const StepFunction& f, double t0, double t1, int count) {
  std::vector<EtaSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (count - 1);
    out.push_back({t, f.at(t)});
  }
  return out;
}

}  // namespace sweep

#include "sweep/geometry.hpp"

#include <algorithm>

#include "sweep/errors.hpp"

namespace sweep {

const char* fault_name(Fault f) {
  switch (f) {
    case Fault::DegenerateDirection: return "DegenerateDirection";
    case Fault::InfiniteIntersections: return "InfiniteIntersections";
    case Fault::MalformedDocument: return "MalformedDocument";
    case Fault::MissingField: return "MissingField";
    case Fault::NonFinite: return "NonFinite";
    case Fault::InfeasibleStart: return "InfeasibleStart";
    case Fault::DestinationInsideObstacle: return "DestinationInsideObstacle";
    case Fault::NotCollinear: return "NotCollinear";
    case Fault::InitialOverlap: return "InitialOverlap";
    case Fault::BadAgentCount: return "BadAgentCount";
    case Fault::AgentPastDestination: return "AgentPastDestination";
    case Fault::NonPositiveControl: return "NonPositiveControl";
    case Fault::ArcExceedsHorizon: return "ArcExceedsHorizon";
    case Fault::BelowContactBound: return "BelowContactBound";
    case Fault::ContactWouldOccur: return "ContactWouldOccur";
    case Fault::EmptyInterval: return "EmptyInterval";
    case Fault::ProjectionStalled: return "ProjectionStalled";
    case Fault::BadArguments: return "BadArguments";
  }
  return "UnknownFault";
}

Vec2 unit_direction(Vec2 from, Vec2 to_subtract) {
  const Vec2 d = from - to_subtract;
  const double n = norm(d);
  if (n <= 0.0) {
    throw ModelError(Fault::DegenerateDirection, "coincident points");
  }
  return {d.x / n, d.y / n};
}

std::vector<Vec2> circle_circle_intersections(Vec2 c1, double r1, Vec2 c2, double r2) {
  if (r1 <= 0.0 || r2 <= 0.0) {
    throw ModelError(Fault::BadArguments, "circle radius must be positive");
  }
  const double d = distance(c1, c2);
  const double scale = std::max({r1, r2, d});
  const double tol = 1e-9 * scale * scale;
  if (d <= 1e-15 * scale) {
    if (std::abs(r1 - r2) <= 1e-15 * scale) {
      throw ModelError(Fault::InfiniteIntersections, "identical circles");
    }
    return {};  // concentric
  }
  // Foot of the radical axis along the center line, then the half-chord.
  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h2 = r1 * r1 - a * a;
  if (h2 < -tol) return {};
  const Vec2 u = unit_direction(c2, c1);
  const Vec2 foot = c1 + a * u;
  if (h2 <= tol) return {foot};  // tangency
  const double h = std::sqrt(h2);
  const Vec2 off = h * perp(u);
  return {foot + off, foot - off};
}

std::optional<double> segment_circle_first_hit(Vec2 p0, Vec2 p1, Vec2 center, double radius) {
  if (p0 == p1) {
    throw ModelError(Fault::BadArguments, "degenerate segment");
  }
  if (radius <= 0.0) {
    throw ModelError(Fault::BadArguments, "circle radius must be positive");
  }
  const Vec2 d = p1 - p0;
  const Vec2 f = p0 - center;
  const double a = dot(d, d);
  const double b = 2.0 * dot(d, f);
  const double c = dot(f, f) - radius * radius;
  const double scale = std::max({a, std::abs(b), std::abs(c)});
  double disc = b * b - 4.0 * a * c;
  if (disc < -1e-9 * scale * scale) return std::nullopt;
  disc = std::max(disc, 0.0);
  // Stable quadratic roots: avoid cancellation near tangency.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
  double roots[2] = {q / a, (q != 0.0) ? c / q : q / a};
  if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
  for (double mu : roots) {
    if (mu >= 0.0 && mu <= 1.0) return mu;
  }
  return std::nullopt;
}

double angle_between_deg(Vec2 u, Vec2 v) {
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu <= 0.0 || nv <= 0.0) {
    throw ModelError(Fault::DegenerateDirection, "zero vector has no direction");
  }
  const double c = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

Vec2 rotate_about(Vec2 p, Vec2 center, double angle_deg, int orientation) {
  const double a = deg_to_rad(angle_deg) * static_cast<double>(orientation);
  const double c = std::cos(a);
  const double s = std::sin(a);
  const Vec2 r = p - center;
  return center + Vec2{c * r.x - s * r.y, s * r.x + c * r.y};
}

}  // namespace sweep

#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace sweep {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Planar point/vector in scene length units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3-D cross product; >0 when b is counterclockwise of a.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
/// Counterclockwise perpendicular.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// (from - to_subtract) / ||from - to_subtract||. Throws DegenerateDirection
/// on coincident points.
Vec2 unit_direction(Vec2 from, Vec2 to_subtract);

/// Intersection points of two circles: 0, 1 (tangency) or 2 points, each
/// satisfying both circle equations to 1e-9. Identical circles raise
/// InfiniteIntersections.
std::vector<Vec2> circle_circle_intersections(Vec2 c1, double r1, Vec2 c2, double r2);

/// Smallest mu in [0,1] with ||(1-mu) p0 + mu p1 - center|| = radius, or
/// nullopt when the segment misses the circle.
std::optional<double> segment_circle_first_hit(Vec2 p0, Vec2 p1, Vec2 center, double radius);

/// Angle between two nonzero vectors, in degrees within [0, 180].
double angle_between_deg(Vec2 u, Vec2 v);

/// center + R(orientation * angle) (p - center), orientation +1 = CCW.
Vec2 rotate_about(Vec2 p, Vec2 center, double angle_deg, int orientation);

}  // namespace sweep

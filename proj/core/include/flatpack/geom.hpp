#pragma once

#include "flatpack/rat.hpp"

#include <numbers>
#include <optional>
#include <ostream>
#include <variant>
#include <vector>

namespace flatpack {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultEpsAngle = 1e-9;

struct QPoint {
  Rat x, y;
  friend bool operator==(const QPoint&, const QPoint&) = default;
  friend auto operator<=>(const QPoint& a, const QPoint& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
  QPoint operator+(const QPoint& o) const { return {x + o.x, y + o.y}; }
  QPoint operator-(const QPoint& o) const { return {x - o.x, y - o.y}; }
  QPoint operator-() const { return {-x, -y}; }
  QPoint operator*(const Rat& s) const { return {x * s, y * s}; }
};

std::ostream& operator<<(std::ostream& os, const QPoint& p);

struct Segment {
  QPoint a, b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Orientation { CCW, CW };

struct Arc {
  QPoint center;
  Rat radius_sq;
  QPoint start, end;
  Orientation orientation = Orientation::CCW;
};

// ==== vector predicates ====

Rat cross(const QPoint& u, const QPoint& v);
Rat dot(const QPoint& u, const QPoint& v);
// sign of cross(b - a, c - a)
int orient(const QPoint& a, const QPoint& b, const QPoint& c);

// Half-plane index used to order directions by angle in [0, 2π): 0 for angle in [0, π), 1 otherwise.
int half_of(const QPoint& v);
// Strict angular order of nonzero directions by angle in [0, 2π) from the positive x axis.
bool angle_less(const QPoint& u, const QPoint& v);
// True when u and v point the same way.
bool same_direction(const QPoint& u, const QPoint& v);
// Number of times the counter-clockwise sweep from u to v (exclusive sweep length in (0, 2π))
// passes the positive x axis direction; 0 or 1. Equal directions count as a full turn (1).
int sweep_wraps(const QPoint& u, const QPoint& v);
// CCW angle from direction u to v, in (0, 2π]; equal directions give 2π.
double ccw_angle(const QPoint& u, const QPoint& v);

// Angular order of u and v measured counter-clockwise from base, angles in [0, 2π).
bool angle_less_from(const QPoint& base, const QPoint& u, const QPoint& v);
// d lies in the counter-clockwise sweep [lo, hi); lo == hi is a full turn.
bool in_half_open_cone(const QPoint& d, const QPoint& lo, const QPoint& hi);
// d lies in the closed counter-clockwise sweep [lo, hi].
bool in_closed_cone(const QPoint& d, const QPoint& lo, const QPoint& hi);

// True when p lies on the closed segment s.
bool on_segment(const QPoint& p, const Segment& s);
// Parameter t of p along s (requires collinear); p = a + t (b - a).
Rat param_on(const QPoint& p, const Segment& s);

// ==== polygons ====

// Twice the signed area (positive for counter-clockwise).
Rat signed_area2(const std::vector<QPoint>& poly);
// Closed containment (boundary counts as inside).
bool in_closed_polygon(const QPoint& p, const std::vector<QPoint>& poly);
bool on_polygon_boundary(const QPoint& p, const std::vector<QPoint>& poly);
// Squared distance from p to the closed segment s.
Rat point_segment_distance_sq(const QPoint& p, const Segment& s);
// Squared distance from p to the closed polygon (0 inside).
Rat point_polygon_distance_sq(const QPoint& p, const std::vector<QPoint>& poly);
// Simple polygon test: non-adjacent sides disjoint, adjacent sides meet only at their vertex.
bool is_simple_polygon(const std::vector<QPoint>& poly);

// ==== operations ====

Rat squared_distance(const QPoint& p, const QPoint& q);

struct Disjoint {
  friend bool operator==(const Disjoint&, const Disjoint&) = default;
};
struct PointHit {
  QPoint p;
  friend bool operator==(const PointHit&, const PointHit&) = default;
};
struct OverlapSegment {
  Segment s;
  friend bool operator==(const OverlapSegment&, const OverlapSegment&) = default;
};
using Intersection = std::variant<Disjoint, PointHit, OverlapSegment>;

Intersection segments_intersect(const Segment& s, const Segment& t);

// Angle subtended by the arc at its center, in (0, 2π]. A full circle has start == end.
double arc_angle(const Arc& a);

// Number of full turns an arc contributes when arcs are chained: counts crossings of the positive
// x axis direction during the sweep (exact), with a full circle counting once.
int arc_wraps(const Arc& a);

// True when |p - c|^2 == r2 exactly.
bool on_circle(const QPoint& p, const QPoint& c, const Rat& r2);

}  // namespace flatpack

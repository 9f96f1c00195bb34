#include "flatpack/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flatpack {

std::ostream& operator<<(std::ostream& os, const QPoint& p) { return os << '(' << p.x << ',' << p.y << ')'; }

Rat cross(const QPoint& u, const QPoint& v) { return u.x * v.y - u.y * v.x; }
Rat dot(const QPoint& u, const QPoint& v) { return u.x * v.x + u.y * v.y; }

int orient(const QPoint& a, const QPoint& b, const QPoint& c) { return cross(b - a, c - a).sign(); }

int half_of(const QPoint& v) {
  if (v.y.sign() > 0) return 0;
  if (v.y.sign() < 0) return 1;
  return v.x.sign() > 0 ? 0 : 1;
}

bool angle_less(const QPoint& u, const QPoint& v) {
  int hu = half_of(u), hv = half_of(v);
  if (hu != hv) return hu < hv;
  return cross(u, v).sign() > 0;
}

bool same_direction(const QPoint& u, const QPoint& v) {
  return cross(u, v).is_zero() && dot(u, v).sign() > 0;
}

int sweep_wraps(const QPoint& u, const QPoint& v) {
  if (same_direction(u, v)) return 1;
  // sweep from angle(u) to angle(v) counter-clockwise passes 0 iff angle(v) < angle(u)
  // (landing exactly on the axis counts, leaving it does not)
  const QPoint axis{Rat(1), Rat(0)};
  if (same_direction(v, axis)) return 1;
  return angle_less(v, u) ? 1 : 0;
}

double ccw_angle(const QPoint& u, const QPoint& v) {
  if (same_direction(u, v)) return kTwoPi;
  double a = std::atan2(u.y.to_double(), u.x.to_double());
  double b = std::atan2(v.y.to_double(), v.x.to_double());
  double d = b - a;
  while (d <= 0) d += kTwoPi;
  while (d > kTwoPi) d -= kTwoPi;
  return d;
}

bool angle_less_from(const QPoint& base, const QPoint& u, const QPoint& v) {
  QPoint ru{dot(base, u), cross(base, u)}, rv{dot(base, v), cross(base, v)};
  return angle_less(ru, rv);
}

bool in_half_open_cone(const QPoint& d, const QPoint& lo, const QPoint& hi) {
  if (same_direction(d, lo)) return true;
  if (same_direction(lo, hi)) return true;
  return angle_less_from(lo, d, hi);
}

bool in_closed_cone(const QPoint& d, const QPoint& lo, const QPoint& hi) {
  return in_half_open_cone(d, lo, hi) || same_direction(d, hi);
}

bool on_segment(const QPoint& p, const Segment& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

Rat param_on(const QPoint& p, const Segment& s) {
  QPoint d = s.b - s.a;
  return dot(p - s.a, d) / dot(d, d);
}

Rat signed_area2(const std::vector<QPoint>& poly) {
  Rat a(0);
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return a;
}

bool on_polygon_boundary(const QPoint& p, const std::vector<QPoint>& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (on_segment(p, Segment{poly[i], poly[(i + 1) % poly.size()]})) return true;
  return false;
}

bool in_closed_polygon(const QPoint& p, const std::vector<QPoint>& poly) {
  if (on_polygon_boundary(p, poly)) return true;
  // winding number with half-open edge rule
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const QPoint& a = poly[i];
    const QPoint& b = poly[(i + 1) % poly.size()];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++wn;
    } else if (b.y <= p.y && orient(a, b, p) < 0) {
      --wn;
    }
  }
  return wn != 0;
}

Rat point_segment_distance_sq(const QPoint& p, const Segment& s) {
  QPoint d = s.b - s.a;
  Rat t = dot(p - s.a, d) / dot(d, d);
  if (t.sign() <= 0) return squared_distance(p, s.a);
  if (t >= Rat(1)) return squared_distance(p, s.b);
  return squared_distance(p, s.a + d * t);
}

Rat point_polygon_distance_sq(const QPoint& p, const std::vector<QPoint>& poly) {
  if (in_closed_polygon(p, poly)) return Rat(0);
  std::optional<Rat> best;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Rat d = point_segment_distance_sq(p, Segment{poly[i], poly[(i + 1) % poly.size()]});
    if (!best || d < *best) best = d;
  }
  return *best;
}

bool is_simple_polygon(const std::vector<QPoint>& poly) {
  std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (poly[i] == poly[(i + 1) % n]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Segment si{poly[i], poly[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      Segment sj{poly[j], poly[(j + 1) % n]};
      Intersection x = segments_intersect(si, sj);
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (std::holds_alternative<Disjoint>(x)) continue;
      if (!adjacent) return false;
      if (std::holds_alternative<OverlapSegment>(x)) return false;
      // adjacent sides may meet only at the shared vertex
      const QPoint& shared = (j == i + 1) ? poly[j] : poly[i];
      if (std::get<PointHit>(x).p != shared) return false;
    }
  }
  return true;
}

Rat squared_distance(const QPoint& p, const QPoint& q) {
  QPoint d = p - q;
  return dot(d, d);
}

Intersection segments_intersect(const Segment& s, const Segment& t) {
  QPoint r = s.b - s.a, q = t.b - t.a;
  Rat rxq = cross(r, q);
  QPoint w = t.a - s.a;
  if (rxq.is_zero()) {
    if (!cross(w, r).is_zero()) return Disjoint{};
    // collinear: project onto s
    Rat rr = dot(r, r);
    Rat t0 = dot(t.a - s.a, r) / rr, t1 = dot(t.b - s.a, r) / rr;
    if (t1 < t0) std::swap(t0, t1);
    Rat lo = std::max(t0, Rat(0)), hi = std::min(t1, Rat(1));
    if (hi < lo) return Disjoint{};
    QPoint pa = s.a + r * lo, pb = s.a + r * hi;
    if (lo == hi) return PointHit{pa};
    return OverlapSegment{Segment{pa, pb}};
  }
  Rat u = cross(w, q) / rxq;  // along s
  Rat v = cross(w, r) / rxq;  // along t
  if (u.sign() < 0 || u > Rat(1) || v.sign() < 0 || v > Rat(1)) return Disjoint{};
  return PointHit{s.a + r * u};
}

double arc_angle(const Arc& a) {
  QPoint u = a.start - a.center, v = a.end - a.center;
  if (a.orientation == Orientation::CCW) return ccw_angle(u, v);
  return ccw_angle(v, u);
}

int arc_wraps(const Arc& a) {
  QPoint u = a.start - a.center, v = a.end - a.center;
  if (a.orientation == Orientation::CCW) return sweep_wraps(u, v);
  return sweep_wraps(v, u);
}

bool on_circle(const QPoint& p, const QPoint& c, const Rat& r2) { return squared_distance(p, c) == r2; }

}  // namespace flatpack

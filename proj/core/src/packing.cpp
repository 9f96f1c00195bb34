#include "flatpack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace flatpack {

namespace {

std::string text(const QPoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

std::string text(const SurfacePoint& p) { return "polygon " + std::to_string(p.polygon) + " " + text(p.p); }

bool on_arc(const Arc& a, const QPoint& p) {
  if (!on_circle(p, a.center, a.radius_sq)) return false;
  if (a.start == a.end) return true;
  return in_closed_cone(p - a.center, a.start - a.center, a.end - a.center);
}

bool on_sector_boundary(const PolygonalSector& sec, const QPoint& p) {
  if (on_arc(sec.arc, p)) return true;
  for (const auto& seg : sec.boundary_segments)
    if (on_segment(p, seg)) return true;
  return false;
}

// Rational points strictly inside the arc: second intersections of rational lines through its start.
std::vector<QPoint> arc_samples(const Arc& a, std::size_t count) {
  static const Rat slopes[] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2), Rat(3), Rat(-3),
                               Rat(1, 3), Rat(-1, 3), Rat(5), Rat(-5), Rat(1, 5), Rat(-1, 5), Rat(3, 2), Rat(-3, 2),
                               Rat(2, 3), Rat(-2, 3), Rat(7), Rat(-7), Rat(1, 7), Rat(-1, 7)};
  std::vector<QPoint> dirs;
  for (const Rat& m : slopes) dirs.push_back(QPoint{Rat(1), m});
  dirs.push_back(QPoint{Rat(0), Rat(1)});
  QPoint rel = a.start - a.center;
  std::vector<QPoint> found;
  for (const QPoint& u : dirs) {
    Rat k = dot(rel, u) * Rat(2) / dot(u, u);
    QPoint p = a.start - u * k;
    if (p == a.start || p == a.end) continue;
    if (a.start != a.end && !in_closed_cone(p - a.center, a.start - a.center, a.end - a.center)) continue;
    if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
  }
  std::sort(found.begin(), found.end(), [&](const QPoint& x, const QPoint& y) {
    return angle_less_from(rel, x - a.center, y - a.center);
  });
  if (found.size() <= count) return found;
  std::vector<QPoint> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(found[(2 * i + 1) * found.size() / (2 * count)]);
  return out;
}

// ==== numeric overlap sampling ====

using DPoint = std::pair<double, double>;

std::vector<DPoint> outline(const PolygonalSector& sec) {
  std::vector<DPoint> out;
  double cx = sec.arc.center.x.to_double(), cy = sec.arc.center.y.to_double();
  double r = std::sqrt(sec.arc.radius_sq.to_double());
  QPoint s = sec.arc.start - sec.arc.center;
  double a0 = std::atan2(s.y.to_double(), s.x.to_double());
  double sweep = arc_angle(sec.arc);
  const int steps = 128;
  for (int i = 0; i <= steps; ++i) {
    double t = a0 + sweep * i / steps;
    out.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
  }
  for (const auto& seg : sec.boundary_segments) out.push_back({seg.b.x.to_double(), seg.b.y.to_double()});
  return out;
}

bool inside_outline(const std::vector<DPoint>& poly, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    auto [xi, yi] = poly[i];
    auto [xj, yj] = poly[j];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

bool open_disks_meet(const Arc& a, const Arc& b) {
  Rat d = squared_distance(a.center, b.center);
  Rat e = d - a.radius_sq - b.radius_sq;
  if (e.sign() < 0) return true;
  return e * e < Rat(4) * a.radius_sq * b.radius_sq;
}

std::optional<std::string> overlap_witness(const PolygonalSector& a, const PolygonalSector& b) {
  if (a.arc.center == b.arc.center && a.arc.radius_sq == b.arc.radius_sq) return std::nullopt;
  if (!open_disks_meet(a.arc, b.arc)) return std::nullopt;
  auto oa = outline(a), ob = outline(b);
  double ra = std::sqrt(a.arc.radius_sq.to_double()), rb = std::sqrt(b.arc.radius_sq.to_double());
  double ax = a.arc.center.x.to_double(), ay = a.arc.center.y.to_double();
  double bx = b.arc.center.x.to_double(), by = b.arc.center.y.to_double();
  double x0 = std::max(ax - ra, bx - rb), x1 = std::min(ax + ra, bx + rb);
  double y0 = std::max(ay - ra, by - rb), y1 = std::min(ay + ra, by + rb);
  const int n = 64;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      double x = x0 + (x1 - x0) * i / n, y = y0 + (y1 - y0) * j / n;
      double da = std::hypot(x - ax, y - ay), db = std::hypot(x - bx, y - by);
      if (da > ra - 1e-9 || db > rb - 1e-9) continue;
      if (inside_outline(oa, x, y) && inside_outline(ob, x, y)) {
        std::ostringstream os;
        os << "sectors " << a.sector_id << " and " << b.sector_id << " of polygon " << a.polygon
           << " share interior point (" << x << ", " << y << ")";
        return os.str();
      }
    }
  return std::nullopt;
}

std::optional<std::string> first_overlap(const Configuration& c) {
  std::map<int, std::vector<int>> by_polygon;
  for (int i = 0; i < static_cast<int>(c.sectors.size()); ++i) by_polygon[c.sectors[i].polygon].push_back(i);
  for (const auto& [p, list] : by_polygon)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        if (auto w = overlap_witness(c.sectors[list[i]], c.sectors[list[j]])) return w;
  return std::nullopt;
}

std::vector<int> class_of_sector(const Configuration& c) {
  std::vector<int> cls(c.sectors.size(), -1);
  for (const auto& gc : c.circles)
    for (int i : gc.sectors) cls[i] = gc.id;
  return cls;
}

// ==== condition 1 ====

std::optional<std::string> boundary_closure(const Configuration& c) {
  const auto& s = c.surface;
  auto cls = class_of_sector(c);
  // (polygon, side) -> (class, parameter interval along the side)
  std::map<std::pair<int, int>, std::vector<std::tuple<int, Rat, Rat>>> cover;
  auto side_segment = [&](int p, int i) {
    const auto& v = s.polygon(p).vertices;
    return Segment{v[i], v[(i + 1) % v.size()]};
  };
  for (int i = 0; i < static_cast<int>(c.sectors.size()); ++i) {
    const auto& sec = c.sectors[i];
    for (std::size_t k = 0; k < sec.boundary_segments.size(); ++k) {
      Segment side = side_segment(sec.polygon, sec.segment_sides[k]);
      Rat t0 = param_on(sec.boundary_segments[k].a, side), t1 = param_on(sec.boundary_segments[k].b, side);
      if (t1 < t0) std::swap(t0, t1);
      cover[{sec.polygon, sec.segment_sides[k]}].push_back({cls[i], t0, t1});
    }
  }
  auto related_boundary = [&](int klass, const SurfacePoint& y) {
    for (int j = 0; j < static_cast<int>(c.sectors.size()); ++j)
      if (cls[j] == klass && c.sectors[j].polygon == y.polygon && on_sector_boundary(c.sectors[j], y.p)) return true;
    return false;
  };
  for (int i = 0; i < static_cast<int>(c.sectors.size()); ++i) {
    const auto& sec = c.sectors[i];
    for (std::size_t k = 0; k < sec.boundary_segments.size(); ++k) {
      int side = sec.segment_sides[k];
      auto [q, j] = s.partner(sec.polygon, side);
      QPoint off = s.partner_offset(sec.polygon, side);
      Segment img{sec.boundary_segments[k].a - off, sec.boundary_segments[k].b - off};
      Segment target = side_segment(q, j);
      Rat u0 = param_on(img.a, target), u1 = param_on(img.b, target);
      if (u1 < u0) std::swap(u0, u1);
      std::vector<std::pair<Rat, Rat>> iv;
      for (const auto& [k2, t0, t1] : cover[{q, j}])
        if (k2 == cls[i]) iv.push_back({t0, t1});
      std::sort(iv.begin(), iv.end());
      Rat cur = u0;
      for (const auto& [t0, t1] : iv)
        if (t0 <= cur && t1 > cur) cur = t1;
      if (cur < u1) {
        std::ostringstream os;
        os << "sector " << sec.sector_id << " boundary " << img.a + off << " - " << img.b + off << " on polygon "
           << sec.polygon << " side " << side << " is glued to polygon " << q << " side " << j
           << " where no related sector has boundary near " << (img.a + (img.b - img.a) * ((cur - u0) / (u1 - u0)));
        return os.str();
      }
    }
    // Isolated boundary points: polygon vertices on the sector and arc points touching the sides.
    std::vector<QPoint> points;
    const auto& v = s.polygon(sec.polygon).vertices;
    for (const QPoint& w : v)
      if (on_sector_boundary(sec, w)) points.push_back(w);
    for (std::size_t e = 0; e < v.size(); ++e) {
      QPoint a = v[e], b = v[(e + 1) % v.size()], d = b - a;
      Rat A = dot(d, d), B = dot(d, a - sec.arc.center), C = dot(a - sec.arc.center, a - sec.arc.center) - sec.arc.radius_sq;
      if ((B * B - A * C).is_zero()) {
        Rat t = -B / A;
        if (t.sign() >= 0 && t <= Rat(1) && on_arc(sec.arc, a + d * t)) points.push_back(a + d * t);
      }
    }
    for (const QPoint& x : points)
      for (const SurfacePoint& y : s.representatives(SurfacePoint{sec.polygon, x}))
        if (!related_boundary(cls[i], y))
          return "sector " + std::to_string(sec.sector_id) + " boundary point " + text(x) + " is identified with " +
                 text(y) + ", which lies on no related sector boundary";
  }
  return std::nullopt;
}

// ==== condition 2 ====

std::optional<std::string> sector_validity(const Configuration& c) {
  const auto& s = c.surface;
  for (const auto& sec : c.sectors) {
    const auto& v = s.polygon(sec.polygon).vertices;
    std::string id = "sector " + std::to_string(sec.sector_id);
    if (!on_circle(sec.arc.start, sec.arc.center, sec.arc.radius_sq) || !on_circle(sec.arc.end, sec.arc.center, sec.arc.radius_sq))
      return id + ": arc endpoints are off the circle";
    QPoint at = sec.arc.end;
    for (std::size_t k = 0; k < sec.boundary_segments.size(); ++k) {
      const Segment& seg = sec.boundary_segments[k];
      int side = sec.segment_sides[k];
      Segment full{v[side], v[(side + 1) % v.size()]};
      if (seg.a != at || !on_segment(seg.a, full) || !on_segment(seg.b, full))
        return id + ": boundary segment " + text(seg.a) + " - " + text(seg.b) + " leaves side " + std::to_string(side);
      at = seg.b;
    }
    if (at != sec.arc.start) return id + ": boundary does not close up";
    for (const QPoint& p : arc_samples(sec.arc, 3))
      if (!in_closed_polygon(p, v)) return id + ": arc point " + text(p) + " lies outside its polygon";
  }
  return first_overlap(c);
}

// ==== condition 4 ====

// Sign of (sqrt(a) + sqrt(b))^2 - r2.
int bent_cmp(const Rat& a, const Rat& b, const Rat& r2) {
  Rat diff = r2 - a - b;
  if (diff.sign() < 0) return 1;
  Rat lhs = diff * diff, rhs = Rat(4) * a * b;
  if (lhs == rhs) return 0;
  return lhs > rhs ? -1 : 1;
}

std::optional<std::string> metric_check(const Configuration& c, const GeneralizedCircle& gc, int depth) {
  const auto& s = c.surface;
  std::string id = "circle " + std::to_string(gc.id) + (gc.label.empty() ? "" : " (" + gc.label + ")");
  if (!gc.radius_ok) return id + ": arcs have different radii";
  if (gc.centers.empty()) return id + ": no sector contains the center";
  const SurfacePoint& center = gc.centers.front();
  std::string prefix;
  if (gc.centers.size() > 1)
    prefix = id + ": center not unique (" + text(gc.centers[0]) + " and " + text(gc.centers[1]) + "); ";
  const Rat& r2 = gc.radius_sq;

  std::vector<SurfacePoint> pts;
  std::vector<int> owner;
  for (int i : gc.sectors) {
    const auto& sec = c.sectors[i];
    std::vector<QPoint> local{sec.arc.start};
    for (const QPoint& p : arc_samples(sec.arc, 3)) local.push_back(p);
    if (sec.arc.end != sec.arc.start) local.push_back(sec.arc.end);
    for (const QPoint& p : local) {
      if (!on_circle(p, sec.arc.center, r2)) return prefix + id + ": arc point " + text(p) + " is off its circle";
      pts.push_back(SurfacePoint{sec.polygon, p});
      owner.push_back(sec.sector_id);
    }
  }
  auto where = [&](std::size_t i) {
    std::ostringstream os;
    os << prefix << id << ": arc point " << pts[i].p << " of sector " << owner[i];
    return os.str();
  };

  std::vector<bool> exact(pts.size(), false);
  auto direct = straight_paths_to(s, center, pts, depth, r2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& path : direct[i]) {
      if (*path.length_sq < r2) {
        std::ostringstream os;
        os << where(i) << " is at squared distance " << *path.length_sq << " < " << r2
           << " along a straight path with " << path.crossing_sequence.size() << " crossings";
        return os.str();
      }
      exact[i] = true;
    }
  for (const auto& cp : s.cone_points()) {
    SurfacePoint k = s.class_point(cp.class_index);
    if (k == center) continue;
    auto a = straight_distance(s, center, k, depth, r2);
    if (!a) continue;
    auto legs = straight_paths_to(s, k, pts, depth, r2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (legs[i].empty() || s.canonical(pts[i]) == k) continue;
      const Rat& b2 = *legs[i].front().length_sq;
      int cmp = bent_cmp(*a->length_sq, b2, r2);
      if (cmp < 0) {
        std::ostringstream os;
        os << where(i) << " is closer than the radius along a path bending at the cone point " << text(k)
           << " (legs " << *a->length_sq << ", " << b2 << ")";
        return os.str();
      }
      if (cmp == 0) exact[i] = true;
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!exact[i]) {
      std::ostringstream os;
      os << where(i) << " has no path of squared length " << r2 << " from the center within depth " << depth;
      auto du = unfold_distance(s, center, pts[i], depth);
      if (std::isfinite(du.upper_bound)) os << " (shortest found " << du.upper_bound << ")";
      return os.str();
    }
  if (!prefix.empty()) return prefix.substr(0, prefix.size() - 2);
  return std::nullopt;
}

}  // namespace

VerificationReport verify_configuration(const Configuration& c, int depth, double eps_angle) {
  VerificationReport r;
  r.depth = depth;
  r.checked = true;
  auto set = [&](int i, const std::optional<std::string>& w) {
    if (w && r.conditions[i].pass) r.conditions[i] = ConditionResult{false, *w};
  };
  set(0, boundary_closure(c));
  set(1, sector_validity(c));
  for (const auto& gc : c.circles) {
    std::string id = "circle " + std::to_string(gc.id) + (gc.label.empty() ? "" : " (" + gc.label + ")");
    if (!gc.chain_ok) set(2, id + ": arcs do not chain into closed turns");
    if (gc.k < 1 || std::abs(gc.angle_sum - kTwoPi * gc.k) >= eps_angle) {
      std::ostringstream os;
      os << id << ": angle sum " << gc.angle_sum << " differs from 2π·" << gc.k;
      set(2, os.str());
    }
  }
  for (const auto& gc : c.circles) set(3, metric_check(c, gc, depth));
  return r;
}

// ==== slits ====

std::string_view to_string(SlitRelation r) {
  switch (r) {
    case SlitRelation::Disjoint: return "Disjoint";
    case SlitRelation::ThroughCenter: return "ThroughCenter";
    case SlitRelation::TwoPointCrossing: return "TwoPointCrossing";
  }
  return "?";
}

SlitRelation classify_slit_relation(const PlanarCircle& c, const Segment& slit, const std::optional<QPoint>& period) {
  std::vector<QPoint> centers{c.center};
  if (period) {
    centers.clear();
    double r = std::sqrt(c.radius_sq.to_double());
    double len = std::sqrt(squared_distance(slit.a, slit.b).to_double());
    int reach = static_cast<int>(std::ceil((r + len) / std::min(period->x.to_double(), period->y.to_double()))) + 1;
    for (int i = -reach; i <= reach; ++i)
      for (int j = -reach; j <= reach; ++j) centers.push_back(c.center + QPoint{period->x * Rat(i), period->y * Rat(j)});
  }
  SlitRelation best = SlitRelation::Disjoint;
  for (const QPoint& z : centers) {
    if (on_segment(z, slit)) {
      best = SlitRelation::ThroughCenter;
      continue;
    }
    for (const QPoint& e : {slit.a, slit.b})
      if (squared_distance(e, z) < c.radius_sq)
        throw Error(ErrorCode::IllegalRelation, "slit endpoint " + text(e) + " lies strictly inside the circle about " +
                                                    text(z) + " whose center is off the slit");
    if (point_segment_distance_sq(z, slit) < c.radius_sq && best == SlitRelation::Disjoint)
      best = SlitRelation::TwoPointCrossing;
  }
  return best;
}

// ==== contacts ====

namespace {

struct BoundaryPos {
  int circle = 0;
  int chain_index = 0;
  QPoint base, dir;  // arc start and point, relative to the arc center
  SurfacePoint where;
};

bool pos_less(const BoundaryPos& a, const BoundaryPos& b) {
  if (a.chain_index != b.chain_index) return a.chain_index < b.chain_index;
  return angle_less_from(a.base, a.dir, b.dir);
}

}  // namespace

ContactsGraph contacts_graph(const Configuration& c, int depth) {
  (void)depth;
  if (auto w = first_overlap(c)) throw Error(ErrorCode::OverlappingCircles, *w);
  const auto& s = c.surface;
  auto cls = class_of_sector(c);
  std::vector<int> chain_index(c.sectors.size(), 0), chain_next(c.sectors.size(), -1);
  for (const auto& gc : c.circles)
    for (std::size_t i = 0; i < gc.chain.size(); ++i) {
      chain_index[gc.chain[i]] = static_cast<int>(i);
      if (gc.chain_ok) chain_next[gc.chain[i]] = gc.chain[(i + 1) % gc.chain.size()];
    }
  // A boundary point at an arc end is recorded as the start of the next arc.
  auto position = [&](int sector, const QPoint& t) {
    const PolygonalSector* sec = &c.sectors[sector];
    QPoint local = t;
    if (local == sec->arc.end && sec->arc.start != sec->arc.end && chain_next[sector] >= 0) {
      SurfacePoint here = s.canonical(SurfacePoint{sec->polygon, local});
      int nx = chain_next[sector];
      const auto& ns = c.sectors[nx];
      if (s.canonical(SurfacePoint{ns.polygon, ns.arc.start}) == here) {
        sector = nx;
        sec = &ns;
        local = ns.arc.start;
      }
    }
    BoundaryPos bp;
    bp.circle = cls[sector];
    bp.chain_index = chain_index[sector];
    bp.base = sec->arc.start - sec->arc.center;
    bp.dir = local - sec->arc.center;
    bp.where = s.canonical(SurfacePoint{sec->polygon, local});
    return bp;
  };
  auto pos_key = [](const BoundaryPos& p) {
    return std::make_tuple(p.circle, p.chain_index, p.where.polygon, p.where.p);
  };

  std::map<int, std::vector<int>> by_polygon;
  for (int i = 0; i < static_cast<int>(c.sectors.size()); ++i) by_polygon[c.sectors[i].polygon].push_back(i);
  std::vector<std::pair<BoundaryPos, BoundaryPos>> edges;
  std::set<std::pair<std::tuple<int, int, int, QPoint>, std::tuple<int, int, int, QPoint>>> seen;
  for (const auto& [poly, list] : by_polygon)
    for (std::size_t x = 0; x < list.size(); ++x)
      for (std::size_t y = x + 1; y < list.size(); ++y) {
        const auto& a = c.sectors[list[x]];
        const auto& b = c.sectors[list[y]];
        if (a.arc.center == b.arc.center && a.arc.radius_sq == b.arc.radius_sq) continue;
        Rat d = squared_distance(a.arc.center, b.arc.center);
        Rat e = d - a.arc.radius_sq - b.arc.radius_sq;
        if (e.sign() < 0 || e * e != Rat(4) * a.arc.radius_sq * b.arc.radius_sq) continue;
        auto lambda = (a.arc.radius_sq / d).sqrt_exact();
        if (!lambda)
          throw Error(ErrorCode::IrrationalIntersection, "tangency point of circles about " + text(a.arc.center) +
                                                             " and " + text(b.arc.center) + " is irrational");
        QPoint t = a.arc.center + (b.arc.center - a.arc.center) * *lambda;
        if (!on_arc(a.arc, t) || !on_arc(b.arc, t)) continue;
        BoundaryPos pa = position(list[x], t), pb = position(list[y], t);
        auto ka = pos_key(pa), kb = pos_key(pb);
        if (kb < ka) {
          std::swap(ka, kb);
          std::swap(pa, pb);
        }
        if (!seen.insert({ka, kb}).second) continue;
        edges.push_back({pa, pb});
      }

  ContactsGraph g;
  g.circle_count = static_cast<int>(c.circles.size());
  g.surface_euler = s.euler_characteristic();
  g.vertex_of_circle.assign(g.circle_count, -1);
  if (edges.empty()) return g;
  const int h = 2 * static_cast<int>(edges.size());
  std::vector<int> sigma(h), rho(h);
  std::map<int, std::vector<std::pair<BoundaryPos, int>>> around;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    sigma[2 * e] = 2 * e + 1;
    sigma[2 * e + 1] = 2 * e;
    around[edges[e].first.circle].push_back({edges[e].first, 2 * e});
    around[edges[e].second.circle].push_back({edges[e].second, 2 * e + 1});
    g.tangencies.push_back(Tangency{edges[e].first.circle, edges[e].second.circle, edges[e].first.where, e});
  }
  for (auto& [circle, list] : around) {
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return pos_less(x.first, y.first); });
    for (std::size_t i = 0; i < list.size(); ++i) rho[list[i].second] = list[(i + 1) % list.size()].second;
  }
  g.map = build_map(sigma, rho);
  g.circle_of_vertex.assign(g.map.vertex_count(), -1);
  for (auto& [circle, list] : around) {
    int v = g.map.vertex_of(list.front().second);
    g.circle_of_vertex[v] = circle;
    g.vertex_of_circle[circle] = v;
  }
  return g;
}

TriangulationCheck faces_form_triangulation(const CombinatorialMap& m) {
  TriangulationCheck out;
  const int f = m.face_count();
  std::vector<std::set<int>> fv(f), fe(f);
  for (int i = 0; i < f; ++i) {
    const auto& face = m.faces()[i];
    if (face.size() > 3)
      out.violations.push_back("face " + std::to_string(i) + " has " + std::to_string(face.size()) + " sides");
    for (int h : face) {
      fv[i].insert(m.vertex_of(h));
      fe[i].insert(m.edge_of(h));
    }
  }
  std::map<int, std::vector<int>> faces_at;
  for (int i = 0; i < f; ++i)
    for (int v : fv[i]) faces_at[v].push_back(i);
  std::set<std::pair<int, int>> pairs;
  for (const auto& [v, list] : faces_at)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) pairs.insert({std::min(list[a], list[b]), std::max(list[a], list[b])});
  for (auto [a, b] : pairs) {
    std::vector<int> sv, se;
    std::set_intersection(fv[a].begin(), fv[a].end(), fv[b].begin(), fv[b].end(), std::back_inserter(sv));
    std::set_intersection(fe[a].begin(), fe[a].end(), fe[b].begin(), fe[b].end(), std::back_inserter(se));
    bool ok = false;
    if (se.empty()) {
      ok = sv.size() <= 2;
    } else if (se.size() == 1) {
      auto [x, y] = m.edge_ends(se.front());
      std::set<int> ends{x, y};
      ok = std::set<int>(sv.begin(), sv.end()) == ends;
    }
    if (!ok)
      out.violations.push_back("faces " + std::to_string(a) + " and " + std::to_string(b) + " share " +
                               std::to_string(sv.size()) + " vertices and " + std::to_string(se.size()) + " edges");
  }
  out.ok = out.violations.empty();
  return out;
}

TriangulationCheck is_triangulation(const ContactsGraph& g) {
  TriangulationCheck out;
  if (g.map.half_edge_count() == 0) {
    out.violations.push_back("no tangencies");
    return out;
  }
  out = faces_form_triangulation(g.map);
  for (int i = 0; i < g.circle_count; ++i)
    if (g.vertex_of_circle[i] < 0) out.violations.push_back("circle " + std::to_string(i) + " touches nothing");
  if (!g.map.connected()) out.violations.push_back("contacts graph is disconnected");
  if (g.map.euler_characteristic() != g.surface_euler)
    out.violations.push_back("faces are not discs: map Euler characteristic " +
                             std::to_string(g.map.euler_characteristic()) + " vs surface " +
                             std::to_string(g.surface_euler));
  out.ok = out.violations.empty();
  return out;
}

std::vector<std::pair<int, int>> tangency_bigons(const ContactsGraph& g) {
  std::vector<std::pair<int, int>> out;
  if (g.map.half_edge_count() == 0) return out;
  for (const auto& b : find_bigons(g.map)) {
    int x = g.circle_of_vertex[b.v1], y = g.circle_of_vertex[b.v2];
    out.push_back({std::min(x, y), std::max(x, y)});
  }
  return out;
}

// ==== slit chains ====

Configuration torus_configuration(const TorusPacking& p) {
  SlittedSurface ss = build_slitted({TorusLayout{p.origin, p.size, {}}}, {});
  std::vector<PolygonalSector> sectors;
  for (const auto& c : p.circles)
    for (auto& sec : torus_circle_sectors(ss, 0, c)) sectors.push_back(std::move(sec));
  return make_configuration(std::move(ss.surface), std::move(sectors));
}

Configuration doubled_configuration(const TorusPacking& p, const TorusPacking& q, const CutPolyline& cut) {
  SlittedSurface ss = build_slitted({TorusLayout{p.origin, p.size, {cut}}, TorusLayout{q.origin, q.size, {cut}}},
                                    {SlitGluing{0, 0, 1, 0}});
  std::vector<PolygonalSector> sectors;
  for (const auto& c : p.circles)
    for (auto& sec : torus_circle_sectors(ss, 0, c)) sectors.push_back(std::move(sec));
  for (const auto& c : q.circles)
    for (auto& sec : torus_circle_sectors(ss, 1, c)) sectors.push_back(std::move(sec));
  return make_configuration(std::move(ss.surface), std::move(sectors));
}

namespace {

bool is_center_mod(const TorusPacking& p, const QPoint& x) {
  for (const auto& c : p.circles) {
    QPoint d = x - c.center;
    if ((d.x / p.size.x).is_integer() && (d.y / p.size.y).is_integer()) return true;
  }
  return false;
}

// Every point of the slit lies in a closed disk of the packing.
bool slit_covered(const TorusPacking& p, const Segment& slit) {
  QPoint d = slit.b - slit.a;
  Rat A = dot(d, d);
  std::vector<std::pair<double, double>> iv;
  std::vector<std::pair<Rat, Rat>> exact;
  for (const auto& c : p.circles)
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        QPoint z = c.center + QPoint{p.size.x * Rat(i), p.size.y * Rat(j)};
        Rat B = dot(d, slit.a - z), C = dot(slit.a - z, slit.a - z) - c.radius_sq;
        Rat disc = B * B - A * C;
        if (disc.sign() < 0) continue;
        if (auto r = disc.sqrt_exact()) {
          exact.push_back({(-B - *r) / A, (-B + *r) / A});
        } else {
          double sq = std::sqrt(disc.to_double());
          iv.push_back({(-B.to_double() - sq) / A.to_double(), (-B.to_double() + sq) / A.to_double()});
        }
      }
  // Exact intervals first; inexact ones only bridge with a small tolerance.
  std::vector<std::tuple<double, double, std::optional<Rat>, std::optional<Rat>>> all;
  for (auto& [a, b] : exact) all.push_back({a.to_double(), b.to_double(), a, b});
  for (auto& [a, b] : iv) all.push_back({a, b, std::nullopt, std::nullopt});
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
  Rat cur(0);
  double curd = 0.0;
  bool cur_exact = true;
  for (const auto& [a, b, ea, eb] : all) {
    bool starts_ok = ea && cur_exact ? *ea <= cur : a <= curd + 1e-12;
    if (!starts_ok) continue;
    bool extends = eb && cur_exact ? *eb > cur : b > curd;
    if (!extends) continue;
    if (eb) {
      cur = *eb;
      cur_exact = true;
    } else {
      cur_exact = false;
    }
    curd = b;
    if (cur_exact ? cur >= Rat(1) : curd >= 1.0) return true;
  }
  return cur_exact ? cur >= Rat(1) : curd >= 1.0;
}

bool triangulates(const Configuration& c, int depth, const std::string& name, std::vector<std::string>& notes) {
  auto report = verify_configuration(c, depth);
  if (!report.all_pass()) {
    for (int i = 0; i < 4; ++i)
      if (!report.conditions[i].pass)
        notes.push_back(name + ": condition " + std::to_string(i + 1) + " fails: " + report.conditions[i].witness);
    return false;
  }
  auto tri = is_triangulation(contacts_graph(c, depth));
  for (const auto& v : tri.violations) notes.push_back(name + ": " + v);
  return tri.ok;
}

}  // namespace

TriangpropResult check_triangprop(const TorusPacking& p, const TorusPacking& q, const CutPolyline& cut, int depth) {
  TriangpropResult r;
  Segment slit = cut.slit_segment();
  bool hyp = true;
  hyp = triangulates(torus_configuration(p), depth, "first torus", r.notes) && hyp;
  hyp = triangulates(torus_configuration(q), depth, "second torus", r.notes) && hyp;
  for (const QPoint& e : {slit.a, slit.b})
    for (const TorusPacking* t : {&p, &q})
      if (!is_center_mod(*t, e)) {
        r.notes.push_back("slit end " + text(e) + " is not a circle center");
        hyp = false;
      }
  for (const TorusPacking* t : {&p, &q})
    if (!slit_covered(*t, slit)) {
      r.notes.push_back("part of the slit lies outside every circle");
      hyp = false;
    }
  r.hypotheses = hyp;
  r.conclusion = triangulates(doubled_configuration(p, q, cut), depth, "doubled slit torus", r.notes);
  return r;
}

}  // namespace flatpack

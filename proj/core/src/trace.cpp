#include "flatpack/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

namespace flatpack {

namespace {

std::vector<QPoint> developed_vertices(const TranslationSurface& s, const Sheet& sh) {
  std::vector<QPoint> out;
  for (const auto& v : s.polygon(sh.polygon).vertices) out.push_back(v + sh.offset);
  return out;
}

Rat ray_param(const QPoint& x, const QPoint& o, const QPoint& d) { return dot(x - o, d) / dot(d, d); }

// Largest u >= t such that o + [t, u] d stays in the closed polygon.
Rat advance(const std::vector<QPoint>& poly, const QPoint& o, const QPoint& d, const Rat& t) {
  if (t == Rat(1)) return t;
  Segment seg{o + d * t, o + d};
  std::vector<Rat> params;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Segment e{poly[i], poly[(i + 1) % poly.size()]};
    Intersection x = segments_intersect(seg, e);
    if (auto* h = std::get_if<PointHit>(&x)) {
      params.push_back(ray_param(h->p, o, d));
    } else if (auto* ov = std::get_if<OverlapSegment>(&x)) {
      params.push_back(ray_param(ov->s.a, o, d));
      params.push_back(ray_param(ov->s.b, o, d));
    }
  }
  params.push_back(Rat(1));
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  Rat prev = t;
  for (const Rat& u : params) {
    if (u <= t) continue;
    QPoint mid = o + d * ((prev + u) / Rat(2));
    if (!in_closed_polygon(mid, poly)) return prev;
    prev = u;
  }
  return Rat(1);
}

int corner_index_in_class(const TranslationSurface& s, int cls, Corner c) {
  const auto& cs = s.vertex_classes()[cls].corners;
  return static_cast<int>(std::find(cs.begin(), cs.end(), c) - cs.begin());
}

bool corner_holds(const TranslationSurface& s, Corner c, const QPoint& d) {
  QPoint out = s.edge_vector(c.polygon, c.vertex);
  QPoint back = s.vertex(c.polygon, c.vertex - 1) - s.vertex(c.polygon, c.vertex);
  return in_half_open_cone(d, out, back);
}

// Corner of a regular vertex class whose half-open sweep contains d.
Corner regular_corner_for(const TranslationSurface& s, int cls, const QPoint& d) {
  for (const auto& c : s.vertex_classes()[cls].corners)
    if (corner_holds(s, c, d)) return c;
  throw std::logic_error("no corner contains direction");
}

}  // namespace

std::vector<Sheet> start_sheets(const TranslationSurface& s, const SurfacePoint& sp, const QPoint& d) {
  std::vector<Sheet> out;
  for (const auto& rep : s.representatives(sp)) {
    PointLocation loc = s.locate(rep.polygon, rep.p);
    Sheet sh{rep.polygon, sp.p - rep.p};
    switch (loc.kind) {
      case PointKind::Interior:
        return {sh};
      case PointKind::Side: {
        Rat c = cross(s.edge_vector(rep.polygon, loc.index), d);
        if (c.sign() > 0 || (c.is_zero() && out.empty())) out.push_back(sh);
        break;
      }
      case PointKind::Vertex:
        if (corner_holds(s, Corner{rep.polygon, loc.index}, d)) out.push_back(sh);
        break;
    }
  }
  return out;
}

TraceResult trace_segment(const TranslationSurface& s, const Sheet& start, const QPoint& origin, const QPoint& d,
                          int max_depth) {
  TraceResult r;
  Sheet cur = start;
  Rat t(0);
  const int guard = 8 * (max_depth + 4) + 64;
  for (int iter = 0; iter < guard; ++iter) {
    auto poly = developed_vertices(s, cur);
    Rat t_exit = advance(poly, origin, d, t);
    if (t_exit > t) {
      for (std::size_t i = 0; i < poly.size(); ++i) {
        if (!s.is_cone_class(s.vertex_class_of(cur.polygon, static_cast<int>(i)))) continue;
        if (orient(origin, origin + d, poly[i]) != 0) continue;
        Rat u = ray_param(poly[i], origin, d);
        if (u > t && u < t_exit) {
          r.hit_cone_point = true;
          return r;
        }
      }
      t = t_exit;
    }
    if (t == Rat(1)) {
      r.ok = true;
      r.end = cur;
      r.end_local = origin + d - cur.offset;
      return r;
    }
    QPoint x = origin + d * t;
    PointLocation loc = s.locate(cur.polygon, x - cur.offset);
    if (loc.kind == PointKind::Vertex) {
      int cls = s.vertex_class_of(cur.polygon, loc.index);
      if (s.is_cone_class(cls)) {
        r.hit_cone_point = true;
        return r;
      }
      Corner c = regular_corner_for(s, cls, d);
      cur = Sheet{c.polygon, x - s.vertex(c.polygon, c.vertex)};
      ++r.vertex_transits;
    } else if (loc.kind == PointKind::Side) {
      r.crossings.push_back(SideId{s.polygon(cur.polygon).polygon_id, loc.index});
      QPoint off = cur.offset + s.partner_offset(cur.polygon, loc.index);
      cur = Sheet{s.partner(cur.polygon, loc.index).first, off};
    } else {
      throw std::logic_error("trace stalled at an interior point");
    }
    if (r.depth() > max_depth) {
      r.too_deep = true;
      return r;
    }
  }
  r.too_deep = true;
  return r;
}

std::vector<DevelopedCopy> develop(const TranslationSurface& s, const SurfacePoint& sp, int max_depth,
                                   const std::optional<Rat>& bound_sq) {
  std::vector<DevelopedCopy> out;
  std::set<std::pair<int, QPoint>> seen;
  std::deque<DevelopedCopy> queue;
  for (const auto& rep : s.representatives(sp)) {
    Sheet sh{rep.polygon, sp.p - rep.p};
    if (seen.emplace(sh.polygon, sh.offset).second) queue.push_back({sh, 0});
  }
  while (!queue.empty()) {
    DevelopedCopy cur = queue.front();
    queue.pop_front();
    auto poly = developed_vertices(s, cur.sheet);
    if (bound_sq && cur.depth > 0 && point_polygon_distance_sq(sp.p, poly) > *bound_sq) continue;
    out.push_back(cur);
    if (cur.depth >= max_depth) continue;
    const int n = static_cast<int>(poly.size());
    for (int e = 0; e < n; ++e) {
      Sheet nb{s.partner(cur.sheet.polygon, e).first, cur.sheet.offset + s.partner_offset(cur.sheet.polygon, e)};
      if (seen.emplace(nb.polygon, nb.offset).second) queue.push_back({nb, cur.depth + 1});
    }
    for (int i = 0; i < n; ++i) {
      int cls = s.vertex_class_of(cur.sheet.polygon, i);
      if (s.is_cone_class(cls)) continue;
      for (const auto& c : s.vertex_classes()[cls].corners) {
        Sheet nb{c.polygon, poly[i] - s.vertex(c.polygon, c.vertex)};
        if (seen.emplace(nb.polygon, nb.offset).second) queue.push_back({nb, cur.depth + 1});
      }
    }
  }
  return out;
}

namespace {

UnfoldedPath path_from_trace(const TraceResult& tr, const QPoint& origin, const QPoint& d) {
  UnfoldedPath p;
  p.crossing_sequence = tr.crossings;
  p.developed_segment = Segment{origin, origin + d};
  p.developed_polyline = {origin, origin + d};
  p.length_sq = dot(d, d);
  p.length = std::sqrt(p.length_sq->to_double());
  return p;
}

// Candidate developed displacements from p to copies of q, shortest first.
std::vector<QPoint> candidate_displacements(const TranslationSurface& s, const SurfacePoint& p,
                                            const std::vector<SurfacePoint>& q_reps, int depth,
                                            const std::optional<Rat>& bound_sq) {
  std::vector<std::pair<Rat, QPoint>> cands;
  std::set<QPoint> seen;
  for (const auto& copy : develop(s, p, depth, bound_sq)) {
    for (const auto& rep : q_reps) {
      if (rep.polygon != copy.sheet.polygon) continue;
      QPoint d = rep.p + copy.sheet.offset - p.p;
      Rat d2 = dot(d, d);
      if (bound_sq && d2 > *bound_sq) continue;
      if (seen.insert(d).second) cands.emplace_back(d2, d);
    }
  }
  std::sort(cands.begin(), cands.end());
  std::vector<QPoint> out;
  for (auto& c : cands) out.push_back(c.second);
  return out;
}

}  // namespace

std::vector<UnfoldedPath> straight_paths(const TranslationSurface& s, const SurfacePoint& p, const SurfacePoint& q,
                                         int depth, const Rat& bound_sq) {
  SurfacePoint qc = s.canonical(q);
  std::vector<UnfoldedPath> out;
  for (const QPoint& d : candidate_displacements(s, p, s.representatives(q), depth, bound_sq)) {
    if (d == QPoint{}) {
      UnfoldedPath z;
      z.developed_segment = Segment{p.p, p.p};
      z.developed_polyline = {p.p};
      z.length_sq = Rat(0);
      out.push_back(z);
      continue;
    }
    for (const Sheet& sh : start_sheets(s, p, d)) {
      TraceResult tr = trace_segment(s, sh, p.p, d, depth);
      if (!tr.ok) continue;
      if (s.canonical(SurfacePoint{tr.end.polygon, tr.end_local}) == qc) out.push_back(path_from_trace(tr, p.p, d));
    }
  }
  return out;
}

std::vector<std::vector<UnfoldedPath>> straight_paths_to(const TranslationSurface& s, const SurfacePoint& p,
                                                         const std::vector<SurfacePoint>& targets, int depth,
                                                         const Rat& bound_sq) {
  auto copies = develop(s, p, depth, bound_sq);
  std::vector<std::vector<UnfoldedPath>> out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    SurfacePoint qc = s.canonical(targets[i]);
    auto reps = s.representatives(targets[i]);
    std::vector<std::pair<Rat, QPoint>> cands;
    std::set<QPoint> seen;
    for (const auto& copy : copies)
      for (const auto& rep : reps) {
        if (rep.polygon != copy.sheet.polygon) continue;
        QPoint d = rep.p + copy.sheet.offset - p.p;
        Rat d2 = dot(d, d);
        if (d2 > bound_sq) continue;
        if (seen.insert(d).second) cands.emplace_back(d2, d);
      }
    std::sort(cands.begin(), cands.end());
    for (const auto& [d2, d] : cands) {
      if (d == QPoint{}) {
        UnfoldedPath z;
        z.developed_segment = Segment{p.p, p.p};
        z.developed_polyline = {p.p};
        z.length_sq = Rat(0);
        out[i].push_back(z);
        continue;
      }
      for (const Sheet& sh : start_sheets(s, p, d)) {
        TraceResult tr = trace_segment(s, sh, p.p, d, depth);
        if (tr.ok && s.canonical(SurfacePoint{tr.end.polygon, tr.end_local}) == qc)
          out[i].push_back(path_from_trace(tr, p.p, d));
      }
    }
  }
  return out;
}

std::optional<UnfoldedPath> straight_distance(const TranslationSurface& s, const SurfacePoint& p,
                                              const SurfacePoint& q, int depth, const std::optional<Rat>& bound_sq) {
  SurfacePoint qc = s.canonical(q);
  for (const QPoint& d : candidate_displacements(s, p, s.representatives(q), depth, bound_sq)) {
    if (d == QPoint{}) {
      UnfoldedPath z;
      z.developed_segment = Segment{p.p, p.p};
      z.developed_polyline = {p.p};
      z.length_sq = Rat(0);
      return z;
    }
    for (const Sheet& sh : start_sheets(s, p, d)) {
      TraceResult tr = trace_segment(s, sh, p.p, d, depth);
      if (tr.ok && s.canonical(SurfacePoint{tr.end.polygon, tr.end_local}) == qc) return path_from_trace(tr, p.p, d);
    }
  }
  return std::nullopt;
}

namespace {

// sign of (sqrt(a) + sqrt(b) - sqrt(c)), exact
int sum_sqrt_cmp(const Rat& a, const Rat& b, const Rat& c) {
  Rat rest = c - a - b;
  if (rest.sign() < 0) return 1;
  Rat lhs = Rat(4) * a * b, rhs = rest * rest;
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

}  // namespace

DistanceResult unfold_distance(const TranslationSurface& s, const SurfacePoint& p, const SurfacePoint& q, int depth) {
  if (depth < 0) throw Error(ErrorCode::PointOutsidePolygons, "negative depth");
  s.locate(p.polygon, p.p);
  s.locate(q.polygon, q.p);
  DistanceResult res;
  res.upper_bound = std::numeric_limits<double>::infinity();
  if (s.canonical(p) == s.canonical(q)) {
    res.upper_bound = 0.0;
    res.length_sq = Rat(0);
    res.witness.developed_segment = Segment{p.p, p.p};
    res.witness.developed_polyline = {p.p};
    res.witness.length_sq = Rat(0);
    return res;
  }
  if (auto st = straight_distance(s, p, q, depth)) {
    res.length_sq = st->length_sq;
    res.upper_bound = st->length;
    res.witness = *st;
  }
  for (const auto& cp : s.cone_points()) {
    SurfacePoint c = s.class_point(cp.class_index);
    if (s.canonical(p) == c || s.canonical(q) == c) continue;
    std::optional<Rat> leg_bound = res.length_sq;
    auto a = straight_distance(s, p, c, depth, leg_bound);
    if (!a) continue;
    auto b = straight_distance(s, c, q, depth, leg_bound);
    if (!b) continue;
    const Rat& a2 = *a->length_sq;
    const Rat& b2 = *b->length_sq;
    bool better = res.length_sq ? sum_sqrt_cmp(a2, b2, *res.length_sq) < 0
                                : std::sqrt(a2.to_double()) + std::sqrt(b2.to_double()) < res.upper_bound;
    if (!better) continue;
    res.length_sq.reset();
    res.upper_bound = std::sqrt(a2.to_double()) + std::sqrt(b2.to_double());
    UnfoldedPath w;
    w.crossing_sequence = a->crossing_sequence;
    w.crossing_sequence.insert(w.crossing_sequence.end(), b->crossing_sequence.begin(), b->crossing_sequence.end());
    QPoint bend = a->developed_segment.b;
    QPoint leg = b->developed_segment.b - b->developed_segment.a;
    w.developed_segment = a->developed_segment;
    w.developed_polyline = {p.p, bend, bend + leg};
    w.length = res.upper_bound;
    res.witness = w;
  }
  return res;
}

std::vector<UnfoldedPath> saddle_connections(const TranslationSurface& s, const Rat& length_sq_bound, int depth) {
  if (s.cone_points().empty()) throw Error(ErrorCode::NoSingularities, "surface has no cone points");
  using Key = std::tuple<int, int, QPoint>;
  std::map<Key, UnfoldedPath> found;
  for (const auto& cp : s.cone_points()) {
    const int cls = cp.class_index;
    SurfacePoint sp = s.class_point(cls);
    for (const auto& copy : develop(s, sp, depth, length_sq_bound)) {
      const auto& verts = s.polygon(copy.sheet.polygon).vertices;
      for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
        int end_cls = s.vertex_class_of(copy.sheet.polygon, i);
        if (!s.is_cone_class(end_cls)) continue;
        QPoint d = verts[i] + copy.sheet.offset - sp.p;
        if (d == QPoint{} || dot(d, d) > length_sq_bound) continue;
        for (const Sheet& sh : start_sheets(s, sp, d)) {
          TraceResult tr = trace_segment(s, sh, sp.p, d, depth);
          if (!tr.ok) continue;
          PointLocation loc = s.locate(tr.end.polygon, tr.end_local);
          if (loc.kind != PointKind::Vertex) continue;
          int ec = s.vertex_class_of(tr.end.polygon, loc.index);
          if (!s.is_cone_class(ec)) continue;
          Corner start_corner{sh.polygon, -1};
          {
            const auto& sv = s.polygon(sh.polygon).vertices;
            for (int j = 0; j < static_cast<int>(sv.size()); ++j)
              if (sv[j] + sh.offset == sp.p) start_corner.vertex = j;
          }
          Corner end_corner{tr.end.polygon, loc.index};
          if (!corner_holds(s, end_corner, -d)) end_corner = s.next_corner(end_corner);
          Key fwd{cls, corner_index_in_class(s, cls, start_corner), d};
          Key rev{ec, corner_index_in_class(s, ec, end_corner), -d};
          Key key = std::min(fwd, rev);
          if (found.count(key)) continue;
          UnfoldedPath path = path_from_trace(tr, sp.p, d);
          path.start_class = cls;
          path.end_class = ec;
          found.emplace(key, std::move(path));
        }
      }
    }
  }
  std::vector<UnfoldedPath> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  std::stable_sort(out.begin(), out.end(),
                   [](const UnfoldedPath& a, const UnfoldedPath& b) { return *a.length_sq < *b.length_sq; });
  return out;
}

}  // namespace flatpack

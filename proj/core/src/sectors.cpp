#include "flatpack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace flatpack {

namespace {

struct SubSegment {
  QPoint a, b;
  int side = 0;
  bool inside = false;
};

// Parameters in (0, 1) where side a -> b meets the circle, sorted.
std::vector<Rat> side_hits(const QPoint& a, const QPoint& b, const QPoint& c, const Rat& r2) {
  QPoint d = b - a;
  Rat A = dot(d, d), B = dot(d, a - c), C = dot(a - c, a - c) - r2;
  Rat disc = B * B - A * C;
  std::vector<Rat> out;
  if (disc.sign() < 0) return out;
  auto keep = [&](const Rat& t) {
    if (t.sign() > 0 && t < Rat(1)) out.push_back(t);
  };
  if (disc.is_zero()) {
    keep(-B / A);
    return out;
  }
  auto root = disc.sqrt_exact();
  if (!root) {
    Rat vertex = -B / A;
    bool in0 = C.sign() <= 0, in1 = (A + B * Rat(2) + C).sign() <= 0;
    bool reaches = in0 != in1 || (!in0 && !in1 && vertex.sign() >= 0 && vertex <= Rat(1));
    if (reaches) {
      std::ostringstream os;
      os << "side " << a << " -> " << b << " meets the circle about " << c << " with r^2 = " << r2
         << " at an irrational point";
      throw Error(ErrorCode::IrrationalIntersection, os.str());
    }
    return out;
  }
  keep((-B - *root) / A);
  keep((-B + *root) / A);
  return out;
}

std::string point_text(const QPoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

std::optional<QPoint> rational_circle_point(const Rat& r2) {
  if (r2.sign() <= 0) return std::nullopt;
  if (auto r = r2.sqrt_exact()) return QPoint{*r, Rat(0)};
  if (auto h = (r2 / Rat(2)).sqrt_exact()) return QPoint{*h, *h};
  double r = std::sqrt(r2.to_double());
  for (long q = 1; q <= 400; ++q) {
    long top = static_cast<long>(std::floor(r * static_cast<double>(q)));
    for (long p = 1; p <= top; ++p) {
      Rat x(p, q);
      if (auto y = (r2 - x * x).sqrt_exact()) return QPoint{x, *y};
    }
  }
  return std::nullopt;
}

std::vector<PolygonalSector> disk_sectors(const TranslationSurface& s, int polygon, const QPoint& c,
                                          const Rat& r2) {
  const auto& v = s.polygon(polygon).vertices;
  const int n = static_cast<int>(v.size());
  std::vector<SubSegment> subs;
  for (int i = 0; i < n; ++i) {
    const QPoint& a = v[i];
    const QPoint& b = v[(i + 1) % n];
    std::vector<QPoint> pts{a};
    for (const Rat& t : side_hits(a, b, c, r2)) pts.push_back(a + (b - a) * t);
    pts.push_back(b);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      QPoint mid = (pts[k] + pts[k + 1]) * Rat(1, 2);
      subs.push_back(SubSegment{pts[k], pts[k + 1], i, squared_distance(mid, c) < r2});
    }
  }
  std::vector<PolygonalSector> out;
  const int m = static_cast<int>(subs.size());
  int inside_count = 0;
  for (const auto& sub : subs) inside_count += sub.inside ? 1 : 0;
  if (inside_count == m)
    throw Error(ErrorCode::NotASector, "polygon " + std::to_string(s.polygon(polygon).polygon_id) +
                                           " lies inside the disk about " + point_text(c));
  if (inside_count == 0) {
    if (!in_closed_polygon(c, v) || on_polygon_boundary(c, v)) return out;
    auto p = rational_circle_point(r2);
    if (!p) throw Error(ErrorCode::IrrationalIntersection, "no rational point found on a full circle");
    PolygonalSector sec;
    sec.polygon = polygon;
    sec.arc = Arc{c, r2, c + *p, c + *p, Orientation::CCW};
    out.push_back(sec);
    return out;
  }

  // Runs of inside sub-segments, starting right after an outside one.
  int first = 0;
  while (!(subs[first].inside && !subs[(first + m - 1) % m].inside)) ++first;
  struct Run {
    std::vector<SubSegment> subs;
    QPoint entry, exit;
  };
  std::vector<Run> runs;
  for (int k = 0; k < m; ++k) {
    const SubSegment& sub = subs[(first + k) % m];
    if (!sub.inside) continue;
    bool fresh = !subs[(first + k + m - 1) % m].inside;
    if (fresh) runs.push_back(Run{{}, sub.a, sub.a});
    runs.back().subs.push_back(sub);
    runs.back().exit = sub.b;
  }
  // From each exit the circle runs counter-clockwise to the next entry.
  const int r = static_cast<int>(runs.size());
  std::vector<int> next(r, -1);
  for (int j = 0; j < r; ++j) {
    QPoint base = runs[j].exit - c;
    for (int i = 0; i < r; ++i) {
      if (same_direction(runs[i].entry - c, base)) continue;
      if (next[j] < 0 || angle_less_from(base, runs[i].entry - c, runs[next[j]].entry - c)) next[j] = i;
    }
    if (next[j] < 0) next[j] = j;
  }
  std::vector<bool> seen(r, false);
  for (int j = 0; j < r; ++j) {
    if (seen[j]) continue;
    int len = 0;
    for (int i = j; !seen[i]; i = next[i]) {
      seen[i] = true;
      ++len;
    }
    if (len != 1)
      throw Error(ErrorCode::NotASector, "a component of polygon " + std::to_string(s.polygon(polygon).polygon_id) +
                                             " inside the disk about " + point_text(c) + " has " +
                                             std::to_string(len) + " arcs");
    PolygonalSector sec;
    sec.polygon = polygon;
    sec.arc = Arc{c, r2, runs[j].exit, runs[j].entry, Orientation::CCW};
    for (const auto& sub : runs[j].subs) {
      if (!sec.segment_sides.empty() && sec.segment_sides.back() == sub.side) {
        sec.boundary_segments.back().b = sub.b;
      } else {
        sec.boundary_segments.push_back(Segment{sub.a, sub.b});
        sec.segment_sides.push_back(sub.side);
      }
    }
    out.push_back(sec);
  }
  return out;
}

std::vector<PolygonalSector> torus_circle_sectors(const SlittedSurface& ss, int torus, const PlanarCircle& c) {
  const TorusLayout& lay = ss.layouts.at(torus);
  std::vector<QPoint> rect = {lay.origin, lay.origin + QPoint{lay.size.x, Rat(0)}, lay.origin + lay.size,
                              lay.origin + QPoint{Rat(0), lay.size.y}};
  double r = std::sqrt(c.radius_sq.to_double());
  int reach = static_cast<int>(std::ceil(r / std::min(lay.size.x.to_double(), lay.size.y.to_double()))) + 1;
  std::vector<PolygonalSector> out;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j) {
      QPoint z = c.center + QPoint{lay.size.x * Rat(i), lay.size.y * Rat(j)};
      if (point_polygon_distance_sq(z, rect) >= c.radius_sq) continue;
      for (int p = 0; p < ss.surface.polygon_count(); ++p) {
        if (ss.torus_of_polygon[p] != torus) continue;
        for (auto& sec : disk_sectors(ss.surface, p, z, c.radius_sq)) {
          sec.label = c.label;
          out.push_back(std::move(sec));
        }
      }
    }
  return out;
}

namespace {

Segment glued_image(const TranslationSurface& s, int polygon, int side, const Segment& seg) {
  QPoint off = s.partner_offset(polygon, side);
  return Segment{seg.a - off, seg.b - off};
}

bool same_segment(const Segment& x, const Segment& y) {
  return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
}

}  // namespace

SectorGraph sector_graph(const TranslationSurface& s, const std::vector<PolygonalSector>& sectors) {
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> on_side;  // (polygon, side) -> (sector, segment)
  for (int i = 0; i < static_cast<int>(sectors.size()); ++i)
    for (int k = 0; k < static_cast<int>(sectors[i].boundary_segments.size()); ++k)
      on_side[{sectors[i].polygon, sectors[i].segment_sides[k]}].push_back({i, k});
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(sectors.size()); ++i) {
    const auto& a = sectors[i];
    for (int k = 0; k < static_cast<int>(a.boundary_segments.size()); ++k) {
      auto [q, j] = s.partner(a.polygon, a.segment_sides[k]);
      Segment img = glued_image(s, a.polygon, a.segment_sides[k], a.boundary_segments[k]);
      auto it = on_side.find({q, j});
      if (it == on_side.end()) continue;
      for (auto [b, kb] : it->second)
        if (b != i && same_segment(img, sectors[b].boundary_segments[kb])) edges.insert({std::min(i, b), std::max(i, b)});
    }
  }
  SectorGraph g;
  g.vertex_count = static_cast<int>(sectors.size());
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<GeneralizedCircle> assemble_lenient(const TranslationSurface& s, const std::vector<PolygonalSector>& sectors,
                                                double eps_angle) {
  const int n = static_cast<int>(sectors.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : sector_graph(s, sectors).edges) parent[find(a)] = find(b);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> comps;
  for (auto& [root, members] : groups) comps.push_back(members);
  std::sort(comps.begin(), comps.end());

  std::vector<GeneralizedCircle> out;
  for (const auto& members : comps) {
    GeneralizedCircle gc;
    gc.id = static_cast<int>(out.size());
    gc.sectors = members;
    std::set<std::string> labels;
    for (int i : members)
      if (!sectors[i].label.empty()) labels.insert(sectors[i].label);
    for (const auto& l : labels) gc.label += (gc.label.empty() ? "" : "+") + l;
    gc.radius_sq = sectors[members.front()].arc.radius_sq;
    for (int i : members)
      if (sectors[i].arc.radius_sq != gc.radius_sq) gc.radius_ok = false;
    if (!gc.radius_ok) gc.problems.push_back("arcs of one class have different radii");

    // Chain arcs: the end of one arc is the start of the next.
    std::map<std::pair<int, QPoint>, std::vector<int>> by_start;
    auto key = [&](int polygon, const QPoint& p) {
      SurfacePoint cp = s.canonical(SurfacePoint{polygon, p});
      return std::pair<int, QPoint>{cp.polygon, cp.p};
    };
    for (int i : members) by_start[key(sectors[i].polygon, sectors[i].arc.start)].push_back(i);
    std::map<int, int> next;
    std::map<int, int> preds;
    for (int i : members) {
      auto it = by_start.find(key(sectors[i].polygon, sectors[i].arc.end));
      if (it == by_start.end() || it->second.size() != 1) {
        gc.chain_ok = false;
        continue;
      }
      next[i] = it->second.front();
      ++preds[it->second.front()];
    }
    for (int i : members)
      if (preds[i] != 1) gc.chain_ok = false;
    if (gc.chain_ok) {
      std::set<int> visited;
      int loops = 0;
      for (int i : members) {
        if (visited.count(i)) continue;
        ++loops;
        for (int x = i; !visited.count(x); x = next[x]) {
          visited.insert(x);
          gc.chain.push_back(x);
        }
      }
      if (loops != 1) {
        gc.chain_ok = false;
        gc.problems.push_back("arcs close up into " + std::to_string(loops) + " loops");
      }
    } else {
      gc.chain = members;
      gc.problems.push_back("arcs do not concatenate into closed loops");
    }

    for (int i : members) {
      gc.k += arc_wraps(sectors[i].arc);
      gc.angle_sum += arc_angle(sectors[i].arc);
    }
    if (gc.k < 1 || std::abs(gc.angle_sum - kTwoPi * gc.k) >= eps_angle) {
      gc.angle_ok = false;
      std::ostringstream os;
      os << "angle sum " << gc.angle_sum << " is not 2π·" << gc.k;
      gc.problems.push_back(os.str());
    }

    std::vector<SurfacePoint> centers;
    for (int i : members) {
      const auto& sec = sectors[i];
      if (!in_closed_polygon(sec.arc.center, s.polygon(sec.polygon).vertices)) continue;
      SurfacePoint cp = s.canonical(SurfacePoint{sec.polygon, sec.arc.center});
      if (std::find(centers.begin(), centers.end(), cp) == centers.end()) centers.push_back(cp);
    }
    gc.centers = centers;
    if (centers.size() == 1) {
      gc.center = centers.front();
    } else if (centers.empty()) {
      gc.problems.push_back("no sector contains its center");
    } else {
      gc.problems.push_back("the class has " + std::to_string(centers.size()) + " distinct centers");
    }
    out.push_back(std::move(gc));
  }
  return out;
}

std::vector<GeneralizedCircle> assemble_generalized_circles(const TranslationSurface& s,
                                                            const std::vector<PolygonalSector>& sectors,
                                                            double eps_angle) {
  auto circles = assemble_lenient(s, sectors, eps_angle);
  for (const auto& gc : circles) {
    if (!gc.chain_ok)
      throw Error(ErrorCode::ArcChainBroken, "circle " + std::to_string(gc.id) + ": " + gc.problems.front());
    if (!gc.angle_ok) {
      std::ostringstream os;
      os << "circle " << gc.id << ": angle sum " << gc.angle_sum;
      throw Error(ErrorCode::AngleSumNotMultiple, os.str());
    }
  }
  return circles;
}

Configuration make_configuration(TranslationSurface s, std::vector<PolygonalSector> sectors) {
  Configuration c;
  for (int i = 0; i < static_cast<int>(sectors.size()); ++i) sectors[i].sector_id = i;
  c.circles = assemble_lenient(s, sectors);
  c.surface = std::move(s);
  c.sectors = std::move(sectors);
  return c;
}

}  // namespace flatpack

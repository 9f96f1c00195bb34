#include "flatpack/builders.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace flatpack {

CombinatorialMap cell_map(const TranslationSurface& s) {
  std::map<std::pair<int, int>, int> edge_of;
  std::vector<std::vector<Dart>> faces;
  for (int p = 0; p < s.polygon_count(); ++p) {
    std::vector<Dart> f;
    for (int i = 0; i < static_cast<int>(s.polygon(p).vertices.size()); ++i) {
      std::pair<int, int> side{p, i}, other = s.partner(p, i);
      auto key = std::min(side, other);
      auto it = edge_of.emplace(key, static_cast<int>(edge_of.size())).first;
      f.push_back(Dart{it->second, key == side});
    }
    faces.push_back(f);
  }
  return map_from_faces(static_cast<int>(edge_of.size()), faces);
}

TranslationSurface make_torus() { return make_origami({{0, 0}}, {0}, {0}); }

TranslationSurface make_origami(const std::vector<std::pair<int, int>>& cells, const std::vector<int>& right,
                                const std::vector<int>& up) {
  std::vector<PolygonSpec> polys;
  std::vector<Identification> ids;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Rat x(cells[i].first), y(cells[i].second);
    polys.push_back(PolygonSpec{static_cast<int>(i),
                                {{x, y}, {x + Rat(1), y}, {x + Rat(1), y + Rat(1)}, {x, y + Rat(1)}}});
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ids.push_back({SideId{static_cast<int>(i), 1}, SideId{right[i], 3}});
    ids.push_back({SideId{static_cast<int>(i), 2}, SideId{up[i], 0}});
  }
  return build_surface(polys, ids);
}

TranslationSurface make_l_origami() {
  // three squares in a row, a fourth above the first whose top is glued to the bottom of the second
  return make_origami({{0, 0}, {1, 0}, {2, 0}, {0, 1}}, {1, 2, 0, 3}, {3, 0, 2, 1});
}

TranslationSurface make_rational_octagon() {
  std::vector<QPoint> v = {{Rat(1), Rat(0)}, {Rat(3), Rat(0)}, {Rat(4), Rat(1)}, {Rat(4), Rat(3)},
                           {Rat(3), Rat(4)}, {Rat(1), Rat(4)}, {Rat(0), Rat(3)}, {Rat(0), Rat(1)}};
  std::vector<Identification> ids;
  for (int i = 0; i < 4; ++i) ids.push_back({SideId{0, i}, SideId{0, i + 4}});
  return build_surface({PolygonSpec{0, v}}, ids);
}

namespace {

struct Square {
  QPoint lo, hi;
  bool on_boundary(const QPoint& p) const {
    bool inx = lo.x <= p.x && p.x <= hi.x, iny = lo.y <= p.y && p.y <= hi.y;
    return inx && iny && (p.x == lo.x || p.x == hi.x || p.y == lo.y || p.y == hi.y);
  }
  bool strictly_inside(const QPoint& p) const { return lo.x < p.x && p.x < hi.x && lo.y < p.y && p.y < hi.y; }
};

Square square_of(const TorusLayout& t) { return Square{t.origin, t.origin + t.size}; }

std::vector<Segment> pieces(const CutPolyline& c) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) out.push_back(Segment{c.points[i], c.points[i + 1]});
  return out;
}

// Throws when a polyline is malformed or two polylines touch.
void check_cuts(const Square& sq, const std::vector<CutPolyline>& cuts) {
  for (const auto& c : cuts) {
    if (c.points.size() < 2 || c.slit < 0 || c.slit + 1 >= static_cast<int>(c.points.size()))
      throw Error(ErrorCode::DegenerateSlit, "cut needs a slit segment between two points");
    if (c.points[c.slit] == c.points[c.slit + 1]) throw Error(ErrorCode::DegenerateSlit, "zero-length slit");
    if (!sq.on_boundary(c.points.front()) || !sq.on_boundary(c.points.back()))
      throw Error(ErrorCode::DegenerateSlit, "cut must start and end on the square boundary");
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i)
      if (!sq.strictly_inside(c.points[i])) throw Error(ErrorCode::DegenerateSlit, "cut interior must lie inside the square");
    auto segs = pieces(c);
    for (const auto& s : segs) {
      if (s.a == s.b) throw Error(ErrorCode::DegenerateSlit, "repeated cut point");
      QPoint mid = (s.a + s.b) * Rat(1, 2);
      if (!sq.strictly_inside(mid)) throw Error(ErrorCode::DegenerateSlit, "cut runs along the square boundary");
    }
    for (std::size_t i = 0; i < segs.size(); ++i)
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        Intersection x = segments_intersect(segs[i], segs[j]);
        if (std::holds_alternative<Disjoint>(x)) continue;
        if (j == i + 1 && std::holds_alternative<PointHit>(x) && std::get<PointHit>(x).p == segs[i].b) continue;
        throw Error(ErrorCode::SlitOverlap, "cut crosses itself");
      }
  }
  for (std::size_t a = 0; a < cuts.size(); ++a)
    for (std::size_t b = a + 1; b < cuts.size(); ++b)
      for (const auto& s : pieces(cuts[a]))
        for (const auto& t : pieces(cuts[b]))
          if (!std::holds_alternative<Disjoint>(segments_intersect(s, t)))
            throw Error(ErrorCode::SlitOverlap, "two cuts on one torus meet");
}

// Faces of the square subdivided by the cuts, each a counter-clockwise vertex cycle.
std::vector<std::vector<QPoint>> faces_of(const Square& sq, const std::vector<CutPolyline>& cuts) {
  std::set<QPoint> bpts = {sq.lo, {sq.hi.x, sq.lo.y}, sq.hi, {sq.lo.x, sq.hi.y}};
  for (const auto& c : cuts) {
    for (const QPoint& p : {c.points.front(), c.points.back()}) {
      bpts.insert(p);
      if (p.x == sq.lo.x) bpts.insert({sq.hi.x, p.y});
      if (p.x == sq.hi.x) bpts.insert({sq.lo.x, p.y});
      if (p.y == sq.lo.y) bpts.insert({p.x, sq.hi.y});
      if (p.y == sq.hi.y) bpts.insert({p.x, sq.lo.y});
    }
  }
  // perimeter order: bottom (x up), right (y up), top (x down), left (y down)
  auto perim = [&](const QPoint& p) {
    if (p.y == sq.lo.y && p.x < sq.hi.x) return std::pair<int, Rat>{0, p.x};
    if (p.x == sq.hi.x && p.y < sq.hi.y) return std::pair<int, Rat>{1, p.y};
    if (p.y == sq.hi.y && p.x > sq.lo.x) return std::pair<int, Rat>{2, -p.x};
    return std::pair<int, Rat>{3, -p.y};
  };
  std::vector<QPoint> ring(bpts.begin(), bpts.end());
  std::sort(ring.begin(), ring.end(), [&](const QPoint& a, const QPoint& b) { return perim(a) < perim(b); });

  std::map<QPoint, std::vector<QPoint>> adj;
  auto add = [&](const QPoint& a, const QPoint& b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t i = 0; i < ring.size(); ++i) add(ring[i], ring[(i + 1) % ring.size()]);
  for (const auto& c : cuts)
    for (const auto& s : pieces(c)) add(s.a, s.b);

  // next edge: first outgoing edge clockwise from the reversed incoming edge
  auto next = [&](const QPoint& u, const QPoint& v) {
    QPoint back = u - v;
    const QPoint* best = nullptr;
    for (const QPoint& w : adj[v]) {
      if (w == u && adj[v].size() > 1) continue;
      QPoint dw = w - v;
      // largest angle measured counter-clockwise from back, i.e. the first one clockwise
      if (!best || angle_less_from(back, *best - v, dw)) best = &w;
    }
    return *best;
  };

  std::set<std::pair<QPoint, QPoint>> used;
  std::vector<std::vector<QPoint>> faces;
  for (const auto& [u0, nbrs] : adj) {
    for (const QPoint& v0 : nbrs) {
      if (used.count({u0, v0})) continue;
      std::vector<QPoint> cyc;
      QPoint u = u0, v = v0;
      while (!used.count({u, v})) {
        used.insert({u, v});
        cyc.push_back(u);
        QPoint w = next(u, v);
        u = v;
        v = w;
      }
      if (signed_area2(cyc).sign() > 0) faces.push_back(std::move(cyc));
    }
  }
  return faces;
}

}  // namespace

SlittedSurface build_slitted(const std::vector<TorusLayout>& layouts, const std::vector<SlitGluing>& gluings) {
  SlittedSurface out;
  out.layouts = layouts;
  out.gluings = gluings;
  std::vector<PolygonSpec> polys;
  // directed edge (torus, a, b) -> (polygon index, edge index)
  std::map<std::tuple<int, QPoint, QPoint>, std::pair<int, int>> edge_at;
  for (int t = 0; t < static_cast<int>(layouts.size()); ++t) {
    Square sq = square_of(layouts[t]);
    check_cuts(sq, layouts[t].cuts);
    for (auto& f : faces_of(sq, layouts[t].cuts)) {
      int idx = static_cast<int>(polys.size());
      for (int i = 0; i < static_cast<int>(f.size()); ++i)
        edge_at[{t, f[i], f[(i + 1) % f.size()]}] = {idx, i};
      polys.push_back(PolygonSpec{idx, std::move(f)});
      out.torus_of_polygon.push_back(t);
    }
  }

  // slit partner lookup: (torus, cut) -> (torus, cut)
  std::map<std::pair<int, int>, std::pair<int, int>> slit_partner;
  for (const auto& g : gluings) {
    auto check = [&](int t, int c) {
      if (t < 0 || t >= static_cast<int>(layouts.size()) || c < 0 || c >= static_cast<int>(layouts[t].cuts.size()))
        throw Error(ErrorCode::WrongSlitCount, "slit gluing refers to a missing cut");
      if (slit_partner.count({t, c})) throw Error(ErrorCode::WrongSlitCount, "slit glued twice");
    };
    check(g.torus_a, g.cut_a);
    check(g.torus_b, g.cut_b);
    slit_partner[{g.torus_a, g.cut_a}] = {g.torus_b, g.cut_b};
    slit_partner[{g.torus_b, g.cut_b}] = {g.torus_a, g.cut_a};
  }

  std::vector<Identification> ids;
  for (int p = 0; p < static_cast<int>(polys.size()); ++p) {
    int t = out.torus_of_polygon[p];
    Square sq = square_of(layouts[t]);
    const auto& v = polys[p].vertices;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      QPoint a = v[i], b = v[(i + 1) % v.size()];
      std::tuple<int, QPoint, QPoint> key;
      if (a.x == b.x && (a.x == sq.lo.x || a.x == sq.hi.x)) {
        Rat dx = a.x == sq.lo.x ? sq.hi.x - sq.lo.x : sq.lo.x - sq.hi.x;
        key = {t, b + QPoint{dx, Rat(0)}, a + QPoint{dx, Rat(0)}};
      } else if (a.y == b.y && (a.y == sq.lo.y || a.y == sq.hi.y)) {
        Rat dy = a.y == sq.lo.y ? sq.hi.y - sq.lo.y : sq.lo.y - sq.hi.y;
        key = {t, b + QPoint{Rat(0), dy}, a + QPoint{Rat(0), dy}};
      } else {
        key = {t, b, a};
        for (int c = 0; c < static_cast<int>(layouts[t].cuts.size()); ++c) {
          Segment sl = layouts[t].cuts[c].slit_segment();
          bool fwd = (a == sl.a && b == sl.b), bwd = (a == sl.b && b == sl.a);
          if (!fwd && !bwd) continue;
          auto it = slit_partner.find({t, c});
          if (it == slit_partner.end()) break;
          auto [t2, c2] = it->second;
          Segment s2 = layouts[t2].cuts[c2].slit_segment();
          key = fwd ? std::tuple<int, QPoint, QPoint>{t2, s2.b, s2.a} : std::tuple<int, QPoint, QPoint>{t2, s2.a, s2.b};
          break;
        }
      }
      auto it = edge_at.find(key);
      if (it == edge_at.end()) throw Error(ErrorCode::UnmatchedSide, "slit layout produced an unmatched side");
      auto [q, j] = it->second;
      if (std::pair{p, i} < std::pair{q, j}) ids.push_back({SideId{p, i}, SideId{q, j}});
    }
  }
  out.surface = build_surface(polys, ids);
  return out;
}

std::vector<CutPolyline> default_cuts(const std::vector<Segment>& slits) {
  Square unit{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}};
  for (const auto& s : slits) {
    if (s.a == s.b) throw Error(ErrorCode::DegenerateSlit, "zero-length slit");
    if (!unit.strictly_inside(s.a) || !unit.strictly_inside(s.b))
      throw Error(ErrorCode::DegenerateSlit, "slit endpoints must lie inside the unit square");
  }
  for (std::size_t a = 0; a < slits.size(); ++a)
    for (std::size_t b = a + 1; b < slits.size(); ++b)
      if (!std::holds_alternative<Disjoint>(segments_intersect(slits[a], slits[b])))
        throw Error(ErrorCode::SlitOverlap, "slits on one torus intersect");

  auto ray = [&](const QPoint& p, int dir) -> QPoint {
    switch (dir) {
      case 0: return {Rat(0), p.y};
      case 1: return {Rat(1), p.y};
      case 2: return {p.x, Rat(0)};
      default: return {p.x, Rat(1)};
    }
  };
  std::vector<CutPolyline> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (k == slits.size()) return true;
    for (int da = 0; da < 4; ++da)
      for (int db = 0; db < 4; ++db) {
        CutPolyline c{{ray(slits[k].a, da), slits[k].a, slits[k].b, ray(slits[k].b, db)}, 1};
        chosen.push_back(c);
        bool ok = true;
        try {
          check_cuts(unit, chosen);
        } catch (const Error&) {
          ok = false;
        }
        if (ok && search(k + 1)) return true;
        chosen.pop_back();
      }
    return false;
  };
  if (!search(0)) throw Error(ErrorCode::SlitOverlap, "no disjoint connectors for the slits");
  return chosen;
}

SlittedSurface make_doubled_slit_layout(const Segment& slit) {
  auto cuts = default_cuts({slit});
  TorusLayout t{QPoint{}, QPoint{Rat(1), Rat(1)}, cuts};
  return build_slitted({t, t}, {SlitGluing{0, 0, 1, 0}});
}

TranslationSurface make_doubled_slit_torus(const Segment& slit) { return make_doubled_slit_layout(slit).surface; }

SlittedSurface make_slitted_layout(int g, const std::vector<SlitSpec>& slits) {
  if (g < 2) throw Error(ErrorCode::WrongSlitCount, "genus must be at least 2");
  if (static_cast<int>(slits.size()) != g - 1)
    throw Error(ErrorCode::WrongSlitCount, "expected " + std::to_string(g - 1) + " slits");
  std::vector<const SlitSpec*> by(g - 1, nullptr);
  for (const auto& s : slits) {
    if (s.torus_index < 0 || s.torus_index >= g - 1 || by[s.torus_index])
      throw Error(ErrorCode::WrongSlitCount, "slit torus indices must be 0..g-2, each once");
    by[s.torus_index] = &s;
  }
  std::vector<TorusLayout> layouts(g);
  std::vector<std::vector<int>> cut_of(g, std::vector<int>(g - 1, -1));
  for (int t = 0; t < g; ++t) {
    std::vector<Segment> mine;
    std::vector<int> which;
    if (t >= 1) {
      mine.push_back(by[t - 1]->segment);
      which.push_back(t - 1);
    }
    if (t <= g - 2) {
      mine.push_back(by[t]->segment);
      which.push_back(t);
    }
    layouts[t].cuts = default_cuts(mine);
    for (std::size_t k = 0; k < which.size(); ++k) cut_of[t][which[k]] = static_cast<int>(k);
  }
  std::vector<SlitGluing> gl;
  for (int i = 0; i + 1 < g; ++i) gl.push_back(SlitGluing{i, cut_of[i][i], i + 1, cut_of[i + 1][i]});
  return build_slitted(layouts, gl);
}

TranslationSurface make_slitted_surface(int g, const std::vector<SlitSpec>& slits) {
  return make_slitted_layout(g, slits).surface;
}

std::vector<SlitSpec> random_slits(int g, std::uint64_t seed, int den) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(1, den - 1);
  std::vector<SlitSpec> out;
  for (int i = 0; i + 1 < g; ++i) {
    for (;;) {
      Segment s{{Rat(coord(rng), den), Rat(coord(rng), den)}, {Rat(coord(rng), den), Rat(coord(rng), den)}};
      if (s.a == s.b) continue;
      std::vector<Segment> shared = {s};
      if (i > 0) shared.insert(shared.begin(), out.back().segment);
      try {
        default_cuts(shared);
      } catch (const Error&) {
        continue;
      }
      out.push_back(SlitSpec{i, s});
      break;
    }
  }
  return out;
}

}  // namespace flatpack

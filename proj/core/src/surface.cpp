#include "flatpack/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace flatpack {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnmatchedSide: return "UnmatchedSide";
    case ErrorCode::NonTranslationGluing: return "NonTranslationGluing";
    case ErrorCode::DoubleIdentification: return "DoubleIdentification";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::AngleNotMultiple: return "AngleNotMultiple";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
    case ErrorCode::PointOutsidePolygons: return "PointOutsidePolygons";
    case ErrorCode::NoSingularities: return "NoSingularities";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::ArcChainBroken: return "ArcChainBroken";
    case ErrorCode::AngleSumNotMultiple: return "AngleSumNotMultiple";
    case ErrorCode::IllegalRelation: return "IllegalRelation";
    case ErrorCode::OverlappingCircles: return "OverlappingCircles";
    case ErrorCode::IrrationalIntersection: return "IrrationalIntersection";
    case ErrorCode::NotASector: return "NotASector";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::SigmaFixedPoint: return "SigmaFixedPoint";
    case ErrorCode::NotAClosedWalk: return "NotAClosedWalk";
    case ErrorCode::StraddlingLoop: return "StraddlingLoop";
    case ErrorCode::OrderingImpossible: return "OrderingImpossible";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::MarkedBigonNotSplitting: return "MarkedBigonNotSplitting";
    case ErrorCode::DegenerateSlit: return "DegenerateSlit";
    case ErrorCode::SlitOverlap: return "SlitOverlap";
    case ErrorCode::WrongSlitCount: return "WrongSlitCount";
    case ErrorCode::ChainDoesNotFit: return "ChainDoesNotFit";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string side_str(const SideId& s) {
  std::ostringstream os;
  os << "(polygon " << s.polygon_id << ", edge " << s.edge_index << ")";
  return os.str();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int TranslationSurface::index_of(int polygon_id) const {
  auto it = index_of_.find(polygon_id);
  if (it == index_of_.end()) throw Error(ErrorCode::PointOutsidePolygons, "unknown polygon id " + std::to_string(polygon_id));
  return it->second;
}

const QPoint& TranslationSurface::vertex(int p, int i) const {
  const auto& v = polygons_[p].vertices;
  int n = static_cast<int>(v.size());
  return v[((i % n) + n) % n];
}

QPoint TranslationSurface::edge_vector(int p, int i) const { return vertex(p, i + 1) - vertex(p, i); }

QPoint TranslationSurface::partner_offset(int p, int e) const {
  auto [q, j] = partner_[p][e];
  return vertex(p, e + 1) - vertex(q, j);
}

Corner TranslationSurface::next_corner(Corner c) const {
  int n = static_cast<int>(polygons_[c.polygon].vertices.size());
  auto [q, j] = partner_[c.polygon][(c.vertex + n - 1) % n];
  return Corner{q, j};
}

TranslationSurface build_surface(const std::vector<PolygonSpec>& polygons,
                                 const std::vector<Identification>& identifications) {
  if (polygons.empty()) throw Error(ErrorCode::UnmatchedSide, "no polygons");
  TranslationSurface s;
  s.polygons_ = polygons;
  s.identifications_ = identifications;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const auto& poly = polygons[i];
    if (!s.index_of_.emplace(poly.polygon_id, static_cast<int>(i)).second)
      throw Error(ErrorCode::InvalidPolygon, "duplicate polygon id " + std::to_string(poly.polygon_id));
    if (poly.vertices.size() < 3 || !is_simple_polygon(poly.vertices))
      throw Error(ErrorCode::InvalidPolygon, "polygon " + std::to_string(poly.polygon_id) + " is not simple");
    if (signed_area2(poly.vertices).sign() <= 0)
      throw Error(ErrorCode::InvalidPolygon, "polygon " + std::to_string(poly.polygon_id) + " is not counter-clockwise");
  }

  const int np = static_cast<int>(polygons.size());
  s.partner_.resize(np);
  for (int p = 0; p < np; ++p) s.partner_[p].assign(polygons[p].vertices.size(), {-1, -1});

  auto resolve = [&](const SideId& id) {
    auto it = s.index_of_.find(id.polygon_id);
    if (it == s.index_of_.end() || id.edge_index < 0 ||
        id.edge_index >= static_cast<int>(polygons[it->second].vertices.size()))
      throw Error(ErrorCode::UnmatchedSide, "side " + side_str(id) + " does not exist");
    return std::pair<int, int>{it->second, id.edge_index};
  };

  for (const auto& ident : identifications) {
    auto [pa, ea] = resolve(ident.side_a);
    auto [pb, eb] = resolve(ident.side_b);
    if (pa == pb && ea == eb)
      throw Error(ErrorCode::NonTranslationGluing, "side " + side_str(ident.side_a) + " glued to itself");
    if (s.partner_[pa][ea].first >= 0) throw Error(ErrorCode::DoubleIdentification, "side " + side_str(ident.side_a));
    if (s.partner_[pb][eb].first >= 0) throw Error(ErrorCode::DoubleIdentification, "side " + side_str(ident.side_b));
    if (s.edge_vector(pa, ea) != -s.edge_vector(pb, eb))
      throw Error(ErrorCode::NonTranslationGluing,
                  "sides " + side_str(ident.side_a) + " and " + side_str(ident.side_b) + " are not opposite translates");
    s.partner_[pa][ea] = {pb, eb};
    s.partner_[pb][eb] = {pa, ea};
  }
  for (int p = 0; p < np; ++p)
    for (int e = 0; e < static_cast<int>(s.partner_[p].size()); ++e)
      if (s.partner_[p][e].first < 0)
        throw Error(ErrorCode::UnmatchedSide, "side " + side_str(SideId{polygons[p].polygon_id, e}) + " has no partner");

  UnionFind uf(np);
  for (int p = 0; p < np; ++p)
    for (const auto& [q, j] : s.partner_[p]) uf.unite(p, q);
  for (int p = 1; p < np; ++p)
    if (uf.find(p) != uf.find(0)) throw Error(ErrorCode::Disconnected, "glued complex has several components");

  // vertex classes by walking corners counter-clockwise
  s.vertex_class_.resize(np);
  for (int p = 0; p < np; ++p) s.vertex_class_[p].assign(polygons[p].vertices.size(), -1);
  for (int p = 0; p < np; ++p) {
    for (int i = 0; i < static_cast<int>(polygons[p].vertices.size()); ++i) {
      if (s.vertex_class_[p][i] >= 0) continue;
      VertexClass cls;
      int id = static_cast<int>(s.classes_.size());
      Corner c{p, i};
      do {
        s.vertex_class_[c.polygon][c.vertex] = id;
        cls.corners.push_back(c);
        QPoint out = s.edge_vector(c.polygon, c.vertex);
        QPoint back = s.vertex(c.polygon, c.vertex - 1) - s.vertex(c.polygon, c.vertex);
        cls.turns += sweep_wraps(out, back);
        cls.angle += ccw_angle(out, back);
        c = s.next_corner(c);
      } while (!(c == Corner{p, i}));
      s.classes_.push_back(std::move(cls));
    }
  }

  const int V = static_cast<int>(s.classes_.size());
  const int E = static_cast<int>(identifications.size());
  s.euler_ = V - E + np;

  for (int k = 0; k < V; ++k) {
    const auto& cls = s.classes_[k];
    if (cls.turns <= 1) continue;
    ConePoint cp;
    for (const auto& c : cls.corners) cp.vertex_class.emplace_back(polygons[c.polygon].polygon_id, c.vertex);
    cp.degree = cls.turns - 1;
    cp.angle = cls.angle;
    cp.class_index = k;
    s.cone_points_.push_back(std::move(cp));
  }
  // validates the numeric bookkeeping against the exact turn count
  cone_points(s);
  return s;
}

std::vector<ConePoint> cone_points(const TranslationSurface& s, double eps_angle) {
  for (const auto& cls : s.vertex_classes()) {
    if (cls.turns < 1 || std::abs(cls.angle - kTwoPi * cls.turns) > eps_angle * std::max(1, cls.turns)) {
      std::ostringstream os;
      os << "vertex class angle " << cls.angle << " is not " << cls.turns << " full turns";
      throw Error(ErrorCode::AngleNotMultiple, os.str());
    }
  }
  return s.cone_points();
}

std::vector<int> stratum(const TranslationSurface& s) {
  if (s.genus() < 2) throw Error(ErrorCode::GenusTooSmall, "genus " + std::to_string(s.genus()));
  std::vector<int> out;
  for (const auto& c : s.cone_points()) out.push_back(c.degree);
  std::sort(out.begin(), out.end());
  int sum = std::accumulate(out.begin(), out.end(), 0);
  if (sum != 2 * s.genus() - 2)
    throw Error(ErrorCode::AngleNotMultiple, "degree sum " + std::to_string(sum) + " differs from 2g-2");
  return out;
}

PointLocation TranslationSurface::locate(int polygon, const QPoint& p) const {
  const auto& v = polygons_[polygon].vertices;
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    if (v[i] == p) return {PointKind::Vertex, i};
  for (int i = 0; i < n; ++i)
    if (on_segment(p, Segment{v[i], v[(i + 1) % n]})) return {PointKind::Side, i};
  if (!in_closed_polygon(p, v)) {
    std::ostringstream os;
    os << "point " << p << " is outside polygon " << polygons_[polygon].polygon_id;
    throw Error(ErrorCode::PointOutsidePolygons, os.str());
  }
  return {PointKind::Interior, -1};
}

bool TranslationSurface::contains(int polygon, const QPoint& p) const {
  return polygon >= 0 && polygon < polygon_count() && in_closed_polygon(p, polygons_[polygon].vertices);
}

std::vector<SurfacePoint> TranslationSurface::representatives(const SurfacePoint& sp) const {
  if (sp.polygon < 0 || sp.polygon >= polygon_count())
    throw Error(ErrorCode::PointOutsidePolygons, "polygon index out of range");
  PointLocation loc = locate(sp.polygon, sp.p);
  switch (loc.kind) {
    case PointKind::Interior: return {sp};
    case PointKind::Side: {
      auto [q, j] = partner_[sp.polygon][loc.index];
      return {sp, SurfacePoint{q, sp.p - partner_offset(sp.polygon, loc.index)}};
    }
    case PointKind::Vertex: {
      std::vector<SurfacePoint> out;
      for (const auto& c : classes_[vertex_class_[sp.polygon][loc.index]].corners)
        out.push_back(SurfacePoint{c.polygon, vertex(c.polygon, c.vertex)});
      return out;
    }
  }
  return {sp};
}

SurfacePoint TranslationSurface::canonical(const SurfacePoint& sp) const {
  auto reps = representatives(sp);
  auto key = [&](const SurfacePoint& r) { return std::tie(polygons_[r.polygon].polygon_id, r.p); };
  return *std::min_element(reps.begin(), reps.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

SurfacePoint TranslationSurface::class_point(int cls) const {
  const Corner& c = classes_[cls].corners.front();
  return canonical(SurfacePoint{c.polygon, vertex(c.polygon, c.vertex)});
}

}  // namespace flatpack

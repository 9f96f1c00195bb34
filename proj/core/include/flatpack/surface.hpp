#pragma once

#include "flatpack/errors.hpp"
#include "flatpack/geom.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace flatpack {

struct PolygonSpec {
  int polygon_id = 0;
  std::vector<QPoint> vertices;  // CCW
};

struct SideId {
  int polygon_id = 0;
  int edge_index = 0;  // side from vertex i to i+1 mod n
  friend bool operator==(const SideId&, const SideId&) = default;
  friend auto operator<=>(const SideId&, const SideId&) = default;
};

struct Identification {
  SideId side_a, side_b;
};

// A corner of a polygon, addressed by polygon index (not id) and vertex index.
struct Corner {
  int polygon = 0;
  int vertex = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct VertexClass {
  std::vector<Corner> corners;  // in counter-clockwise order around the point
  int turns = 0;                // total angle / 2π, exact
  double angle = 0.0;           // numeric total angle
};

struct ConePoint {
  std::vector<std::pair<int, int>> vertex_class;  // (polygon_id, vertex_index)
  int degree = 0;                                  // total angle 2π(degree + 1)
  double angle = 0.0;
  int class_index = 0;                             // index into TranslationSurface::vertex_classes()
};

// A point of the surface given by a polygon index and local coordinates in that polygon.
struct SurfacePoint {
  int polygon = 0;
  QPoint p;
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

enum class PointKind { Interior, Side, Vertex };

struct PointLocation {
  PointKind kind = PointKind::Interior;
  int index = -1;  // side index or vertex index
};

class TranslationSurface {
public:
  const std::vector<PolygonSpec>& polygons() const { return polygons_; }
  const std::vector<Identification>& identifications() const { return identifications_; }
  int polygon_count() const { return static_cast<int>(polygons_.size()); }
  const PolygonSpec& polygon(int index) const { return polygons_[index]; }
  int index_of(int polygon_id) const;

  // Side glued to side e of polygon p, as (polygon index, edge index).
  std::pair<int, int> partner(int p, int e) const { return partner_[p][e]; }
  // Offset placing the partner polygon next to side e of p: partner-local + offset = p-local.
  QPoint partner_offset(int p, int e) const;

  const QPoint& vertex(int p, int i) const;
  QPoint edge_vector(int p, int i) const;
  Corner next_corner(Corner c) const;
  int vertex_class_of(int p, int i) const { return vertex_class_[p][i]; }
  const std::vector<VertexClass>& vertex_classes() const { return classes_; }
  bool is_cone_class(int cls) const { return classes_[cls].turns > 1; }
  const std::vector<ConePoint>& cone_points() const { return cone_points_; }

  int euler_characteristic() const { return euler_; }
  int genus() const { return (2 - euler_) / 2; }

  PointLocation locate(int polygon, const QPoint& p) const;
  bool contains(int polygon, const QPoint& p) const;
  // Every (polygon, local point) pair identified with sp.
  std::vector<SurfacePoint> representatives(const SurfacePoint& sp) const;
  // Lexicographically smallest representative by (polygon_id, x, y).
  SurfacePoint canonical(const SurfacePoint& sp) const;
  // The surface point of a vertex class, canonicalized.
  SurfacePoint class_point(int cls) const;

private:
  friend TranslationSurface build_surface(const std::vector<PolygonSpec>&, const std::vector<Identification>&);

  std::vector<PolygonSpec> polygons_;
  std::vector<Identification> identifications_;
  std::map<int, int> index_of_;
  std::vector<std::vector<std::pair<int, int>>> partner_;
  std::vector<std::vector<int>> vertex_class_;
  std::vector<VertexClass> classes_;
  std::vector<ConePoint> cone_points_;
  int euler_ = 0;
};

TranslationSurface build_surface(const std::vector<PolygonSpec>& polygons,
                                 const std::vector<Identification>& identifications);

// Cone points as computed at build time; re-validates the angle bookkeeping.
std::vector<ConePoint> cone_points(const TranslationSurface& s, double eps_angle = kDefaultEpsAngle);

// Sorted degree multiset. Throws GenusTooSmall when genus < 2.
std::vector<int> stratum(const TranslationSurface& s);

// ==== straight-line flow ====

// A polygon copy placed in the developed plane: developed = local + offset.
struct Sheet {
  int polygon = 0;
  QPoint offset;
  friend bool operator==(const Sheet&, const Sheet&) = default;
};

struct TraceResult {
  bool ok = false;               // the developed segment was followed to its end
  bool hit_cone_point = false;   // stopped at a cone point strictly inside the segment
  bool too_deep = false;         // stopped after exceeding the crossing budget
  Sheet end;                     // sheet holding the endpoint
  QPoint end_local;              // endpoint in local coordinates of end.polygon
  std::vector<SideId> crossings; // sides crossed, in order
  int vertex_transits = 0;       // regular vertices passed through
  int depth() const { return static_cast<int>(crossings.size()) + vertex_transits; }
};

// Sheets through which a ray from sp in direction d leaves its start point. A cone point yields
// one sheet per turn of its angle that contains d.
std::vector<Sheet> start_sheets(const TranslationSurface& s, const SurfacePoint& sp, const QPoint& d);

// Follows the segment origin -> origin + d, with origin given in developed coordinates of the
// start sheet. Stops on cone points met strictly inside the segment.
TraceResult trace_segment(const TranslationSurface& s, const Sheet& start, const QPoint& origin,
                          const QPoint& d, int max_depth);

// Polygon copies reachable from the sheets of sp through at most max_depth side crossings or
// regular-vertex transits, keeping only copies within squared distance bound of the origin
// (no bound when nullopt). Origin is sp.p in sp.polygon coordinates.
struct DevelopedCopy {
  Sheet sheet;
  int depth = 0;
};
std::vector<DevelopedCopy> develop(const TranslationSurface& s, const SurfacePoint& sp, int max_depth,
                                   const std::optional<Rat>& bound_sq);

// ==== metric ====

struct UnfoldedPath {
  std::vector<SideId> crossing_sequence;
  Segment developed_segment;            // first leg for multi-segment paths
  std::vector<QPoint> developed_polyline;  // every corner of the path, developed from the start
  std::optional<Rat> length_sq;         // set when the path is a single segment
  double length = 0.0;
  int start_class = -1, end_class = -1; // vertex classes for saddle connections
};

struct DistanceResult {
  double upper_bound = 0.0;
  std::optional<Rat> length_sq;  // exact when the witness is one straight segment
  UnfoldedPath witness;
};

// Shortest straight developed segment from p to q with at most `depth` crossings, if any.
std::optional<UnfoldedPath> straight_distance(const TranslationSurface& s, const SurfacePoint& p,
                                              const SurfacePoint& q, int depth,
                                              const std::optional<Rat>& bound_sq = std::nullopt);

// Every straight developed segment from p to q with at most `depth` crossings and squared
// length <= bound_sq, shortest first.
std::vector<UnfoldedPath> straight_paths(const TranslationSurface& s, const SurfacePoint& p,
                                         const SurfacePoint& q, int depth, const Rat& bound_sq);

// straight_paths from p to every target, developing p once.
std::vector<std::vector<UnfoldedPath>> straight_paths_to(const TranslationSurface& s, const SurfacePoint& p,
                                                         const std::vector<SurfacePoint>& targets, int depth,
                                                         const Rat& bound_sq);

// Upper bound on the quotient distance: the best of straight segments and of paths bending once
// at a cone point, each leg within `depth` crossings. Throws PointOutsidePolygons.
DistanceResult unfold_distance(const TranslationSurface& s, const SurfacePoint& p, const SurfacePoint& q,
                               int depth = 6);

std::vector<UnfoldedPath> saddle_connections(const TranslationSurface& s, const Rat& length_sq_bound, int depth);

}  // namespace flatpack

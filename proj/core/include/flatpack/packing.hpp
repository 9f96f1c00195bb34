#pragma once

#include "flatpack/builders.hpp"
#include "flatpack/surface.hpp"
#include "flatpack/topomap.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace flatpack {

// ==== sectors ====

// Closed region of one polygon bounded by a counter-clockwise arc (start -> end) followed by
// boundary segments running from arc.end back to arc.start along the polygon boundary.
struct PolygonalSector {
  int sector_id = 0;
  int polygon = 0;                       // polygon index
  std::vector<Segment> boundary_segments;
  std::vector<int> segment_sides;        // side index of each boundary segment
  Arc arc;                               // local coordinates of `polygon`
  std::string label;
};

// A round circle drawn in the plane of a torus fundamental rectangle.
struct PlanarCircle {
  QPoint center;
  Rat radius_sq;
  std::string label;
};

// Components of polygon ∩ disk(center, r2), each a sector. Full disks need a rational point on the
// circle. Throws IrrationalIntersection when a side meets the circle at an irrational point and
// NotASector when a component is not bounded by exactly one arc.
std::vector<PolygonalSector> disk_sectors(const TranslationSurface& s, int polygon, const QPoint& center,
                                          const Rat& radius_sq);

// Sectors of a circle drawn on torus `torus` of a slitted surface, including the copies of the
// circle translated by the torus periods.
std::vector<PolygonalSector> torus_circle_sectors(const SlittedSurface& ss, int torus, const PlanarCircle& c);

// A rational point on the circle of squared radius r2 about the origin, when one is found.
std::optional<QPoint> rational_circle_point(const Rat& r2);

struct SectorGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // sector positions, i < j
};

// Sectors are adjacent when a boundary segment of one is glued exactly onto a boundary segment of
// the other.
SectorGraph sector_graph(const TranslationSurface& s, const std::vector<PolygonalSector>& sectors);

// ==== circles ====

struct GeneralizedCircle {
  int id = 0;
  std::vector<int> sectors;          // positions in the configuration's sector list
  std::vector<int> chain;            // the same sectors in boundary order
  int k = 0;                         // combinatorial turns
  double angle_sum = 0.0;
  std::optional<SurfacePoint> center;  // canonical
  Rat radius_sq;
  std::string label;
  bool chain_ok = true;               // arcs concatenate into one closed loop
  bool angle_ok = true;               // angle sum is 2πk within tolerance
  bool radius_ok = true;              // every arc has the same squared radius
  std::vector<SurfacePoint> centers;  // distinct canonical centers found (one when well defined)
  std::vector<std::string> problems;
};

struct ConditionResult {
  bool pass = true;
  std::string witness;
};

struct VerificationReport {
  std::array<ConditionResult, 4> conditions;
  int depth = 0;
  bool checked = false;
  bool all_pass() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return checked;
  }
};

struct Configuration {
  TranslationSurface surface;
  std::vector<PolygonalSector> sectors;
  std::vector<GeneralizedCircle> circles;
  VerificationReport report;
};

// Connected components of the sector graph as generalized circles. Throws ArcChainBroken or
// AngleSumNotMultiple.
std::vector<GeneralizedCircle> assemble_generalized_circles(const TranslationSurface& s,
                                                            const std::vector<PolygonalSector>& sectors,
                                                            double eps_angle = kDefaultEpsAngle);

// Like assemble_generalized_circles but records problems on the circles instead of throwing.
std::vector<GeneralizedCircle> assemble_lenient(const TranslationSurface& s,
                                                const std::vector<PolygonalSector>& sectors,
                                                double eps_angle = kDefaultEpsAngle);

// Renumbers the sectors and assembles them leniently.
Configuration make_configuration(TranslationSurface s, std::vector<PolygonalSector> sectors);

VerificationReport verify_configuration(const Configuration& c, int depth = 6,
                                        double eps_angle = kDefaultEpsAngle);

// ==== slits ====

enum class SlitRelation { Disjoint, ThroughCenter, TwoPointCrossing };

std::string_view to_string(SlitRelation r);

// Exact relation between a slit and a planar circle. With `period` set, every translate of the
// circle by the period lattice near the slit is examined; the strongest relation wins. Throws
// IllegalRelation when a slit endpoint lies strictly inside a circle whose center is off the slit.
SlitRelation classify_slit_relation(const PlanarCircle& c, const Segment& slit,
                                    const std::optional<QPoint>& period = std::nullopt);

// ==== contacts ====

struct Tangency {
  int circle_a = 0, circle_b = 0;
  SurfacePoint point;  // canonical
  int edge = 0;
};

struct ContactsGraph {
  CombinatorialMap map;
  std::vector<int> circle_of_vertex;
  std::vector<int> vertex_of_circle;  // -1 for circles without tangencies
  std::vector<Tangency> tangencies;   // indexed by edge
  int circle_count = 0;
  int surface_euler = 0;
};

// Tangencies between arcs that share a polygon. Throws OverlappingCircles when two sectors'
// interiors meet and IrrationalIntersection when a tangency point is irrational.
ContactsGraph contacts_graph(const Configuration& c, int depth = 6);

struct TriangulationCheck {
  bool ok = false;
  std::vector<std::string> violations;
};

TriangulationCheck is_triangulation(const ContactsGraph& g);
// Face-shape and face-pair part of the check on a bare map.
TriangulationCheck faces_form_triangulation(const CombinatorialMap& m);

// Bigons whose two edges join the same two circles.
std::vector<std::pair<int, int>> tangency_bigons(const ContactsGraph& g);

// ==== slit chains ====

struct TorusPacking {
  QPoint origin;
  QPoint size{Rat(1), Rat(1)};
  std::vector<PlanarCircle> circles;
};

// The packing as a configuration on its own torus.
Configuration torus_configuration(const TorusPacking& p);

// Both packings on the doubled slit torus cut along `cuts` (the same cut on each torus), the
// slit glued crosswise.
Configuration doubled_configuration(const TorusPacking& p, const TorusPacking& q, const CutPolyline& cut);

struct TriangpropResult {
  bool hypotheses = false;
  bool conclusion = false;
  std::vector<std::string> notes;
};

// Hypotheses: each torus packing triangulates its torus, both slit ends are circle centers of
// both packings, and every slit point lies in a closed disk of each packing. Conclusion: the
// combined packing on the doubled slit torus triangulates it.
TriangpropResult check_triangprop(const TorusPacking& p, const TorusPacking& q, const CutPolyline& cut,
                                  int depth = 6);

}  // namespace flatpack

#pragma once

#include "flatpack/surface.hpp"
#include "flatpack/topomap.hpp"

#include <cstdint>
#include <vector>

namespace flatpack {

// ==== plain surfaces ====

TranslationSurface make_torus();

// Square-tiled surface: square i sits at cells[i]; right[i] / up[i] name the square glued to its
// right / top side.
TranslationSurface make_origami(const std::vector<std::pair<int, int>>& cells, const std::vector<int>& right,
                                const std::vector<int>& up);

// Four-square L-shaped origami in H(1,1).
TranslationSurface make_l_origami();

// Centrally symmetric octagon with rational vertices, opposite sides glued.
TranslationSurface make_rational_octagon();

// The polygons as faces of an embedded graph: one edge per glued side pair.
CombinatorialMap cell_map(const TranslationSurface& s);

// ==== slit tori ====

// A cut running from the boundary of a torus fundamental square to its boundary. The segment
// points[slit]..points[slit + 1] is a slit; the rest are connectors glued to themselves.
struct CutPolyline {
  std::vector<QPoint> points;
  int slit = 0;
  Segment slit_segment() const { return Segment{points[slit], points[slit + 1]}; }
};

// Fundamental rectangle [origin, origin + size] of one torus and the cuts drawn on it.
struct TorusLayout {
  QPoint origin;
  QPoint size{Rat(1), Rat(1)};
  std::vector<CutPolyline> cuts;
};

// The slit of cut_a on torus_a is glued crosswise to the slit of cut_b on torus_b.
struct SlitGluing {
  int torus_a = 0, cut_a = 0;
  int torus_b = 0, cut_b = 0;
};

struct SlittedSurface {
  TranslationSurface surface;
  std::vector<TorusLayout> layouts;
  std::vector<SlitGluing> gluings;
  std::vector<int> torus_of_polygon;  // by polygon index
};

// Cuts each torus square along its polylines, glues connectors to themselves, square sides by
// translation and slits crosswise. Throws DegenerateSlit / SlitOverlap on bad cuts.
SlittedSurface build_slitted(const std::vector<TorusLayout>& layouts, const std::vector<SlitGluing>& gluings);

struct SlitSpec {
  int torus_index = 0;  // the slit joins torus torus_index and torus_index + 1
  Segment segment;      // inside the unit square
};

// Axis-parallel connectors from the slit ends to the square boundary, chosen so all cuts on a
// torus stay disjoint. Throws DegenerateSlit or SlitOverlap.
std::vector<CutPolyline> default_cuts(const std::vector<Segment>& slits);

SlittedSurface make_doubled_slit_layout(const Segment& slit);
TranslationSurface make_doubled_slit_torus(const Segment& slit);

// g tori chained along g-1 slits; slit i joins torus i and i+1 at the same coordinates.
SlittedSurface make_slitted_layout(int g, const std::vector<SlitSpec>& slits);
TranslationSurface make_slitted_surface(int g, const std::vector<SlitSpec>& slits);

// Random admissible slits with coordinates k/den (den <= 32) for a genus-g slitted surface.
std::vector<SlitSpec> random_slits(int g, std::uint64_t seed, int den = 32);

}  // namespace flatpack

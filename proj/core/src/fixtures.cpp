#include "flatpack/fixtures.hpp"

#include <algorithm>

namespace flatpack {

namespace {

QPoint pt(long x, long xd, long y, long yd) { return QPoint{Rat(x, xd), Rat(y, yd)}; }

}  // namespace

// ==== chains ====

ChainPacking make_chain_packing(int k, const ChainOptions& options) {
  if (k < 2) throw Error(ErrorCode::ChainDoesNotFit, "a chain needs at least two circles");
  const Rat& s = options.scale;
  if (s.sign() <= 0) throw Error(ErrorCode::ChainDoesNotFit, "scale must be positive");
  int columns = std::max(4, k + 1);
  if (options.torus) {
    Rat w = options.torus->x / s, h = options.torus->y / (s * Rat(8, 3));
    if (!w.is_integer() || !h.is_integer() || w < Rat(columns) || h < Rat(1))
      throw Error(ErrorCode::ChainDoesNotFit, "a chain of " + std::to_string(k) + " circles of radius " +
                                                  (s / Rat(2)).str() + " does not fit the torus");
    columns = static_cast<int>(w.num().get_si());
  }
  ChainPacking out;
  out.k = k;
  // Rows of radius-1/2 circles at heights 0 and 4/3 (unscaled), radius-1/3 circles between row
  // neighbours and radius-1/6 circles above and below each row circle.
  out.torus.origin = QPoint{Rat(0), s * Rat(2, 3)};
  out.torus.size = QPoint{s * Rat(columns), s * Rat(8, 3)};
  for (int band = 0; band < 2; ++band) {
    Rat y0 = Rat(4, 3) * Rat(band);
    for (int i = 0; i < columns; ++i) {
      std::string tag = std::to_string(i) + "." + std::to_string(band);
      out.torus.circles.push_back(PlanarCircle{QPoint{Rat(i), y0} * s, s * s / Rat(4), "A" + tag});
      out.torus.circles.push_back(PlanarCircle{QPoint{Rat(i) + Rat(1, 2), y0 + Rat(2, 3)} * s, s * s / Rat(9), "B" + tag});
      out.torus.circles.push_back(PlanarCircle{QPoint{Rat(i), y0 + Rat(2, 3)} * s, s * s / Rat(36), "D" + tag});
    }
  }
  // The slit runs along the row at height 8/3; connectors climb to the top side through the small circles.
  Rat top = s * Rat(10, 3), row = s * Rat(8, 3);
  out.cut.points = {QPoint{s, top}, QPoint{s, row}, QPoint{s * Rat(k), row}, QPoint{s * Rat(k), top}};
  out.cut.slit = 1;
  for (int i = 1; i <= k; ++i) out.chain.push_back("A" + std::to_string(i) + ".0");
  return out;
}

Configuration chain_configuration(const ChainPacking& c) { return doubled_configuration(c.torus, c.torus, c.cut); }

// ==== figures ====

std::string_view to_string(FigureId f) {
  switch (f) {
    case FigureId::TwoCircleTorus: return "two-circle-torus";
    case FigureId::SlitCrossesCircle: return "slit-crosses-circle";
    case FigureId::SlitFromCenter: return "slit-from-center";
    case FigureId::SlitThroughCenters: return "slit-through-centers";
    case FigureId::TiltedSlit: return "tilted-slit";
    case FigureId::ThreeRadii: return "three-radii";
  }
  return "?";
}

std::vector<FigureId> all_figures() {
  return {FigureId::TwoCircleTorus, FigureId::SlitCrossesCircle, FigureId::SlitFromCenter,
          FigureId::SlitThroughCenters, FigureId::TiltedSlit, FigureId::ThreeRadii};
}

namespace {

// Corner circle of squared radius 2a^2 and center circle of squared radius 2(1/2 - a)^2; they touch
// four times.
TorusPacking two_circle_torus(const Rat& a, const QPoint& origin, const std::string& suffix) {
  Rat b = Rat(1, 2) - a;
  TorusPacking t;
  t.origin = origin;
  t.circles = {PlanarCircle{QPoint{}, Rat(2) * a * a, "P" + suffix},
               PlanarCircle{pt(1, 2, 1, 2), Rat(2) * b * b, "Y" + suffix}};
  return t;
}

}  // namespace

FigureFixture make_figure(FigureId id) {
  FigureFixture f;
  f.id = id;
  f.name = std::string(to_string(id));
  const Rat quarter(1, 4);
  // With a = 1/4 the sides x, y = -1/20 meet the corner circle at (+-7/20, -1/20).
  const QPoint shifted = pt(-1, 20, -1, 20);
  switch (id) {
    case FigureId::TwoCircleTorus:
      f.first = two_circle_torus(quarter, shifted, "0");
      f.configuration = torus_configuration(f.first);
      f.expected_contacts = {{"P0", "Y0"}};
      return f;
    case FigureId::SlitCrossesCircle: {
      // a = 27/104: the slit line y = 57/104 meets the center circle at x = 1/2 +- 35/104, and the
      // sides x, y = 27/520 meet the corner circle rationally.
      Rat a(27, 104);
      QPoint o = pt(27, 520, 27, 520);
      f.first = two_circle_torus(a, o, "0");
      f.second = two_circle_torus(a, o, "1");
      Rat y(57, 104);
      f.cut = CutPolyline{{QPoint{o.x, y}, QPoint{Rat(1, 10), y}, QPoint{Rat(9, 10), y}, QPoint{o.x + Rat(1), y}}, 1};
      f.expected_contacts = {{"Y0+Y1", "P0"}, {"Y0+Y1", "P1"}};
      break;
    }
    case FigureId::SlitFromCenter: {
      // The slit leaves the center circle's center in direction (7, 1), crossing its boundary at
      // (17/20, 11/20), and ends in an interstice; the first connector continues the line backwards.
      f.first = two_circle_torus(quarter, shifted, "0");
      f.second = two_circle_torus(quarter, shifted, "1");
      f.cut = CutPolyline{{pt(-1, 20, 59, 140), pt(1, 2, 1, 2), pt(15, 16, 9, 16), pt(19, 20, 9, 16)}, 1};
      f.expected_contacts = {{"Y0+Y1", "P0"}, {"Y0+Y1", "P1"}};
      break;
    }
    case FigureId::SlitThroughCenters: {
      // The slit joins the corner circle's center to the center circle's center along the diagonal.
      f.first = two_circle_torus(quarter, shifted, "0");
      f.second = two_circle_torus(quarter, shifted, "1");
      f.cut = CutPolyline{{pt(0, 1, -1, 20), pt(0, 1, 0, 1), pt(1, 2, 1, 2), pt(61, 140, 19, 20)}, 1};
      f.expected_contacts = {{"Y0+Y1", "P0+P1"}};
      break;
    }
    case FigureId::TiltedSlit: {
      // From the corner center in direction (7, 1) out of the corner circle at (7/20, 1/20) into
      // the interstice beside it.
      f.first = two_circle_torus(quarter, shifted, "0");
      f.second = two_circle_torus(quarter, shifted, "1");
      f.cut = CutPolyline{{pt(0, 1, -1, 20), pt(0, 1, 0, 1), pt(7, 16, 1, 16), pt(7, 16, -1, 20)}, 1};
      f.expected_contacts = {{"Y0", "P0+P1"}, {"Y1", "P0+P1"}};
      break;
    }
    case FigureId::ThreeRadii: {
      // a = 27/104: direction (17, 7) leaves the corner circle at t = 27/1352 and crosses the center
      // circle at t = 858/35152 and 1638/35152 before reaching the far interstice. The sides
      // x, y = -27/17576 meet the corner circle at height +-27*239/17576.
      Rat a(27, 104);
      QPoint o = pt(-27, 17576, -27, 17576);
      f.first = two_circle_torus(a, o, "0");
      f.second = two_circle_torus(a, o, "1");
      QPoint q = pt(19, 20, 133, 340);
      f.cut = CutPolyline{{QPoint{Rat(0), o.y}, QPoint{}, q, QPoint{o.x + Rat(1), q.y}}, 1};
      f.expected_contacts = {{"Y0+Y1", "P0+P1"}};
      break;
    }
  }
  f.configuration = doubled_configuration(f.first, f.second, *f.cut);
  return f;
}

ForbiddenFixture make_forbidden_slit_circle() {
  ForbiddenFixture f;
  f.torus = two_circle_torus(Rat(1, 4), pt(-1, 20, -1, 20), "");
  f.circle = f.torus.circles[1];
  // The slit starts halfway between the center circle's center and its boundary and leaves in
  // direction (7, 1); the connector runs back through the center.
  f.cut = CutPolyline{{pt(-1, 20, 59, 140), pt(27, 40, 21, 40), pt(15, 16, 9, 16), pt(19, 20, 9, 16)}, 1};
  f.configuration = doubled_configuration(f.torus, f.torus, f.cut);
  return f;
}

Configuration make_unmatched_half_disk() {
  std::vector<PolygonSpec> polys = {
      PolygonSpec{0, {pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 2, 1, 1), pt(0, 1, 1, 1)}},
      PolygonSpec{1, {pt(1, 2, 0, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1), pt(1, 2, 1, 1)}},
  };
  std::vector<Identification> ids = {
      {SideId{0, 1}, SideId{1, 3}}, {SideId{1, 1}, SideId{0, 3}}, {SideId{0, 0}, SideId{0, 2}}, {SideId{1, 0}, SideId{1, 2}}};
  TranslationSurface s = build_surface(polys, ids);
  auto sectors = disk_sectors(s, 0, pt(1, 2, 1, 2), Rat(1, 16));
  return make_configuration(std::move(s), std::move(sectors));
}

}  // namespace flatpack

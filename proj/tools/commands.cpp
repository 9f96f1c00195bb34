#include "commands.hpp"

#include "flatpack/builders.hpp"
#include "flatpack/fixtures.hpp"
#include "flatpack/trigen.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace flatpack::cli {

using json = nlohmann::ordered_json;

namespace {

json point_json(const QPoint& p) { return json::array({p.x.str(), p.y.str()}); }

json bigon_json(const Bigon& b) { return json{{"v1", b.v1}, {"v2", b.v2}, {"e1", b.e1}, {"e2", b.e2}}; }

std::string angle_text(int turns) { return std::to_string(2 * turns) + "π"; }

// The map a bigon command works on: the raw block when present, else the contacts graph, else the
// polygons as faces.
struct MapSource {
  CombinatorialMap map;
  std::string source;
};

MapSource map_source(const Document& d, const Options& o) {
  if (d.map) return {document_map(*d.map), "map"};
  if (!d.has_configuration) return {cell_map(document_surface(d)), "cells"};
  Configuration c = document_configuration(d, document_surface(d));
  return {contacts_graph(c, o.depth).map, "contacts"};
}

}  // namespace

Report cmd_validate(const Document& d, const Options& o) {
  Report r;
  r.body["command"] = "validate";
  if (!d.name.empty()) r.body["document"] = d.name;
  std::optional<TranslationSurface> s;
  try {
    s = document_surface(d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    r.body["surface"] = {{"valid", false}, {"error", e.what()}};
    r.exit_code = 1;
    return r;
  }
  json surf{{"valid", true},
            {"polygons", s->polygon_count()},
            {"euler_characteristic", s->euler_characteristic()},
            {"genus", s->genus()}};
  json cones = json::array();
  for (const auto& cp : cone_points(*s, o.eps_angle)) {
    SurfacePoint p = s->class_point(cp.class_index);
    cones.push_back({{"degree", cp.degree},
                     {"angle", angle_text(cp.degree + 1)},
                     {"polygon", s->polygon(p.polygon).polygon_id},
                     {"point", point_json(p.p)}});
  }
  surf["cone_points"] = cones;
  if (s->genus() >= 2) surf["stratum"] = stratum(*s);
  r.body["surface"] = surf;
  if (!d.has_configuration) return r;

  Configuration c = document_configuration(d, *s);
  json circles = json::array();
  for (const auto& gc : c.circles) {
    json e{{"id", gc.id}, {"label", gc.label}, {"k", gc.k}, {"radius_sq", gc.radius_sq.str()},
           {"sectors", gc.sectors.size()}};
    if (gc.center)
      e["center"] = {{"polygon", c.surface.polygon(gc.center->polygon).polygon_id}, {"point", point_json(gc.center->p)}};
    circles.push_back(e);
  }
  VerificationReport v = verify_configuration(c, o.depth, o.eps_angle);
  json conds = json::array();
  for (int i = 0; i < 4; ++i) {
    json e{{"condition", i + 1}, {"pass", v.conditions[i].pass}};
    if (!v.conditions[i].pass) e["witness"] = v.conditions[i].witness;
    conds.push_back(e);
  }
  r.body["configuration"] = {{"sectors", c.sectors.size()}, {"circles", circles}, {"depth", v.depth}, {"conditions", conds}};
  if (!v.all_pass()) {
    r.exit_code = 1;
    return r;
  }
  try {
    ContactsGraph g = contacts_graph(c, o.depth);
    TriangulationCheck t = is_triangulation(g);
    r.body["contacts"] = {{"vertices", g.map.vertex_count()},
                          {"edges", g.map.edge_count()},
                          {"faces", g.map.face_count()},
                          {"triangulation", t.ok},
                          {"violations", t.violations}};
  } catch (const Error& e) {
    r.body["contacts"] = {{"error", e.what()}};
    r.exit_code = 1;
  }
  return r;
}

Report cmd_bigons(const Document& d, const Options& o) {
  Report r;
  r.body["command"] = "bigons";
  if (!d.name.empty()) r.body["document"] = d.name;
  MapSource ms = map_source(d, o);
  const CombinatorialMap& m = ms.map;
  r.body["source"] = ms.source;
  r.body["map"] = {{"vertices", m.vertex_count()}, {"edges", m.edge_count()}, {"faces", m.face_count()},
                   {"genus", m.connected() ? m.genus() : -1}};
  json list = json::array();
  for (const auto& b : find_bigons(m)) {
    json e = bigon_json(b);
    e["splitting"] = is_splitting(m, b);
    e["removal_components"] = removal_components(m, b);
    list.push_back(e);
  }
  r.body["bigons"] = list;
  auto split = splitting_bigons(m);
  r.body["splitting_bigons"] = split.size();
  if (split.empty()) return r;
  try {
    json order = json::array();
    for (const auto& ob : order_splitting_bigons(m)) {
      json e = bigon_json(ob.bigon);
      e["x"] = ob.x;
      e["y"] = ob.y;
      order.push_back(e);
    }
    r.body["ordering"] = order;
    if (split.size() <= 6) r.body["valid_orderings"] = count_valid_orderings(m, split);
    SplitDecomposition dec = decompose(m);
    json pieces = json::array();
    for (std::size_t i = 0; i < dec.pieces.size(); ++i)
      pieces.push_back({{"piece", i}, {"genus", dec.pieces[i].genus}, {"boundary_bigons", dec.piece_bounds[i]}});
    r.body["pieces"] = pieces;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OrderingImpossible && e.code() != ErrorCode::DecompositionMismatch) throw;
    r.body["error"] = e.what();
    r.exit_code = 1;
  }
  return r;
}

Report cmd_enumerate(const Document& d, const Options& o) {
  Report r;
  r.body["command"] = "enumerate";
  if (!d.name.empty()) r.body["document"] = d.name;
  MapSource ms = map_source(d, o);
  const CombinatorialMap& m = ms.map;
  if (d.marks.bigons.empty()) throw Error(ErrorCode::SchemaError, "/marks/bigons: no marked slit bigons");
  std::vector<Bigon> marked;
  for (auto [e1, e2] : d.marks.bigons) {
    if (e1 < 0 || e2 < 0 || e1 >= m.edge_count() || e2 >= m.edge_count() || e1 == e2)
      throw Error(ErrorCode::SchemaError, "/marks/bigons: bad edge pair");
    marked.push_back(make_bigon(m, e1, e2));
  }
  int g = d.marks.genus.value_or(static_cast<int>(marked.size()) + 1);
  r.body["source"] = ms.source;
  r.body["genus"] = g;
  try {
    RepackingReport rep = enumerate_repackings(m, marked, g);
    json cands = json::array();
    for (const auto& c : rep.candidates) {
      json assign = json::array();
      for (const auto& b : c.slit_assignment) assign.push_back(bigon_json(b));
      cands.push_back({{"slits", assign},
                       {"orientation", c.orientation == RepackOrientation::Forward ? "forward" : "reversed"}});
    }
    bool within = static_cast<int>(rep.candidates.size()) <= rep.bound;
    r.body["level_sizes"] = rep.level_sizes;
    r.body["assignments_tried"] = rep.assignments_tried;
    r.body["count"] = rep.candidates.size();
    r.body["bound"] = rep.bound;
    r.body["within_bound"] = within;
    r.body["candidates"] = cands;
    if (!within) r.exit_code = 1;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MarkedBigonNotSplitting) throw;
    r.body["error"] = e.what();
    r.exit_code = 1;
  }
  return r;
}

// ==== text output ====

namespace {

void text_lines(const json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    std::string key = j.is_array() ? "-" : it.key() + ":";
    if (v.is_structured() && !v.empty()) {
      bool flat = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
      if (flat) {
        os << indent << key << " " << v.dump() << "\n";
      } else {
        os << indent << key << "\n";
        text_lines(v, indent + "  ", os);
      }
    } else {
      os << indent << key << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

std::string format_text(const json& body) {
  std::ostringstream os;
  text_lines(body, "", os);
  return os.str();
}

// ==== rendering ====

namespace {

const char* const kSideColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                   "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};
const char* const kCircleColors[] = {"#f2c94c", "#6fcf97", "#bb6bd9", "#f2994a", "#56ccf2", "#eb5757",
                                     "#9b51e0", "#27ae60", "#2f80ed", "#f299c2", "#828282", "#219653"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

struct Canvas {
  double minx = 0, maxy = 0, scale = 1, margin = 20;
  std::string x(double v) const { return num((v - minx) * scale + margin); }
  std::string y(double v) const { return num((maxy - v) * scale + margin); }
};

}  // namespace

std::string render_svg(const Document& d, const Options&) {
  TranslationSurface s = document_surface(d);
  std::optional<Configuration> c;
  if (d.has_configuration) c = document_configuration(d, s);
  auto offset = [&](int polygon_id) {
    auto it = d.offsets.find(polygon_id);
    return it == d.offsets.end() ? QPoint{} : it->second;
  };
  auto placed = [&](int index, const QPoint& p) {
    QPoint q = p + offset(s.polygon(index).polygon_id);
    return std::pair{q.x.to_double(), q.y.to_double()};
  };
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (int i = 0; i < s.polygon_count(); ++i)
    for (const auto& v : s.polygon(i).vertices) {
      auto [x, y] = placed(i, v);
      minx = std::min(minx, x), maxx = std::max(maxx, x), miny = std::min(miny, y), maxy = std::max(maxy, y);
    }
  Canvas cv;
  cv.minx = minx;
  cv.maxy = maxy;
  double span = std::max(maxx - minx, maxy - miny);
  cv.scale = span > 0 ? 760.0 / span : 1.0;
  double width = (maxx - minx) * cv.scale + 2 * cv.margin, height = (maxy - miny) * cv.scale + 2 * cv.margin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  if (!d.name.empty()) os << "<title>" << d.name << "</title>\n";

  os << "<g class=\"polygons\">\n";
  for (int i = 0; i < s.polygon_count(); ++i) {
    os << "<polygon fill=\"#f5f5f5\" stroke=\"none\" points=\"";
    const auto& vs = s.polygon(i).vertices;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      auto [x, y] = placed(i, vs[k]);
      os << (k ? " " : "") << cv.x(x) << "," << cv.y(y);
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  if (c) {
    os << "<g class=\"circles\" fill-opacity=\"0.75\">\n";
    std::vector<int> cls(c->sectors.size(), 0);
    for (const auto& gc : c->circles)
      for (int i : gc.sectors) cls[i] = gc.id;
    for (std::size_t i = 0; i < c->sectors.size(); ++i) {
      const auto& sec = c->sectors[i];
      double r = std::sqrt(sec.arc.radius_sq.to_double()) * cv.scale;
      auto [sx, sy] = placed(sec.polygon, sec.arc.start);
      auto [ex, ey] = placed(sec.polygon, sec.arc.end);
      os << "<path class=\"circle-" << cls[i] << "\" fill=\""
         << kCircleColors[cls[i] % std::size(kCircleColors)] << "\" stroke=\"#333333\" stroke-width=\"0.8\" d=\"M "
         << cv.x(sx) << " " << cv.y(sy);
      if (sec.arc.start == sec.arc.end) {
        auto [mx, my] = placed(sec.polygon, sec.arc.center * Rat(2) - sec.arc.start);
        os << " A " << num(r) << " " << num(r) << " 0 0 1 " << cv.x(mx) << " " << cv.y(my);
        os << " A " << num(r) << " " << num(r) << " 0 0 1 " << cv.x(sx) << " " << cv.y(sy);
      } else {
        int large = arc_angle(sec.arc) > kTwoPi / 2 ? 1 : 0;
        os << " A " << num(r) << " " << num(r) << " 0 " << large << " 1 " << cv.x(ex) << " " << cv.y(ey);
        for (const auto& seg : sec.boundary_segments) {
          auto [bx, by] = placed(sec.polygon, seg.b);
          os << " L " << cv.x(bx) << " " << cv.y(by);
        }
      }
      os << " Z\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"sides\" stroke-width=\"2\">\n";
  std::map<SideId, int> color_of;
  for (std::size_t i = 0; i < s.identifications().size(); ++i) {
    color_of[s.identifications()[i].side_a] = static_cast<int>(i);
    color_of[s.identifications()[i].side_b] = static_cast<int>(i);
  }
  for (int i = 0; i < s.polygon_count(); ++i) {
    const auto& vs = s.polygon(i).vertices;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      auto [ax, ay] = placed(i, vs[k]);
      auto [bx, by] = placed(i, vs[(k + 1) % vs.size()]);
      auto it = color_of.find(SideId{s.polygon(i).polygon_id, static_cast<int>(k)});
      const char* color = it == color_of.end() ? "#000000" : kSideColors[it->second % std::size(kSideColors)];
      os << "<line stroke=\"" << color << "\" x1=\"" << cv.x(ax) << "\" y1=\"" << cv.y(ay) << "\" x2=\"" << cv.x(bx)
         << "\" y2=\"" << cv.y(by) << "\"/>\n";
    }
  }
  os << "</g>\n";

  if (!d.marks.slits.empty()) {
    os << "<g class=\"slits\" stroke=\"#c00000\" stroke-width=\"3\">\n";
    for (const auto& m : d.marks.slits) {
      int idx = s.index_of(m.polygon_id);
      auto [ax, ay] = placed(idx, m.segment.a);
      auto [bx, by] = placed(idx, m.segment.b);
      os << "<line x1=\"" << cv.x(ax) << "\" y1=\"" << cv.y(ay) << "\" x2=\"" << cv.x(bx) << "\" y2=\"" << cv.y(by)
         << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"cone-points\" fill=\"#000000\">\n";
  for (const auto& cp : s.cone_points())
    for (const auto& corner : s.vertex_classes()[cp.class_index].corners) {
      auto [x, y] = placed(corner.polygon, s.vertex(corner.polygon, corner.vertex));
      os << "<circle r=\"4\" cx=\"" << cv.x(x) << "\" cy=\"" << cv.y(y) << "\"/>\n";
    }
  os << "</g>\n</svg>\n";
  return os.str();
}

// ==== fixtures ====

namespace {

Document surface_document(const TranslationSurface& s, const std::string& name) {
  Document d;
  d.name = name;
  d.polygons = s.polygons();
  d.identifications = s.identifications();
  return d;
}

// Places the second torus to the right of the first and marks the slit on both.
void lay_out_tori(Document& d, const std::vector<TorusLayout>& layouts, const std::optional<CutPolyline>& cut) {
  std::vector<SlitGluing> gluings;
  if (layouts.size() == 2) gluings.push_back(SlitGluing{0, 0, 1, 0});
  SlittedSurface ss = build_slitted(layouts, gluings);
  std::vector<int> first_polygon(layouts.size(), -1);
  for (int p = 0; p < ss.surface.polygon_count(); ++p) {
    int t = ss.torus_of_polygon[p];
    int id = ss.surface.polygon(p).polygon_id;
    if (t > 0) d.offsets[id] = QPoint{(layouts[0].size.x * Rat(5, 4)) * Rat(t), Rat(0)};
    if (first_polygon[t] < 0) first_polygon[t] = id;
  }
  if (cut)
    for (int id : first_polygon) d.marks.slits.push_back(SlitMark{id, cut->slit_segment()});
}

Document configuration_document(const Configuration& c, const std::string& name, const TorusPacking& p,
                                 const TorusPacking* q, const std::optional<CutPolyline>& cut) {
  Document d = document_from_configuration(c, name);
  std::vector<TorusLayout> layouts{TorusLayout{p.origin, p.size, cut ? std::vector{*cut} : std::vector<CutPolyline>{}}};
  if (q) layouts.push_back(TorusLayout{q->origin, q->size, {*cut}});
  lay_out_tori(d, layouts, cut);
  return d;
}

Document triangulation_document(const ChainSpec& spec, std::uint64_t seed, const std::string& name) {
  ChainTriangulation t = make_chain_triangulation(spec, seed);
  Document d;
  d.name = name;
  d.map = MapBlock{t.map.sigma(), t.map.rho(), t.red_vertex >= 0 ? std::optional<int>(t.red_vertex) : std::nullopt,
                   std::nullopt};
  for (const auto& b : t.marked) d.marks.bigons.push_back({b.e1, b.e2});
  d.marks.genus = t.genus;
  return d;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out{"square-torus", "l-origami", "octagon"};
  for (auto id : all_figures()) out.emplace_back(to_string(id));
  for (const char* n : {"forbidden-slit-circle", "unmatched-half-disk", "chain-2", "chain-3", "chain-4",
                        "triangulation-k1", "triangulation-k2", "triangulation-k3", "triangulation-symmetric",
                        "triangulation-g3"})
    out.emplace_back(n);
  return out;
}

Document fixture_document(const std::string& name) {
  if (name == "square-torus") return surface_document(make_torus(), name);
  if (name == "l-origami") return surface_document(make_l_origami(), name);
  if (name == "octagon") return surface_document(make_rational_octagon(), name);
  for (auto id : all_figures())
    if (name == to_string(id)) {
      FigureFixture f = make_figure(id);
      return configuration_document(f.configuration, name, f.first, f.cut ? &f.second : nullptr, f.cut);
    }
  if (name == "forbidden-slit-circle") {
    ForbiddenFixture f = make_forbidden_slit_circle();
    return configuration_document(f.configuration, name, f.torus, &f.torus, f.cut);
  }
  if (name == "unmatched-half-disk") return document_from_configuration(make_unmatched_half_disk(), name);
  if (name.rfind("chain-", 0) == 0) {
    int k = std::atoi(name.c_str() + 6);
    ChainPacking p = make_chain_packing(k);
    return configuration_document(chain_configuration(p), name, p.torus, &p.torus, p.cut);
  }
  if (name.rfind("triangulation-k", 0) == 0) {
    int k = std::atoi(name.c_str() + 15);
    if (k < 1) throw Error(ErrorCode::SchemaError, "unknown fixture " + name);
    ChainSpec spec;
    spec.level_sizes = {k};
    spec.piece_insertions.assign(k + 1, 1);
    spec.piece_insertions.back() = 3;
    return triangulation_document(spec, 7, name);
  }
  if (name == "triangulation-symmetric") {
    ChainSpec spec;
    spec.level_sizes = {1};
    spec.insertions = 2;
    spec.mirror_ends = true;
    return triangulation_document(spec, 5, name);
  }
  if (name == "triangulation-g3") {
    ChainSpec spec;
    spec.level_sizes = {2, 1};
    spec.insertions = 1;
    return triangulation_document(spec, 11, name);
  }
  throw Error(ErrorCode::SchemaError, "unknown fixture " + name);
}

}  // namespace flatpack::cli

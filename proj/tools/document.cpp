#include "document.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>

namespace flatpack::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (where.empty() ? "/" : where) + ": " + what);
}

const json& field(const json& j, const std::string& where, const char* key) {
  if (!j.is_object()) schema(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where, std::string("missing key \"") + key + "\"");
  return *it;
}

Rat rat_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) schema(where, "expected a rational written as \"p/q\"");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    schema(where, "malformed rational \"" + j.get<std::string>() + "\"");
  }
}

int int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<int>();
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array");
  return j;
}

QPoint point_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema(where, "expected a point [x, y]");
  return QPoint{rat_of(j[0], where + "/0"), rat_of(j[1], where + "/1")};
}

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

json to_json(const Rat& r) { return r.str(); }
json to_json(const QPoint& p) { return json::array({p.x.str(), p.y.str()}); }

std::string optional_label(const json& j, const std::string& where) {
  auto it = j.find("label");
  return it == j.end() ? std::string() : string_of(*it, at(where, "label"));
}

void check_surface(const Document& d) {
  std::map<int, std::size_t> sides;
  for (std::size_t i = 0; i < d.polygons.size(); ++i) {
    const auto& p = d.polygons[i];
    if (!sides.emplace(p.polygon_id, p.vertices.size()).second)
      schema(at(at("/surface/polygons", i), "id"), "duplicate polygon id " + std::to_string(p.polygon_id));
    if (p.vertices.size() < 3) schema(at(at("/surface/polygons", i), "vertices"), "a polygon needs three vertices");
  }
  std::set<SideId> used;
  for (std::size_t i = 0; i < d.identifications.size(); ++i) {
    std::string where = at("/surface/identifications", i);
    for (const SideId& s : {d.identifications[i].side_a, d.identifications[i].side_b}) {
      auto it = sides.find(s.polygon_id);
      if (it == sides.end()) schema(where, "unknown polygon " + std::to_string(s.polygon_id));
      if (s.edge_index < 0 || s.edge_index >= static_cast<int>(it->second))
        schema(where, "side " + std::to_string(s.edge_index) + " out of range");
      if (!used.insert(s).second)
        schema(where, "side " + std::to_string(s.edge_index) + " of polygon " + std::to_string(s.polygon_id) +
                          " is identified twice");
    }
  }
  auto known = [&](int id, const std::string& where) {
    if (!sides.count(id)) schema(where, "unknown polygon " + std::to_string(id));
  };
  for (std::size_t i = 0; i < d.disks.size(); ++i) known(d.disks[i].polygon_id, at("/configuration/disks", i));
  for (std::size_t i = 0; i < d.sectors.size(); ++i) {
    known(d.sectors[i].polygon_id, at("/configuration/sectors", i));
    for (int s : d.sectors[i].sides)
      if (s < 0 || s >= static_cast<int>(sides[d.sectors[i].polygon_id]))
        schema(at("/configuration/sectors", i), "side " + std::to_string(s) + " out of range");
  }
  for (std::size_t i = 0; i < d.marks.slits.size(); ++i) known(d.marks.slits[i].polygon_id, at("/marks/slits", i));
  for (const auto& [id, off] : d.offsets) known(id, "/surface/polygons");
}

bool same_polygons(const std::vector<PolygonSpec>& a, const std::vector<PolygonSpec>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].polygon_id != b[i].polygon_id || a[i].vertices != b[i].vertices) return false;
  return true;
}

bool same_identifications(const std::vector<Identification>& a, const std::vector<Identification>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].side_a != b[i].side_a || a[i].side_b != b[i].side_b) return false;
  return true;
}

}  // namespace

bool operator==(const Document& a, const Document& b) {
  auto disk_eq = [](const DiskSpec& x, const DiskSpec& y) {
    return x.polygon_id == y.polygon_id && x.center == y.center && x.radius_sq == y.radius_sq && x.label == y.label;
  };
  auto sector_eq = [](const SectorSpec& x, const SectorSpec& y) {
    return x.polygon_id == y.polygon_id && x.center == y.center && x.radius_sq == y.radius_sq &&
           x.start == y.start && x.end == y.end && x.boundary == y.boundary && x.sides == y.sides &&
           x.label == y.label;
  };
  auto map_eq = [](const std::optional<MapBlock>& x, const std::optional<MapBlock>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->sigma == y->sigma && x->rho == y->rho && x->red == y->red && x->blue == y->blue);
  };
  auto slit_eq = [](const SlitMark& x, const SlitMark& y) { return x.polygon_id == y.polygon_id && x.segment == y.segment; };
  return a.version == b.version && a.name == b.name && same_polygons(a.polygons, b.polygons) &&
         same_identifications(a.identifications, b.identifications) && a.offsets == b.offsets &&
         a.has_configuration == b.has_configuration &&
         std::equal(a.disks.begin(), a.disks.end(), b.disks.begin(), b.disks.end(), disk_eq) &&
         std::equal(a.sectors.begin(), a.sectors.end(), b.sectors.begin(), b.sectors.end(), sector_eq) &&
         map_eq(a.map, b.map) && a.marks.bigons == b.marks.bigons && a.marks.genus == b.marks.genus &&
         std::equal(a.marks.slits.begin(), a.marks.slits.end(), b.marks.slits.begin(), b.marks.slits.end(), slit_eq);
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                            std::string(e.what()));
  }
  Document d;
  d.version = int_of(field(j, "", "version"), "/version");
  if (d.version != 1) schema("/version", "unsupported version " + std::to_string(d.version));
  if (auto it = j.find("name"); it != j.end()) d.name = string_of(*it, "/name");

  if (auto it = j.find("surface"); it != j.end()) {
    const json& polys = array_of(field(*it, "/surface", "polygons"), "/surface/polygons");
    for (std::size_t i = 0; i < polys.size(); ++i) {
      std::string w = at("/surface/polygons", i);
      PolygonSpec p;
      p.polygon_id = int_of(field(polys[i], w, "id"), at(w, "id"));
      const json& vs = array_of(field(polys[i], w, "vertices"), at(w, "vertices"));
      for (std::size_t k = 0; k < vs.size(); ++k) p.vertices.push_back(point_of(vs[k], at(at(w, "vertices"), k)));
      if (auto o = polys[i].find("offset"); o != polys[i].end()) d.offsets[p.polygon_id] = point_of(*o, at(w, "offset"));
      d.polygons.push_back(std::move(p));
    }
    const json& ids = array_of(field(*it, "/surface", "identifications"), "/surface/identifications");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::string w = at("/surface/identifications", i);
      auto side = [&](const char* key) {
        const json& s = field(ids[i], w, key);
        std::string ws = at(w, key);
        return SideId{int_of(field(s, ws, "polygon"), at(ws, "polygon")), int_of(field(s, ws, "side"), at(ws, "side"))};
      };
      d.identifications.push_back(Identification{side("a"), side("b")});
    }
  }

  if (auto it = j.find("configuration"); it != j.end()) {
    d.has_configuration = true;
    if (auto ds = it->find("disks"); ds != it->end()) {
      array_of(*ds, "/configuration/disks");
      for (std::size_t i = 0; i < ds->size(); ++i) {
        std::string w = at("/configuration/disks", i);
        const json& e = (*ds)[i];
        d.disks.push_back(DiskSpec{int_of(field(e, w, "polygon"), at(w, "polygon")),
                                   point_of(field(e, w, "center"), at(w, "center")),
                                   rat_of(field(e, w, "radius_sq"), at(w, "radius_sq")), optional_label(e, w)});
        if (d.disks.back().radius_sq.sign() <= 0) schema(at(w, "radius_sq"), "radius must be positive");
      }
    }
    if (auto ss = it->find("sectors"); ss != it->end()) {
      array_of(*ss, "/configuration/sectors");
      for (std::size_t i = 0; i < ss->size(); ++i) {
        std::string w = at("/configuration/sectors", i);
        const json& e = (*ss)[i];
        SectorSpec s;
        s.polygon_id = int_of(field(e, w, "polygon"), at(w, "polygon"));
        s.center = point_of(field(e, w, "center"), at(w, "center"));
        s.radius_sq = rat_of(field(e, w, "radius_sq"), at(w, "radius_sq"));
        s.start = point_of(field(e, w, "start"), at(w, "start"));
        s.end = point_of(field(e, w, "end"), at(w, "end"));
        if (!on_circle(s.start, s.center, s.radius_sq) || !on_circle(s.end, s.center, s.radius_sq))
          schema(w, "arc ends must lie on the circle");
        if (auto b = e.find("boundary"); b != e.end()) {
          array_of(*b, at(w, "boundary"));
          for (std::size_t k = 0; k < b->size(); ++k) {
            std::string wb = at(at(w, "boundary"), k);
            s.sides.push_back(int_of(field((*b)[k], wb, "side"), at(wb, "side")));
            s.boundary.push_back(Segment{point_of(field((*b)[k], wb, "from"), at(wb, "from")),
                                         point_of(field((*b)[k], wb, "to"), at(wb, "to"))});
          }
        }
        s.label = optional_label(e, w);
        d.sectors.push_back(std::move(s));
      }
    }
  }

  if (auto it = j.find("map"); it != j.end()) {
    MapBlock m;
    const json& sg = array_of(field(*it, "/map", "sigma"), "/map/sigma");
    const json& rh = array_of(field(*it, "/map", "rho"), "/map/rho");
    for (std::size_t i = 0; i < sg.size(); ++i) m.sigma.push_back(int_of(sg[i], at("/map/sigma", i)));
    for (std::size_t i = 0; i < rh.size(); ++i) m.rho.push_back(int_of(rh[i], at("/map/rho", i)));
    if (m.sigma.size() != m.rho.size()) schema("/map", "sigma and rho differ in length");
    if (auto r = it->find("red"); r != it->end()) m.red = int_of(*r, "/map/red");
    if (auto b = it->find("blue"); b != it->end()) m.blue = int_of(*b, "/map/blue");
    d.map = std::move(m);
  }

  if (auto it = j.find("marks"); it != j.end()) {
    if (auto bs = it->find("bigons"); bs != it->end()) {
      array_of(*bs, "/marks/bigons");
      for (std::size_t i = 0; i < bs->size(); ++i) {
        std::string w = at("/marks/bigons", i);
        const json& e = (*bs)[i];
        if (!e.is_array() || e.size() != 2) schema(w, "expected an edge pair");
        d.marks.bigons.push_back({int_of(e[0], at(w, 0)), int_of(e[1], at(w, 1))});
      }
    }
    if (auto g = it->find("genus"); g != it->end()) d.marks.genus = int_of(*g, "/marks/genus");
    if (auto ss = it->find("slits"); ss != it->end()) {
      array_of(*ss, "/marks/slits");
      for (std::size_t i = 0; i < ss->size(); ++i) {
        std::string w = at("/marks/slits", i);
        const json& e = (*ss)[i];
        d.marks.slits.push_back(SlitMark{int_of(field(e, w, "polygon"), at(w, "polygon")),
                                         Segment{point_of(field(e, w, "from"), at(w, "from")),
                                                 point_of(field(e, w, "to"), at(w, "to"))}});
      }
    }
  }
  check_surface(d);
  return d;
}

std::string serialize_document(const Document& d) {
  json j;
  j["version"] = d.version;
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.polygons.empty()) {
    json polys = json::array();
    for (const auto& p : d.polygons) {
      json e;
      e["id"] = p.polygon_id;
      json vs = json::array();
      for (const auto& v : p.vertices) vs.push_back(to_json(v));
      e["vertices"] = vs;
      if (auto it = d.offsets.find(p.polygon_id); it != d.offsets.end()) e["offset"] = to_json(it->second);
      polys.push_back(e);
    }
    json ids = json::array();
    for (const auto& id : d.identifications)
      ids.push_back({{"a", {{"polygon", id.side_a.polygon_id}, {"side", id.side_a.edge_index}}},
                     {"b", {{"polygon", id.side_b.polygon_id}, {"side", id.side_b.edge_index}}}});
    j["surface"] = {{"polygons", polys}, {"identifications", ids}};
  }
  if (d.has_configuration) {
    json c = json::object();
    if (!d.disks.empty()) {
      json ds = json::array();
      for (const auto& s : d.disks) {
        json e{{"polygon", s.polygon_id}, {"center", to_json(s.center)}, {"radius_sq", to_json(s.radius_sq)}};
        if (!s.label.empty()) e["label"] = s.label;
        ds.push_back(e);
      }
      c["disks"] = ds;
    }
    if (!d.sectors.empty()) {
      json ss = json::array();
      for (const auto& s : d.sectors) {
        json e{{"polygon", s.polygon_id},
               {"center", to_json(s.center)},
               {"radius_sq", to_json(s.radius_sq)},
               {"start", to_json(s.start)},
               {"end", to_json(s.end)}};
        if (!s.boundary.empty()) {
          json b = json::array();
          for (std::size_t k = 0; k < s.boundary.size(); ++k)
            b.push_back({{"side", s.sides[k]}, {"from", to_json(s.boundary[k].a)}, {"to", to_json(s.boundary[k].b)}});
          e["boundary"] = b;
        }
        if (!s.label.empty()) e["label"] = s.label;
        ss.push_back(e);
      }
      c["sectors"] = ss;
    }
    j["configuration"] = c;
  }
  if (d.map) {
    json m{{"sigma", d.map->sigma}, {"rho", d.map->rho}};
    if (d.map->red) m["red"] = *d.map->red;
    if (d.map->blue) m["blue"] = *d.map->blue;
    j["map"] = m;
  }
  if (!d.marks.bigons.empty() || d.marks.genus || !d.marks.slits.empty()) {
    json m = json::object();
    if (!d.marks.bigons.empty()) {
      json bs = json::array();
      for (auto [a, b] : d.marks.bigons) bs.push_back({a, b});
      m["bigons"] = bs;
    }
    if (d.marks.genus) m["genus"] = *d.marks.genus;
    if (!d.marks.slits.empty()) {
      json ss = json::array();
      for (const auto& s : d.marks.slits)
        ss.push_back({{"polygon", s.polygon_id}, {"from", to_json(s.segment.a)}, {"to", to_json(s.segment.b)}});
      m["slits"] = ss;
    }
    j["marks"] = m;
  }
  return j.dump(2) + "\n";
}

TranslationSurface document_surface(const Document& d) {
  if (d.polygons.empty()) throw Error(ErrorCode::SchemaError, "/surface: the document has no surface");
  return build_surface(d.polygons, d.identifications);
}

Configuration document_configuration(const Document& d, TranslationSurface s) {
  std::vector<PolygonalSector> sectors;
  for (const auto& spec : d.sectors) {
    PolygonalSector sec;
    sec.polygon = s.index_of(spec.polygon_id);
    sec.arc = Arc{spec.center, spec.radius_sq, spec.start, spec.end};
    sec.boundary_segments = spec.boundary;
    sec.segment_sides = spec.sides;
    sec.label = spec.label;
    sectors.push_back(std::move(sec));
  }
  for (const auto& disk : d.disks)
    for (auto& sec : disk_sectors(s, s.index_of(disk.polygon_id), disk.center, disk.radius_sq)) {
      sec.label = disk.label;
      sectors.push_back(std::move(sec));
    }
  return make_configuration(std::move(s), std::move(sectors));
}

CombinatorialMap document_map(const MapBlock& m) {
  CombinatorialMap out = build_map(m.sigma, m.rho);
  auto vertex = [&](int v) {
    if (v < 0 || v >= out.vertex_count())
      throw Error(ErrorCode::SchemaError, "/map: vertex " + std::to_string(v) + " out of range");
    return v;
  };
  if (m.red) out.red_vertex = vertex(*m.red);
  if (m.blue) out.blue_vertex = vertex(*m.blue);
  return out;
}

Document document_from_configuration(const Configuration& c, const std::string& name) {
  Document d;
  d.name = name;
  d.polygons = c.surface.polygons();
  d.identifications = c.surface.identifications();
  d.has_configuration = true;
  for (const auto& sec : c.sectors) {
    SectorSpec s;
    s.polygon_id = c.surface.polygon(sec.polygon).polygon_id;
    s.center = sec.arc.center;
    s.radius_sq = sec.arc.radius_sq;
    s.start = sec.arc.start;
    s.end = sec.arc.end;
    s.boundary = sec.boundary_segments;
    s.sides = sec.segment_sides;
    s.label = sec.label;
    d.sectors.push_back(std::move(s));
  }
  return d;
}

}  // namespace flatpack::cli

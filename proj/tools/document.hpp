#pragma once

#include "flatpack/packing.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flatpack::cli {

// Disk drawn in one polygon; expands to the components of polygon ∩ disk.
struct DiskSpec {
  int polygon_id = 0;
  QPoint center;
  Rat radius_sq;
  std::string label;
};

struct SectorSpec {
  int polygon_id = 0;
  QPoint center;
  Rat radius_sq;
  QPoint start, end;
  std::vector<Segment> boundary;
  std::vector<int> sides;
  std::string label;
};

struct MapBlock {
  std::vector<int> sigma, rho;
  std::optional<int> red, blue;
};

struct SlitMark {
  int polygon_id = 0;  // the segment is drawn with this polygon's render offset
  Segment segment;
};

struct Marks {
  std::vector<std::pair<int, int>> bigons;  // marked slit bigons as edge pairs, slit 1 first
  std::optional<int> genus;
  std::vector<SlitMark> slits;
};

struct Document {
  int version = 1;
  std::string name;
  std::vector<PolygonSpec> polygons;
  std::vector<Identification> identifications;
  std::map<int, QPoint> offsets;  // render placement by polygon id
  bool has_configuration = false;
  std::vector<DiskSpec> disks;
  std::vector<SectorSpec> sectors;
  std::optional<MapBlock> map;
  Marks marks;
};

bool operator==(const Document& a, const Document& b);

// Throws Error(SyntaxError) with line and column, or Error(SchemaError) with a JSON pointer.
Document parse_document(std::string_view text);
std::string serialize_document(const Document& d);

TranslationSurface document_surface(const Document& d);
// Sectors of the configuration block, explicit sectors first.
Configuration document_configuration(const Document& d, TranslationSurface s);
CombinatorialMap document_map(const MapBlock& m);

Document document_from_configuration(const Configuration& c, const std::string& name);

}  // namespace flatpack::cli

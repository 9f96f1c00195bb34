#pragma once

#include "document.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace flatpack::cli {

struct Options {
  int depth = 6;
  double eps_angle = kDefaultEpsAngle;
};

struct Report {
  nlohmann::ordered_json body;
  int exit_code = 0;  // 0 pass, 1 violation
};

Report cmd_validate(const Document& d, const Options& o);
Report cmd_bigons(const Document& d, const Options& o);
Report cmd_enumerate(const Document& d, const Options& o);
std::string render_svg(const Document& d, const Options& o);

// Indented "key: value" lines.
std::string format_text(const nlohmann::ordered_json& body);

std::vector<std::string> fixture_names();
// Throws Error(SchemaError) for an unknown name.
Document fixture_document(const std::string& name);

}  // namespace flatpack::cli

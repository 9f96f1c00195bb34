#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace flatpack;
using namespace flatpack::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write " + path);
}

bool input_error(ErrorCode c) {
  return c == ErrorCode::SyntaxError || c == ErrorCode::SchemaError || c == ErrorCode::IoError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify circle packings on translation surfaces"};
  app.require_subcommand(1);
  Options opt;
  std::string format = "json";
  bool timings = false;
  app.add_option("--depth", opt.depth, "Unfolding depth for metric checks")->check(CLI::Range(0, 64));
  app.add_option("--eps-angle", opt.eps_angle, "Angle tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", timings, "Add elapsed time to reports");

  std::string file, out;
  auto* validate = app.add_subcommand("validate", "Check the surface and configuration conditions");
  auto* bigons = app.add_subcommand("bigons", "List bigons, their order and the decomposition");
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate repackings from marked slit bigons");
  for (auto* sub : {validate, bigons, enumerate}) sub->add_option("file", file, "Document")->required();
  auto* render = app.add_subcommand("render", "Write an SVG drawing");
  render->add_option("file", file, "Document")->required();
  render->add_option("-o,--output", out, "SVG path (stdout when omitted)");
  std::string fixture;
  bool list = false;
  auto* fixtures = app.add_subcommand("fixture", "Export a built-in fixture document");
  fixtures->add_option("name", fixture, "Fixture name");
  fixtures->add_option("-o,--output", out, "Document path (stdout when omitted)");
  fixtures->add_flag("--list", list, "List fixture names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fixtures->parsed()) {
      if (list || fixture.empty()) {
        for (const auto& n : fixture_names()) std::cout << n << "\n";
        return 0;
      }
      write_output(out, serialize_document(fixture_document(fixture)));
      return 0;
    }
    Document doc = parse_document(read_file(file));
    if (render->parsed()) {
      write_output(out, render_svg(doc, opt));
      return 0;
    }
    auto t0 = std::chrono::steady_clock::now();
    Report r = validate->parsed() ? cmd_validate(doc, opt) : bigons->parsed() ? cmd_bigons(doc, opt) : cmd_enumerate(doc, opt);
    if (timings)
      r.body["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (format == "json" ? r.body.dump(2) + "\n" : format_text(r.body));
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << "flatpack: " << e.what() << "\n";
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "flatpack: " << e.what() << "\n";
    return 2;
  }
}

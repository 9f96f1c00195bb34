#pragma once

#include "flatpack/packing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatpack {

// ==== chains of double circles ====

struct ChainOptions {
  Rat scale{1};                    // chain circles have radius scale / 2
  std::optional<QPoint> torus;     // required torus size; the lattice must tile it
};

struct ChainPacking {
  int k = 0;
  TorusPacking torus;              // used on both tori
  CutPolyline cut;                 // slit from the first chain center to the last
  std::vector<std::string> chain;  // labels of the chain circles, slit order
};

// k circles of radius scale/2 centered on the slit, packed with a rational lattice of circles of
// radii scale/2, scale/3 and scale/6 whose contacts triangulate the torus. Throws
// ChainDoesNotFit when the lattice cannot tile the requested torus.
ChainPacking make_chain_packing(int k, const ChainOptions& options = {});

Configuration chain_configuration(const ChainPacking& c);

// ==== figure configurations ====

enum class FigureId { TwoCircleTorus, SlitCrossesCircle, SlitFromCenter, SlitThroughCenters, TiltedSlit, ThreeRadii };

std::string_view to_string(FigureId f);
std::vector<FigureId> all_figures();

struct FigureFixture {
  FigureId id{};
  std::string name;
  TorusPacking first, second;
  std::optional<CutPolyline> cut;  // absent for a plain torus
  Configuration configuration;
  std::vector<std::pair<std::string, std::string>> expected_contacts;  // label pairs that must touch
};

FigureFixture make_figure(FigureId id);

// A circle whose closed disk holds a slit endpoint while its center is off the slit, drawn the
// same way on both tori.
struct ForbiddenFixture {
  TorusPacking torus;
  CutPolyline cut;
  PlanarCircle circle;
  Configuration configuration;
};
ForbiddenFixture make_forbidden_slit_circle();

// A lone half disk whose diameter lies on a connector-free interior chord of a two-polygon torus.
Configuration make_unmatched_half_disk();

}  // namespace flatpack

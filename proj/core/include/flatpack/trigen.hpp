#pragma once

#include "flatpack/topomap.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace flatpack {

// A closed oriented simplicial surface given by its counter-clockwise triangles.
struct SimplicialSurface {
  int vertex_count = 0;
  std::vector<std::array<int, 3>> triangles;
};

SimplicialSurface seven_vertex_torus();
SimplicialSurface octahedron();

CombinatorialMap surface_map(const SimplicialSurface& s);

// Random stellar subdivisions followed by random edge flips that keep the complex simplicial.
void refine(SimplicialSurface& s, std::mt19937_64& rng, int insertions, int flips);

struct ChainSpec {
  std::vector<int> level_sizes;     // k_1 .. k_{g-1}, each >= 1
  int insertions = 0;               // per piece
  std::vector<int> piece_insertions;  // overrides `insertions` piece by piece when non-empty
  int flips = 0;                    // per piece
  bool share_vertices = false;      // the two holes of a middle piece share a vertex when possible
  bool mirror_ends = false;         // g = 2, k = 1: both tori identical, so the halves are isomorphic
};

// A triangulated slitted surface assembled from tori and spheres glued along bigons.
struct ChainTriangulation {
  CombinatorialMap map;
  int genus = 0;
  std::vector<Bigon> bigons;                // every chain bigon, red end first
  std::vector<std::vector<Bigon>> levels;   // bigons grouped by the genus on their red side
  std::vector<Bigon> marked;                // first bigon of each level
  int red_vertex = -1;                      // a vertex of the first torus off every bigon
};

ChainTriangulation make_chain_triangulation(const ChainSpec& spec, std::uint64_t seed);

// A random genus 2..4 spec with level sizes 1..3.
ChainSpec random_chain_spec(std::mt19937_64& rng);

}  // namespace flatpack

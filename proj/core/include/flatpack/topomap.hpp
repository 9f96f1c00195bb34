#pragma once

#include "flatpack/errors.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace flatpack {

// Half-edge encoding of a graph embedded in an oriented surface. Half-edge h sits at the vertex
// it leaves; sigma(h) is the other half of its edge and rho(h) the next half-edge counter-clockwise
// around that vertex. Faces are the orbits of phi = sigma o rho.
class CombinatorialMap {
public:
  int half_edge_count() const { return static_cast<int>(sigma_.size()); }
  int edge_count() const { return half_edge_count() / 2; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  int component_count() const { return components_; }
  bool connected() const { return components_ <= 1; }
  // Genus of a connected map.
  int genus() const { return (2 - euler_characteristic()) / 2; }

  int sigma(int h) const { return sigma_[h]; }
  int rho(int h) const { return rho_[h]; }
  int rho_inv(int h) const { return rho_inv_[h]; }
  int phi(int h) const { return sigma_[rho_[h]]; }
  const std::vector<int>& sigma() const { return sigma_; }
  const std::vector<int>& rho() const { return rho_; }

  int vertex_of(int h) const { return vertex_of_[h]; }
  int face_of(int h) const { return face_of_[h]; }
  int edge_of(int h) const { return edge_of_[h]; }
  int component_of_vertex(int v) const { return vertex_component_[v]; }
  // Half-edges of edge e, the smaller id first.
  std::pair<int, int> edge_halves(int e) const { return edge_halves_[e]; }
  std::pair<int, int> edge_ends(int e) const {
    return {vertex_of_[edge_halves_[e].first], vertex_of_[edge_halves_[e].second]};
  }
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }  // rho-orbits
  const std::vector<std::vector<int>>& faces() const { return faces_; }        // phi-orbits
  int degree(int v) const { return static_cast<int>(vertices_[v].size()); }

  // Optional marks: the red and blue end vertices of a slitted chain.
  std::optional<int> red_vertex, blue_vertex;

private:
  friend CombinatorialMap build_map(std::vector<int> sigma, std::vector<int> rho);
  std::vector<int> sigma_, rho_, rho_inv_;
  std::vector<int> vertex_of_, face_of_, edge_of_, vertex_component_;
  std::vector<std::pair<int, int>> edge_halves_;
  std::vector<std::vector<int>> vertices_, faces_;
  int components_ = 0;
};

// Validates the permutations and traces vertices, faces and components. Throws InvalidPermutation
// or SigmaFixedPoint.
CombinatorialMap build_map(std::vector<int> sigma, std::vector<int> rho);

// A boundary dart of a face: edge traversed forward (tail to head) or backward.
struct Dart {
  int edge = 0;
  bool forward = true;
};

// Builds the map whose faces have the given counter-clockwise boundary walks. Edge e owns half-edges
// 2e (at its tail) and 2e + 1 (at its head). Every dart must occur exactly once.
CombinatorialMap map_from_faces(int edge_count, const std::vector<std::vector<Dart>>& faces);

// The half-edge leaving the tail of a dart.
inline int dart_half(const Dart& d) { return 2 * d.edge + (d.forward ? 0 : 1); }

// ==== bigons ====

struct Bigon {
  int v1 = 0, v2 = 0;  // v1 < v2
  int e1 = 0, e2 = 0;  // e1 < e2
  // v1 -> v2 along e1, then v2 -> v1 along e2; each entry is the half-edge leaving its vertex.
  std::vector<int> associated_loop;
  friend bool operator==(const Bigon& a, const Bigon& b) {
    return a.v1 == b.v1 && a.v2 == b.v2 && a.e1 == b.e1 && a.e2 == b.e2;
  }
};

Bigon make_bigon(const CombinatorialMap& m, int e1, int e2);
std::vector<Bigon> find_bigons(const CombinatorialMap& m);

// ==== surgery ====

struct BoundaryTag {
  int cut = 0;   // which loop of a multi-cut produced it
  int side = 0;  // 0 for the left bank, 1 for the right bank
  friend auto operator<=>(const BoundaryTag&, const BoundaryTag&) = default;
};

struct BoundedPiece {
  CombinatorialMap map;                // boundary holes appear as faces
  int boundary_count = 0;
  int genus = 0;                       // (2 - chi - b) / 2 with chi counted without the holes
  std::vector<int> origin;             // source half-edge of each half-edge
  std::vector<int> edge_origin;        // source edge of each half-edge
  std::vector<int> vertex_origin;      // source vertex of each vertex
  std::vector<int> hole_faces;         // face ids of the holes in `map`
  std::vector<BoundaryTag> hole_tags;  // parallel to hole_faces
  std::set<std::string> contains_marks;
  bool has_vertex(int source_vertex) const;
  bool has_edge(int source_edge) const;
  bool has_hole(int cut) const;
};

// Cuts along a simple closed walk (half-edges leaving successive vertices). Throws NotAClosedWalk.
std::vector<BoundedPiece> cut_along_cycle(const CombinatorialMap& m, const std::vector<int>& loop);

// Cuts along several edge-disjoint simple closed walks, one after another. Throws NotAClosedWalk,
// or StraddlingLoop when a later loop no longer closes up after the earlier cuts.
std::vector<BoundedPiece> cut_along_cycles(const CombinatorialMap& m, const std::vector<std::vector<int>>& loops);

// ==== splitting bigons ====

bool is_splitting(const CombinatorialMap& m, const Bigon& b);
int removal_components(const CombinatorialMap& m, const Bigon& b);

enum class Side { Side1, Side2 };
// Side1 is the piece holding the red vertex when marked, otherwise the left bank of the loop.
Side bigon_side(const CombinatorialMap& m, const Bigon& splitting, const Bigon& other);

bool loops_cobound_sphere(const CombinatorialMap& m, const Bigon& b1, const Bigon& b2);
// Genus of the piece bounded by both loops; 0 when b1 == b2. Throws DecompositionMismatch when no
// piece touches both loops.
int bounded_genus_between(const CombinatorialMap& m, const Bigon& b1, const Bigon& b2);

// Splitting bigons, one per vertex pair (lowest edge ids kept).
std::vector<Bigon> splitting_bigons(const CombinatorialMap& m);

// Red vertex: the mark when present, else the lowest vertex off every splitting bigon that lies in
// an end piece of the full decomposition. nullopt without splitting bigons.
std::optional<int> red_vertex(const CombinatorialMap& m);

struct OrderedBigon {
  Bigon bigon;
  int x = 1;  // position within its genus level, 1-based
  int y = 1;  // genus of the red-side piece
  std::vector<int> red_side;  // indices (into the ordered list) of bigons on the red side
};

// Orders the splitting bigons by red-side genus, then by nesting. Verifies that the red side of
// each entry holds exactly the entries before it. Throws OrderingImpossible.
std::vector<OrderedBigon> order_splitting_bigons(const CombinatorialMap& m);

// Brute force: the number of orderings of `bigons` in which every entry's red side is exactly the
// set of earlier entries.
int count_valid_orderings(const CombinatorialMap& m, const std::vector<Bigon>& bigons);

struct SplitDecomposition {
  std::vector<OrderedBigon> ordered_bigons;
  std::vector<BoundedPiece> pieces;  // from the red end to the blue end
  std::vector<std::vector<int>> piece_bounds;  // ordered-bigon indices bounding each piece
};

// Cuts along every splitting bigon and checks the piece count and genus pattern. Throws
// DecompositionMismatch or OrderingImpossible.
SplitDecomposition decompose(const CombinatorialMap& m);

struct Subgraph {
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // sorted
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

// The two sides of a splitting bigon; both contain v1, v2 and the bigon edges.
std::pair<Subgraph, Subgraph> split_triangulation(const CombinatorialMap& m, const Bigon& b);

// Isomorphism test of the two sides of a splitting bigon as embedded pieces, fixing v1 and v2.
bool halves_isomorphic(const CombinatorialMap& m, const Bigon& b);

// ==== repackings ====

enum class RepackOrientation { Forward, Reversed };

struct RepackingCandidate {
  std::vector<Bigon> slit_assignment;  // slit j -> bigon
  RepackOrientation orientation = RepackOrientation::Forward;
  std::vector<Subgraph> induced_subtriangulations;  // T_1 .. T_g
  std::vector<int> code;                            // canonical form used for deduplication
};

struct RepackingReport {
  std::vector<RepackingCandidate> candidates;  // distinct and different from the original
  int assignments_tried = 0;
  int bound = 0;  // 2 * prod(k_i) - 1
  std::vector<int> level_sizes;  // k_1 .. k_{g-1}
};

// `marked` lists the bigon of each slit of the original packing, slit 1 first. Throws
// MarkedBigonNotSplitting.
RepackingReport enumerate_repackings(const CombinatorialMap& m, const std::vector<Bigon>& marked, int g);

// 2 * prod(k) - 1.
int repacking_bound(const std::vector<int>& level_sizes);

// ==== oracles ====

struct PieceSummary {
  int genus = 0;
  int boundary_count = 0;
  int vertices = 0, edges = 0, faces = 0;
  friend auto operator<=>(const PieceSummary&, const PieceSummary&) = default;
};

// Independent cut: unglues the face complex along the loop edges and rebuilds components, vertices
// and boundary cycles with union-find. Summaries are sorted.
std::vector<PieceSummary> brute_force_cut(const CombinatorialMap& m, const std::vector<int>& loop);
std::vector<PieceSummary> summarize(const std::vector<BoundedPiece>& pieces);

// Every connected rooted map with 1..max_edges edges, each listed once in canonical labeling.
std::vector<CombinatorialMap> all_rooted_maps(int max_edges);

// Simple closed walks of m, each once per direction and start (canonical start: smallest half-edge).
std::vector<std::vector<int>> simple_cycles(const CombinatorialMap& m, int max_length);

}  // namespace flatpack

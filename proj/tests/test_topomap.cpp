#include "flatpack/builders.hpp"
#include "flatpack/topomap.hpp"
#include "flatpack/trigen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace flatpack;

namespace {

CombinatorialMap torus_map() {
  return map_from_faces(2, {{{0, true}, {1, true}, {0, false}, {1, false}}});
}

// Sphere with two vertices and `n` parallel edges.
CombinatorialMap parallel_edges(int n) {
  std::vector<std::vector<Dart>> faces;
  for (int i = 0; i < n; ++i) faces.push_back({{i, true}, {(i + 1) % n, false}});
  return map_from_faces(n, faces);
}

// Seven-vertex torus with edge 0-1 doubled; the two copies bound a disk.
struct DoubledEdgeTorus {
  CombinatorialMap map;
  Bigon bigon;
};

DoubledEdgeTorus torus_with_contractible_bigon() {
  auto s = seven_vertex_torus();
  std::map<std::pair<int, int>, int> id;
  std::map<int, int> tail;
  std::vector<std::vector<Dart>> faces;
  auto dart = [&](int a, int b) {
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (key == std::pair{0, 1}) key = a == 0 ? std::pair{-1, 0} : std::pair{-1, 1};
    auto [it, fresh] = id.emplace(key, static_cast<int>(id.size()));
    if (fresh) tail[it->second] = a;
    return Dart{it->second, tail[it->second] == a};
  };
  for (auto t : s.triangles) faces.push_back({dart(t[0], t[1]), dart(t[1], t[2]), dart(t[2], t[0])});
  int ea = id.at({-1, 0}), eb = id.at({-1, 1});
  // Copy A carries 0->1 in its triangle and copy B carries 1->0; the digon uses the other directions.
  faces.push_back({Dart{eb, tail[eb] == 0}, Dart{ea, tail[ea] == 1}});
  DoubledEdgeTorus out{map_from_faces(static_cast<int>(id.size()), faces), {}};
  out.bigon = make_bigon(out.map, ea, eb);
  return out;
}

int chi_with_holes(const std::vector<BoundedPiece>& pieces) {
  int sum = 0;
  for (const auto& p : pieces) sum += p.map.euler_characteristic();
  return sum;
}

// Conjugates the map by a random half-edge permutation; returns the map and the permutation.
std::pair<CombinatorialMap, std::vector<int>> relabel(const CombinatorialMap& m, std::mt19937_64& rng) {
  const int n = m.half_edge_count();
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::shuffle(pi.begin(), pi.end(), rng);
  std::vector<int> sigma(n), rho(n);
  for (int h = 0; h < n; ++h) {
    sigma[pi[h]] = pi[m.sigma(h)];
    rho[pi[h]] = pi[m.rho(h)];
  }
  return {build_map(sigma, rho), pi};
}

Bigon carry(const CombinatorialMap& from, const CombinatorialMap& to, const std::vector<int>& pi, const Bigon& b) {
  return make_bigon(to, to.edge_of(pi[from.edge_halves(b.e1).first]), to.edge_of(pi[from.edge_halves(b.e2).first]));
}

ChainTriangulation chain(std::vector<int> levels, std::uint64_t seed, int insertions = 2, int flips = 3) {
  ChainSpec spec;
  spec.level_sizes = std::move(levels);
  spec.insertions = insertions;
  spec.flips = flips;
  return make_chain_triangulation(spec, seed);
}

}  // namespace

TEST(BuildMap, LoopOnSphere) {
  auto m = build_map({1, 0}, {1, 0});
  EXPECT_EQ(m.vertex_count(), 1);
  EXPECT_EQ(m.edge_count(), 1);
  EXPECT_EQ(m.face_count(), 2);
  EXPECT_EQ(m.euler_characteristic(), 2);
  EXPECT_TRUE(m.connected());
}

TEST(BuildMap, SquareTorus) {
  auto m = torus_map();
  EXPECT_EQ(m.vertex_count(), 1);
  EXPECT_EQ(m.face_count(), 1);
  EXPECT_EQ(m.euler_characteristic(), 0);
  EXPECT_EQ(m.genus(), 1);
}

TEST(BuildMap, OrigamiCells) {
  auto m = cell_map(make_l_origami());
  EXPECT_EQ(m.face_count(), 4);
  EXPECT_EQ(m.edge_count(), 8);
  EXPECT_EQ(m.vertex_count(), 2);
  EXPECT_EQ(m.euler_characteristic(), -2);
  EXPECT_EQ(m.genus(), 2);
  EXPECT_EQ(cell_map(make_torus()).genus(), 1);
  EXPECT_EQ(cell_map(make_rational_octagon()).genus(), 2);
}

TEST(BuildMap, Errors) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code([] { build_map({0, 1}, {0, 1}); }), ErrorCode::SigmaFixedPoint);
  EXPECT_EQ(code([] { build_map({1, 0}, {0, 0}); }), ErrorCode::InvalidPermutation);
  EXPECT_EQ(code([] { build_map({1, 0, 3}, {0, 1, 2}); }), ErrorCode::InvalidPermutation);
  EXPECT_EQ(code([] { build_map({1, 2, 0, 3}, {0, 1, 2, 3}); }), ErrorCode::InvalidPermutation);
}

TEST(BuildMap, FacesAndRotationsAgree) {
  auto maps = all_rooted_maps(3);
  for (const auto& m : maps) {
    for (int h = 0; h < m.half_edge_count(); ++h) {
      EXPECT_EQ(m.rho(m.rho_inv(h)), h);
      EXPECT_EQ(m.face_of(m.phi(h)), m.face_of(h));
      EXPECT_EQ(m.vertex_of(m.rho(h)), m.vertex_of(h));
    }
    EXPECT_EQ(m.euler_characteristic() % 2, 0);
    EXPECT_GE(m.genus(), 0);
  }
}

TEST(RootedMaps, CountsByEdges) {
  auto maps = all_rooted_maps(5);
  std::map<int, int> by_edges;
  for (const auto& m : maps) ++by_edges[m.edge_count()];
  EXPECT_EQ(by_edges[1], 2);
  EXPECT_EQ(by_edges[2], 10);
  EXPECT_EQ(by_edges[3], 74);
  EXPECT_EQ(by_edges[4], 706);
  EXPECT_EQ(by_edges[5], 8162);
}

TEST(Bigons, Enumeration) {
  EXPECT_TRUE(find_bigons(build_map({1, 0}, {1, 0})).empty());
  EXPECT_TRUE(find_bigons(surface_map(octahedron())).empty());
  EXPECT_TRUE(find_bigons(surface_map(seven_vertex_torus())).empty());
  EXPECT_EQ(find_bigons(parallel_edges(2)).size(), 1u);
  auto three = find_bigons(parallel_edges(3));
  ASSERT_EQ(three.size(), 3u);
  std::set<std::pair<int, int>> pairs;
  for (const auto& b : three) {
    EXPECT_LT(b.e1, b.e2);
    EXPECT_LT(b.v1, b.v2);
    EXPECT_EQ(b.associated_loop.size(), 2u);
    pairs.insert({b.e1, b.e2});
  }
  EXPECT_EQ(pairs, (std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Bigons, BruteForceParallelCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = make_chain_triangulation(random_chain_spec(rng), rng());
    std::map<std::pair<int, int>, int> mult;
    for (int e = 0; e < c.map.edge_count(); ++e) {
      auto [a, b] = c.map.edge_ends(e);
      if (a != b) ++mult[{std::min(a, b), std::max(a, b)}];
    }
    std::size_t expected = 0;
    for (auto [k, n] : mult) expected += n * (n - 1) / 2;
    EXPECT_EQ(find_bigons(c.map).size(), expected);
    EXPECT_EQ(expected, c.bigons.size());
  }
}

TEST(Cut, TorusAlongLoopGivesAnnulus) {
  auto m = torus_map();
  auto pieces = cut_along_cycle(m, {0});
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].genus, 0);
  EXPECT_EQ(pieces[0].boundary_count, 2);
}

TEST(Cut, SeparatingBigonInGenusTwo) {
  auto c = chain({1}, 5);
  EXPECT_EQ(c.map.genus(), 2);
  auto pieces = cut_along_cycle(c.map, c.bigons[0].associated_loop);
  ASSERT_EQ(pieces.size(), 2u);
  for (const auto& p : pieces) {
    EXPECT_EQ(p.genus, 1);
    EXPECT_EQ(p.boundary_count, 1);
  }
}

TEST(Cut, ContractibleBigon) {
  auto t = torus_with_contractible_bigon();
  EXPECT_EQ(t.map.genus(), 1);
  auto pieces = cut_along_cycle(t.map, t.bigon.associated_loop);
  ASSERT_EQ(pieces.size(), 2u);
  auto s = summarize(pieces);
  EXPECT_EQ(s[0].genus, 0);
  EXPECT_EQ(s[0].boundary_count, 1);
  EXPECT_EQ(s[1].genus, 1);
  EXPECT_FALSE(is_splitting(t.map, t.bigon));
  EXPECT_EQ(removal_components(t.map, t.bigon), 1);
}

TEST(Cut, NonSeparatingBigon) {
  auto m = cell_map(make_origami({{0, 0}, {1, 0}}, {1, 0}, {0, 1}));
  auto bigons = find_bigons(m);
  ASSERT_EQ(bigons.size(), 1u);
  EXPECT_EQ(cut_along_cycle(m, bigons[0].associated_loop).size(), 1u);
  EXPECT_FALSE(is_splitting(m, bigons[0]));
}

TEST(Cut, RejectsOpenWalks) {
  auto m = parallel_edges(2);
  EXPECT_THROW(cut_along_cycle(m, {}), Error);
  EXPECT_THROW(cut_along_cycle(m, {0}), Error);
  EXPECT_THROW(cut_along_cycle(m, {0, 0}), Error);
}

TEST(Cut, MatchesBruteForceOnSmallMaps) {
  int checked = 0;
  for (const auto& m : all_rooted_maps(4)) {
    for (const auto& loop : simple_cycles(m, 8)) {
      auto pieces = cut_along_cycle(m, loop);
      ASSERT_EQ(summarize(pieces), brute_force_cut(m, loop));
      EXPECT_EQ(chi_with_holes(pieces), m.euler_characteristic() + 2);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(Cut, MatchesBruteForceOnTriangulations) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = make_chain_triangulation(random_chain_spec(rng), rng());
    if (c.map.half_edge_count() > 200) continue;
    auto cycles = simple_cycles(c.map, 3);
    std::shuffle(cycles.begin(), cycles.end(), rng);
    cycles.resize(std::min<std::size_t>(cycles.size(), 20));
    for (const auto& loop : cycles) {
      auto pieces = cut_along_cycle(c.map, loop);
      EXPECT_EQ(summarize(pieces), brute_force_cut(c.map, loop));
      EXPECT_EQ(chi_with_holes(pieces), c.map.euler_characteristic() + 2);
    }
  }
}

TEST(Splitting, MarkedBigonOfDoubledTorus) {
  auto c = chain({1}, 2);
  ASSERT_EQ(splitting_bigons(c.map).size(), 1u);
  EXPECT_TRUE(is_splitting(c.map, c.marked[0]));
  EXPECT_EQ(removal_components(c.map, c.marked[0]), 2);
  EXPECT_EQ(removal_components(parallel_edges(2), find_bigons(parallel_edges(2))[0]), 0);
}

TEST(Splitting, ThreeBigonChain) {
  auto c = chain({3}, 7);
  auto sb = splitting_bigons(c.map);
  ASSERT_EQ(sb.size(), 3u);
  auto order = order_splitting_bigons(c.map);
  ASSERT_EQ(order.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(order[i].bigon, c.bigons[i]);
    EXPECT_EQ(order[i].red_side.size(), static_cast<std::size_t>(i));
    EXPECT_EQ(order[i].x, i + 1);
    EXPECT_EQ(order[i].y, 1);
  }
  EXPECT_EQ(count_valid_orderings(c.map, sb), 1);

  EXPECT_EQ(bigon_side(c.map, c.bigons[1], c.bigons[0]), Side::Side1);
  EXPECT_EQ(bigon_side(c.map, c.bigons[1], c.bigons[2]), Side::Side2);
  for (const auto& a : sb)
    for (const auto& b : sb) EXPECT_TRUE(loops_cobound_sphere(c.map, a, b));
  EXPECT_EQ(bounded_genus_between(c.map, c.bigons[0], c.bigons[1]), 0);
  EXPECT_EQ(bounded_genus_between(c.map, c.bigons[0], c.bigons[0]), 0);

  auto d = decompose(c.map);
  ASSERT_EQ(d.pieces.size(), 4u);
  std::vector<int> genera;
  for (const auto& p : d.pieces) genera.push_back(p.genus);
  EXPECT_EQ(genera, (std::vector<int>{1, 0, 0, 1}));
  EXPECT_TRUE(d.pieces.front().has_vertex(c.red_vertex));
}

TEST(Splitting, SharedVertex) {
  ChainSpec spec;
  spec.level_sizes = {3};
  spec.insertions = 1;
  spec.share_vertices = true;
  auto c = make_chain_triangulation(spec, 3);
  std::set<int> shared;
  for (int i = 0; i + 1 < 3; ++i) {
    const auto &a = c.bigons[i], &b = c.bigons[i + 1];
    bool common = a.v1 == b.v1 || a.v1 == b.v2 || a.v2 == b.v1 || a.v2 == b.v2;
    EXPECT_TRUE(common);
  }
  EXPECT_EQ(bigon_side(c.map, c.bigons[1], c.bigons[0]), Side::Side1);
  EXPECT_EQ(bigon_side(c.map, c.bigons[1], c.bigons[2]), Side::Side2);
  EXPECT_EQ(decompose(c.map).pieces.size(), 4u);
  EXPECT_EQ(count_valid_orderings(c.map, splitting_bigons(c.map)), 1);
}

TEST(Splitting, GenusThreeOrder) {
  auto c = chain({2, 1}, 9);
  auto order = order_splitting_bigons(c.map);
  ASSERT_EQ(order.size(), 3u);
  std::vector<std::pair<int, int>> xy;
  for (const auto& o : order) xy.push_back({o.x, o.y});
  EXPECT_EQ(xy, (std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}));
  EXPECT_EQ(order[2].bigon, c.levels[1][0]);
  EXPECT_EQ(bounded_genus_between(c.map, c.levels[0][1], c.levels[1][0]), 1);
  EXPECT_EQ(bounded_genus_between(c.map, c.levels[0][0], c.levels[0][1]), 0);

  std::vector<int> genera;
  for (const auto& p : decompose(c.map).pieces) genera.push_back(p.genus);
  EXPECT_EQ(genera, (std::vector<int>{1, 0, 1, 1}));

  auto simple = chain({1, 1}, 4);
  genera.clear();
  for (const auto& p : decompose(simple.map).pieces) genera.push_back(p.genus);
  EXPECT_EQ(genera, (std::vector<int>{1, 1, 1}));
}

TEST(Splitting, DefaultRedEndIsCanonical) {
  auto c = chain({2}, 12);
  c.map.red_vertex.reset();
  auto red = red_vertex(c.map);
  ASSERT_TRUE(red.has_value());
  auto d = decompose(c.map);
  EXPECT_TRUE(d.pieces.front().has_vertex(*red));
  for (const auto& b : splitting_bigons(c.map)) {
    EXPECT_NE(*red, b.v1);
    EXPECT_NE(*red, b.v2);
  }
}

TEST(Splitting, SplitTriangulationCoversMap) {
  auto c = chain({2}, 31);
  for (const auto& b : c.bigons) {
    auto [t1, t2] = split_triangulation(c.map, b);
    std::set<int> v(t1.vertices.begin(), t1.vertices.end()), e(t1.edges.begin(), t1.edges.end());
    std::set<int> common_v, common_e;
    for (int x : t2.vertices)
      if (!v.insert(x).second) common_v.insert(x);
    for (int x : t2.edges)
      if (!e.insert(x).second) common_e.insert(x);
    EXPECT_EQ(static_cast<int>(v.size()), c.map.vertex_count());
    EXPECT_EQ(static_cast<int>(e.size()), c.map.edge_count());
    EXPECT_EQ(common_v, (std::set<int>{b.v1, b.v2}));
    EXPECT_EQ(common_e, (std::set<int>{b.e1, b.e2}));
  }
}

TEST(Splitting, SymmetricAndAsymmetricHalves) {
  ChainSpec sym;
  sym.level_sizes = {1};
  sym.insertions = 3;
  sym.flips = 4;
  sym.mirror_ends = true;
  auto s = make_chain_triangulation(sym, 8);
  EXPECT_TRUE(halves_isomorphic(s.map, s.marked[0]));

  ChainSpec asym = sym;
  asym.mirror_ends = false;
  asym.piece_insertions = {1, 4};
  auto a = make_chain_triangulation(asym, 8);
  EXPECT_FALSE(halves_isomorphic(a.map, a.marked[0]));
  auto [t1, t2] = split_triangulation(a.map, a.marked[0]);
  EXPECT_NE(t1.edges.size(), t2.edges.size());
}

TEST(Splitting, GenusBetweenIsRelabelInvariant) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    auto c = make_chain_triangulation(random_chain_spec(rng), rng());
    auto [m2, pi] = relabel(c.map, rng);
    for (std::size_t i = 0; i < c.bigons.size(); ++i)
      for (std::size_t j = i + 1; j < c.bigons.size(); ++j)
        EXPECT_EQ(bounded_genus_between(c.map, c.bigons[i], c.bigons[j]),
                  bounded_genus_between(m2, carry(c.map, m2, pi, c.bigons[i]), carry(c.map, m2, pi, c.bigons[j])));
  }
}

TEST(Splitting, RandomChainsSplitIntoExpectedPieces) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = make_chain_triangulation(random_chain_spec(rng), rng());
    auto sb = splitting_bigons(c.map);
    ASSERT_EQ(sb.size(), c.bigons.size());
    for (const auto& b : sb) EXPECT_EQ(removal_components(c.map, b), 2);
    for (const auto& a : sb)
      for (const auto& b : sb)
        if (!(a == b)) {
          EXPECT_NO_THROW(bigon_side(c.map, a, b));
        }
    auto d = decompose(c.map);
    EXPECT_EQ(d.pieces.size(), c.bigons.size() + 1);
    int genus = 0;
    for (const auto& p : d.pieces) {
      EXPECT_TRUE(p.genus == 0 || p.genus == 1);
      EXPECT_LE(p.boundary_count, 2);
      genus += p.genus;
    }
    EXPECT_EQ(genus, c.genus);
    if (sb.size() <= 5) {
      EXPECT_EQ(count_valid_orderings(c.map, sb), 1);
    }
  }
}

TEST(Repack, SymmetricSingleBigonHasNone) {
  ChainSpec sym;
  sym.level_sizes = {1};
  sym.insertions = 2;
  sym.mirror_ends = true;
  auto c = make_chain_triangulation(sym, 5);
  auto r = enumerate_repackings(c.map, c.marked, 2);
  EXPECT_EQ(r.bound, 1);
  EXPECT_EQ(r.candidates.size(), 0u);
}

TEST(Repack, AsymmetricSingleBigonHasOne) {
  auto c = chain({1}, 6, 3, 2);
  ASSERT_FALSE(halves_isomorphic(c.map, c.marked[0]));
  auto r = enumerate_repackings(c.map, c.marked, 2);
  EXPECT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].orientation, RepackOrientation::Reversed);
}

TEST(Repack, BoundsHold) {
  auto c3 = chain({3}, 13);
  auto r3 = enumerate_repackings(c3.map, c3.marked, 2);
  EXPECT_EQ(r3.bound, 5);
  EXPECT_EQ(r3.assignments_tried, 6);
  EXPECT_LE(static_cast<int>(r3.candidates.size()), 5);

  auto g3 = chain({2, 1}, 14);
  auto rg = enumerate_repackings(g3.map, g3.marked, 3);
  EXPECT_EQ(rg.bound, 3);
  EXPECT_LE(static_cast<int>(rg.candidates.size()), 3);
  for (const auto& cand : rg.candidates) EXPECT_EQ(cand.induced_subtriangulations.size(), 3u);

  for (int k = 1; k <= 6; ++k) EXPECT_EQ(repacking_bound({k}), 2 * k - 1);
}

TEST(Repack, RejectsNonSplittingMarks) {
  auto t = torus_with_contractible_bigon();
  EXPECT_THROW(enumerate_repackings(t.map, {t.bigon}, 2), Error);
  auto c = chain({1}, 3);
  EXPECT_THROW(enumerate_repackings(c.map, {}, 2), Error);
}

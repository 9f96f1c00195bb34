#include "flatpack/builders.hpp"
#include "flatpack/fixtures.hpp"
#include "flatpack/packing.hpp"
#include "flatpack/trigen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace flatpack;

namespace {

QPoint P(Rat x, Rat y) { return {x, y}; }

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

TorusPacking single_circle(QPoint center, Rat r2) {
  TorusPacking t;
  t.circles = {PlanarCircle{center, r2, "C"}};
  return t;
}

// Label multiset of the tangencies.
std::map<std::pair<std::string, std::string>, int> contact_labels(const Configuration& c, const ContactsGraph& g) {
  std::map<std::pair<std::string, std::string>, int> out;
  for (const auto& t : g.tangencies) {
    auto a = c.circles[t.circle_a].label, b = c.circles[t.circle_b].label;
    out[{std::min(a, b), std::max(a, b)}]++;
  }
  return out;
}

// Every circle labelled `a` touches some circle labelled `b`.
bool every_touches(const Configuration& c, const ContactsGraph& g, const std::string& a, const std::string& b) {
  bool seen = false;
  for (const auto& gc : c.circles) {
    if (gc.label != a) continue;
    seen = true;
    bool hit = false;
    for (const auto& t : g.tangencies) {
      int other = t.circle_a == gc.id ? t.circle_b : t.circle_b == gc.id ? t.circle_a : -1;
      if (other >= 0 && c.circles[other].label == b) hit = true;
    }
    if (!hit) return false;
  }
  return seen;
}

// Face-pair rule evaluated directly from phi orbits, independent of the map's face tables.
bool brute_force_triangulation(const CombinatorialMap& m) {
  const int n = m.half_edge_count();
  std::vector<int> face(n, -1);
  std::vector<std::vector<int>> walks;
  for (int h = 0; h < n; ++h) {
    if (face[h] >= 0) continue;
    std::vector<int> w;
    for (int x = h; face[x] < 0; x = m.phi(x)) {
      face[x] = static_cast<int>(walks.size());
      w.push_back(x);
    }
    walks.push_back(w);
  }
  auto edge = [&](int h) { return std::min(h, m.sigma(h)); };
  for (const auto& w : walks)
    if (w.size() > 3) return false;
  for (std::size_t a = 0; a < walks.size(); ++a)
    for (std::size_t b = a + 1; b < walks.size(); ++b) {
      std::set<int> va, vb, ea, eb;
      for (int h : walks[a]) va.insert(m.vertex_of(h)), ea.insert(edge(h));
      for (int h : walks[b]) vb.insert(m.vertex_of(h)), eb.insert(edge(h));
      std::set<int> sv, se;
      for (int v : va)
        if (vb.count(v)) sv.insert(v);
      for (int e : ea)
        if (eb.count(e)) se.insert(e);
      if (se.empty()) {
        if (sv.size() > 2) return false;
      } else if (se.size() == 1) {
        int h = *se.begin();
        if (sv != std::set<int>{m.vertex_of(h), m.vertex_of(m.sigma(h))}) return false;
      } else {
        return false;
      }
    }
  return true;
}

CombinatorialMap random_map(std::mt19937_64& rng, int edges) {
  int n = 2 * edges;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> sigma(n);
  for (int i = 0; i < n; i += 2) sigma[perm[i]] = perm[i + 1], sigma[perm[i + 1]] = perm[i];
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> rho(n);
  // Random vertex partition: consecutive runs of the shuffled half-edges become rho-cycles.
  std::uniform_int_distribution<int> len(1, 4);
  for (int i = 0; i < n;) {
    int l = std::min(len(rng), n - i);
    for (int j = 0; j < l; ++j) rho[perm[i + j]] = perm[i + (j + 1) % l];
    i += l;
  }
  return build_map(sigma, rho);
}

}  // namespace

// ==== sectors ====

TEST(DiskSectors, FullDiskInsideSquare) {
  auto t = make_torus();
  auto secs = disk_sectors(t, 0, P(Rat(1, 2), Rat(1, 2)), Rat(1, 25));
  ASSERT_EQ(secs.size(), 1u);
  EXPECT_TRUE(secs[0].boundary_segments.empty());
  EXPECT_EQ(secs[0].arc.start, secs[0].arc.end);
  EXPECT_NEAR(arc_angle(secs[0].arc), kTwoPi, 1e-12);
  auto c = make_configuration(t, secs);
  ASSERT_EQ(c.circles.size(), 1u);
  EXPECT_EQ(c.circles[0].k, 1);
  EXPECT_TRUE(verify_configuration(c).all_pass());
}

TEST(DiskSectors, CornerQuarterDisksFormOneCircle) {
  auto c = torus_configuration(single_circle(QPoint{}, Rat(1, 16)));
  EXPECT_EQ(c.sectors.size(), 4u);
  for (const auto& s : c.sectors) EXPECT_NEAR(arc_angle(s.arc), kTwoPi / 4, 1e-12);
  ASSERT_EQ(c.circles.size(), 1u);
  EXPECT_EQ(c.circles[0].k, 1);
  EXPECT_NEAR(c.circles[0].angle_sum, kTwoPi, 1e-9);
  EXPECT_TRUE(verify_configuration(c).all_pass());
  auto g = sector_graph(c.surface, c.sectors);
  EXPECT_EQ(g.edges.size(), 4u);
}

TEST(DiskSectors, EdgeCenteredDiskSplitsInTwo) {
  auto c = torus_configuration(single_circle(P(Rat(1, 2), Rat(0)), Rat(1, 25)));
  ASSERT_EQ(c.sectors.size(), 2u);
  for (const auto& s : c.sectors) EXPECT_NEAR(arc_angle(s.arc), kTwoPi / 2, 1e-12);
  ASSERT_EQ(c.circles.size(), 1u);
  EXPECT_EQ(c.circles[0].k, 1);
}

TEST(DiskSectors, IrrationalSideCrossingThrows) {
  auto t = make_torus();
  EXPECT_EQ(error_of([&] { disk_sectors(t, 0, P(Rat(1, 2), Rat(1, 2)), Rat(1, 3)); }),
            ErrorCode::IrrationalIntersection);
}

TEST(DiskSectors, RationalCirclePoint) {
  for (Rat r2 : {Rat(1), Rat(1, 4), Rat(1, 25), Rat(2), Rat(1, 8), Rat(5, 9)}) {
    auto p = rational_circle_point(r2);
    ASSERT_TRUE(p.has_value()) << r2;
    EXPECT_EQ(dot(*p, *p), r2);
  }
  EXPECT_FALSE(rational_circle_point(Rat(3)).has_value());
}

TEST(Assemble, MissingQuarterBreaksChain) {
  auto c = torus_configuration(single_circle(QPoint{}, Rat(1, 16)));
  auto secs = c.sectors;
  secs.pop_back();
  EXPECT_EQ(error_of([&] { assemble_generalized_circles(c.surface, secs); }), ErrorCode::ArcChainBroken);
  auto lenient = assemble_lenient(c.surface, secs);
  ASSERT_EQ(lenient.size(), 1u);
  EXPECT_FALSE(lenient[0].chain_ok);
}

TEST(Assemble, HalfDiskIsNotAClosedCircle) {
  auto c = make_unmatched_half_disk();
  EXPECT_EQ(error_of([&] { assemble_generalized_circles(c.surface, c.sectors); }), ErrorCode::ArcChainBroken);
}

TEST(Assemble, TurnCountMatchesAngleSum) {
  for (auto id : all_figures()) {
    auto f = make_figure(id);
    for (const auto& gc : f.configuration.circles) {
      EXPECT_EQ(gc.k, static_cast<int>(std::lround(gc.angle_sum / kTwoPi))) << f.name;
      EXPECT_LT(std::abs(gc.angle_sum - kTwoPi * gc.k), kDefaultEpsAngle) << f.name;
    }
  }
}

// ==== verification ====

TEST(Verify, FigureFixturesPass) {
  for (auto id : all_figures()) {
    auto f = make_figure(id);
    auto r = verify_configuration(f.configuration);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(r.conditions[i].pass) << f.name << " condition " << i + 1 << ": " << r.conditions[i].witness;
    EXPECT_EQ(r.depth, 6);
  }
}

TEST(Verify, UnmatchedHalfDiskFailsBoundaryClosure) {
  auto r = verify_configuration(make_unmatched_half_disk());
  EXPECT_FALSE(r.conditions[0].pass);
  EXPECT_NE(r.conditions[0].witness.find("sector 0"), std::string::npos);
  EXPECT_FALSE(r.all_pass());
}

TEST(Verify, SlitEndInsideCircleFailsMetricCheck) {
  auto f = make_forbidden_slit_circle();
  auto r = verify_configuration(f.configuration);
  EXPECT_TRUE(r.conditions[0].pass);
  EXPECT_TRUE(r.conditions[2].pass);
  EXPECT_FALSE(r.conditions[3].pass);
  EXPECT_NE(r.conditions[3].witness.find("center not unique"), std::string::npos) << r.conditions[3].witness;
}

TEST(Verify, DepthOnlyAffectsMetricCondition) {
  std::vector<Configuration> cs = {make_figure(FigureId::SlitFromCenter).configuration,
                                   make_forbidden_slit_circle().configuration};
  for (const auto& c : cs) {
    auto base = verify_configuration(c, 1);
    bool shorter = false;
    for (int d = 1; d <= 7; ++d) {
      auto r = verify_configuration(c, d);
      for (int i = 0; i < 3; ++i) EXPECT_EQ(r.conditions[i].pass, base.conditions[i].pass) << "depth " << d;
      bool now = !r.conditions[3].pass && r.conditions[3].witness.find("closer") != std::string::npos;
      now = now || r.conditions[3].witness.find(" < ") != std::string::npos;
      EXPECT_TRUE(now || !shorter) << "a shorter path found at lower depth vanished at depth " << d;
      shorter = shorter || now;
    }
  }
}

// ==== slit relations ====

TEST(SlitRelation, Trichotomy) {
  PlanarCircle c{P(Rat(1, 2), Rat(1, 2)), Rat(1, 25), ""};
  EXPECT_EQ(classify_slit_relation(c, Segment{P(Rat(0), Rat(1, 10)), P(Rat(1), Rat(1, 10))}), SlitRelation::Disjoint);
  EXPECT_EQ(classify_slit_relation(c, Segment{P(Rat(1, 2), Rat(1, 2)), P(Rat(1), Rat(1))}),
            SlitRelation::ThroughCenter);
  EXPECT_EQ(classify_slit_relation(c, Segment{P(Rat(0), Rat(31, 50)), P(Rat(1), Rat(31, 50))}),
            SlitRelation::TwoPointCrossing);
  EXPECT_EQ(error_of([&] { classify_slit_relation(c, Segment{P(Rat(3, 5), Rat(1, 2)), P(Rat(1), Rat(1, 2))}); }),
            ErrorCode::IllegalRelation);
}

TEST(SlitRelation, TranslatesAreExamined) {
  PlanarCircle c{QPoint{}, Rat(1, 16), ""};
  Segment s{P(Rat(1), Rat(0)), P(Rat(1), Rat(1, 2))};
  EXPECT_EQ(classify_slit_relation(c, s), SlitRelation::Disjoint);
  EXPECT_EQ(classify_slit_relation(c, s, P(Rat(1), Rat(1))), SlitRelation::ThroughCenter);
}

TEST(SlitRelation, RandomSlitsNeverLeaveTheTrichotomy) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> coord(0, 32);
  PlanarCircle c{P(Rat(1, 2), Rat(1, 2)), Rat(1, 16), ""};
  int illegal = 0;
  for (int i = 0; i < 400; ++i) {
    QPoint a{Rat(coord(rng), 32), Rat(coord(rng), 32)}, b{Rat(coord(rng), 32), Rat(coord(rng), 32)};
    if (a == b) continue;
    auto strictly_inside = [&](const QPoint& p) { return squared_distance(p, c.center) < c.radius_sq; };
    bool forbidden = (strictly_inside(a) && a != c.center && !on_segment(c.center, Segment{a, b})) ||
                     (strictly_inside(b) && b != c.center && !on_segment(c.center, Segment{a, b}));
    try {
      auto r = classify_slit_relation(c, Segment{a, b});
      EXPECT_FALSE(forbidden);
      EXPECT_TRUE(r == SlitRelation::Disjoint || r == SlitRelation::ThroughCenter || r == SlitRelation::TwoPointCrossing);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IllegalRelation);
      EXPECT_TRUE(forbidden) << a << " " << b;
      ++illegal;
    }
  }
  EXPECT_GT(illegal, 0);
}

// ==== contacts ====

TEST(Contacts, TwoCircleTorusIsK2) {
  auto f = make_figure(FigureId::TwoCircleTorus);
  auto g = contacts_graph(f.configuration);
  EXPECT_EQ(g.map.vertex_count(), 2);
  EXPECT_EQ(g.map.edge_count(), 4);
  EXPECT_EQ(g.map.euler_characteristic(), 0);
  auto tri = is_triangulation(g);
  EXPECT_FALSE(tri.ok);
  EXPECT_NE(tri.violations.front().find("4 sides"), std::string::npos);
}

TEST(Contacts, FarApartCirclesHaveNoEdges) {
  TorusPacking t;
  t.circles = {PlanarCircle{P(Rat(1, 4), Rat(1, 4)), Rat(1, 100), "a"},
               PlanarCircle{P(Rat(3, 4), Rat(3, 4)), Rat(1, 100), "b"}};
  auto c = torus_configuration(t);
  EXPECT_TRUE(verify_configuration(c).all_pass());
  auto g = contacts_graph(c);
  EXPECT_EQ(g.map.edge_count(), 0);
  EXPECT_TRUE(g.tangencies.empty());
  EXPECT_FALSE(is_triangulation(g).ok);
}

TEST(Contacts, OverlapThrows) {
  TorusPacking t;
  t.circles = {PlanarCircle{P(Rat(1, 4), Rat(1, 2)), Rat(1, 25), "a"},
               PlanarCircle{P(Rat(3, 10), Rat(1, 2)), Rat(1, 25), "b"}};
  auto c = torus_configuration(t);
  EXPECT_FALSE(verify_configuration(c).conditions[1].pass);
  EXPECT_EQ(error_of([&] { contacts_graph(c); }), ErrorCode::OverlappingCircles);
}

TEST(Contacts, FigureExpectedContacts) {
  for (auto id : all_figures()) {
    auto f = make_figure(id);
    auto g = contacts_graph(f.configuration);
    for (const auto& [a, b] : f.expected_contacts) EXPECT_TRUE(every_touches(f.configuration, g, a, b)) << f.name << " " << a << "-" << b;
  }
}

TEST(Contacts, SlitCrossingCirclesTouchBothCornerCircles) {
  auto f = make_figure(FigureId::SlitCrossesCircle);
  auto g = contacts_graph(f.configuration);
  auto m = contact_labels(f.configuration, g);
  EXPECT_EQ((m[{"P0", "Y0+Y1"}]), 4);
  EXPECT_EQ((m[{"P1", "Y0+Y1"}]), 4);
}

TEST(Contacts, SymmetricAndAntiReflexive) {
  for (auto id : all_figures()) {
    auto f = make_figure(id);
    auto g = contacts_graph(f.configuration);
    ASSERT_EQ(static_cast<int>(g.tangencies.size()), g.map.edge_count());
    std::vector<SurfacePoint> points;
    for (int e = 0; e < g.map.edge_count(); ++e) {
      const auto& t = g.tangencies[e];
      EXPECT_NE(t.circle_a, t.circle_b);
      auto [x, y] = g.map.edge_ends(e);
      std::set<int> ends{g.circle_of_vertex[x], g.circle_of_vertex[y]};
      EXPECT_EQ(ends, (std::set<int>{t.circle_a, t.circle_b}));
      EXPECT_EQ(std::count(points.begin(), points.end(), t.point), 0) << "tangency point repeated";
      points.push_back(t.point);
    }
  }
}

TEST(Contacts, CircleOrderDoesNotMatter) {
  auto f = make_figure(FigureId::SlitCrossesCircle);
  auto p = f.first, q = f.second;
  std::reverse(p.circles.begin(), p.circles.end());
  std::reverse(q.circles.begin(), q.circles.end());
  auto c = doubled_configuration(p, q, *f.cut);
  EXPECT_EQ(contact_labels(c, contacts_graph(c)), contact_labels(f.configuration, contacts_graph(f.configuration)));
}

// ==== triangulation ====

TEST(Triangulation, AgreesWithBruteForceOnRandomMaps) {
  std::mt19937_64 rng(9001);
  int positive = 0;
  for (int i = 0; i < 3000; ++i) {
    int edges = 1 + static_cast<int>(rng() % 25);
    auto m = random_map(rng, edges);
    bool expect = brute_force_triangulation(m);
    EXPECT_EQ(faces_form_triangulation(m).ok, expect) << "map " << i;
    positive += expect;
  }
  EXPECT_GT(positive, 10);
}

TEST(Triangulation, SurfaceTriangulationsPass) {
  for (const auto& s : {seven_vertex_torus(), octahedron()}) {
    auto m = surface_map(s);
    EXPECT_TRUE(faces_form_triangulation(m).ok);
    EXPECT_TRUE(brute_force_triangulation(m));
  }
}

TEST(Triangulation, SingleLoopOnTorusFails) {
  ContactsGraph g;
  g.map = build_map({1, 0}, {1, 0});
  g.circle_of_vertex = {0};
  g.vertex_of_circle = {0};
  g.circle_count = 1;
  g.surface_euler = 0;
  auto tri = is_triangulation(g);
  EXPECT_FALSE(tri.ok);
}

// ==== chains ====

TEST(Chain, TwoCircleChainTriangulatesWithOneBigon) {
  auto p = make_chain_packing(2);
  auto r = check_triangprop(p.torus, p.torus, p.cut);
  EXPECT_TRUE(r.hypotheses);
  EXPECT_TRUE(r.conclusion);
  auto c = chain_configuration(p);
  EXPECT_TRUE(verify_configuration(c).all_pass());
  auto g = contacts_graph(c);
  auto bigons = find_bigons(g.map);
  ASSERT_EQ(bigons.size(), 1u);
  EXPECT_TRUE(is_splitting(g.map, bigons[0]));
}

TEST(Chain, LongerChainsTriangulate) {
  for (int k = 3; k <= 4; ++k) {
    auto p = make_chain_packing(k);
    auto r = check_triangprop(p.torus, p.torus, p.cut);
    EXPECT_TRUE(r.hypotheses) << k;
    EXPECT_TRUE(r.conclusion) << k;
  }
}

TEST(Chain, ConsecutiveChainCirclesTouchTwice) {
  for (int k = 2; k <= 4; ++k) {
    auto p = make_chain_packing(k);
    auto c = chain_configuration(p);
    auto g = contacts_graph(c);
    // Group circles by the chain labels they carry on the first torus.
    auto group = [&](int circle) {
      const auto& label = c.circles[circle].label;
      for (int i = 0; i < k; ++i)
        if (label.find(p.chain[i]) != std::string::npos) return i;
      return -1;
    };
    std::map<std::pair<int, int>, int> mult;
    for (const auto& t : g.tangencies) {
      int a = group(t.circle_a), b = group(t.circle_b);
      if (a >= 0 && b >= 0) mult[{std::min(a, b), std::max(a, b)}]++;
    }
    for (int i = 0; i + 1 < k; ++i) EXPECT_EQ((mult[{i, i + 1}]), 2) << "k=" << k << " pair " << i;
  }
}

TEST(Chain, InteriorChainCirclesSplitAcrossTheSlit) {
  // Circles centred inside the slit are not glued into one double circle by the sector model: the
  // two sides of the slit carry separate 1-circles, so the parallel tangency pairs do not form bigons.
  auto p = make_chain_packing(3);
  auto c = chain_configuration(p);
  int with_middle = 0;
  for (const auto& gc : c.circles)
    if (gc.label.find("A2.0") != std::string::npos) {
      ++with_middle;
      EXPECT_EQ(gc.k, 1);
    }
  EXPECT_EQ(with_middle, 2);
  EXPECT_TRUE(find_bigons(contacts_graph(c).map).empty());
}

TEST(Chain, SlitEndOffCenterBreaksHypotheses) {
  // The slit stops at the tangency point of the last chain circle and its right neighbour.
  auto p = make_chain_packing(2);
  auto cut = p.cut;
  cut.points[2] = cut.points[2] + P(Rat(1, 2), Rat(0));
  cut.points[3] = cut.points[3] + P(Rat(1, 2), Rat(0));
  auto r = check_triangprop(p.torus, p.torus, cut);
  EXPECT_FALSE(r.hypotheses);
}

TEST(Chain, DoesNotFitSmallTorus) {
  EXPECT_EQ(error_of([] { make_chain_packing(5, ChainOptions{Rat(1, 2), P(Rat(1), Rat(1))}); }),
            ErrorCode::ChainDoesNotFit);
  EXPECT_EQ(error_of([] { make_chain_packing(1); }), ErrorCode::ChainDoesNotFit);
  auto ok = make_chain_packing(2, ChainOptions{Rat(1, 4), P(Rat(1), Rat(2, 3))});
  EXPECT_EQ(ok.torus.size, P(Rat(1), Rat(2, 3)));
}

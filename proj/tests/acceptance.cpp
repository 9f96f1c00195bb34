#include "flatpack/builders.hpp"
#include "flatpack/fixtures.hpp"
#include "flatpack/packing.hpp"
#include "flatpack/trigen.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace flatpack;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    ok = false;
    if (notes.size() < 8) notes.push_back(why);
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

std::vector<std::string> split_label(const std::string& label) {
  std::vector<std::string> out;
  std::stringstream ss(label);
  for (std::string part; std::getline(ss, part, '+');) out.push_back(part);
  return out;
}

// ==== 1 ====

Outcome fixture_invariants() {
  Outcome o;
  auto origami = make_l_origami();
  o.expect(origami.genus() == 2, "origami genus " + std::to_string(origami.genus()));
  o.expect(stratum(origami) == std::vector<int>{1, 1}, "origami stratum");
  for (const auto& cp : origami.cone_points())
    o.expect(origami.vertex_classes()[cp.class_index].turns == 2, "origami cone angle is not 4π");
  auto oct = make_rational_octagon();
  o.expect(stratum(oct) == std::vector<int>{2}, "octagon stratum");
  o.expect(oct.cone_points().size() == 1 && oct.vertex_classes()[oct.cone_points()[0].class_index].turns == 3,
           "octagon cone angle is not 6π");
  auto torus = make_torus();
  o.expect(torus.genus() == 1 && torus.cone_points().empty(), "square torus");
  return o;
}

// ==== 2 ====

Outcome degree_sum() {
  Outcome o;
  for (int i = 0; i < 200; ++i) {
    int g = 2 + i % 3;
    auto slits = random_slits(g, 1000 + i, 32);
    auto s = make_slitted_surface(g, slits);
    int sum = 0;
    for (const auto& cp : s.cone_points()) sum += cp.degree;
    o.expect(s.genus() == g, "surface " + std::to_string(i) + " has genus " + std::to_string(s.genus()));
    o.expect(sum == 2 * g - 2, "surface " + std::to_string(i) + " degree sum " + std::to_string(sum));
  }
  return o;
}

// ==== 3 ====

Outcome configurations() {
  Outcome o;
  for (auto id : all_figures()) {
    auto f = make_figure(id);
    auto r = verify_configuration(f.configuration, 6);
    for (int i = 0; i < 4; ++i)
      o.expect(r.conditions[i].pass, f.name + " condition " + std::to_string(i + 1) + ": " + r.conditions[i].witness);
  }
  auto bad = make_forbidden_slit_circle();
  auto r = verify_configuration(bad.configuration, 6);
  o.expect(!r.conditions[3].pass, "forbidden geometry passes condition 4");
  const std::string& w = r.conditions[3].witness;
  o.expect(w.find("no path of squared length") != std::string::npos || w.find("closer") != std::string::npos ||
               w.find(" < ") != std::string::npos,
           "forbidden geometry rejected without a path witness: " + w);
  return o;
}

// ==== 4 ====

Outcome chain_triangulation() {
  Outcome o;
  for (int k = 2; k <= 4; ++k) {
    auto p = make_chain_packing(k);
    auto tp = check_triangprop(p.torus, p.torus, p.cut, 6);
    o.expect(tp.hypotheses && tp.conclusion, "k=" + std::to_string(k) + " check_triangprop (" +
                                                 std::to_string(tp.hypotheses) + ", " + std::to_string(tp.conclusion) + ")");
    auto c = chain_configuration(p);
    auto g = contacts_graph(c, 6);
    auto chain_index = [&](int circle) {
      for (const auto& part : split_label(c.circles[circle].label))
        for (int i = 0; i < k; ++i)
          if (part == p.chain[i]) return i;
      return -1;
    };
    int chain_bigons = 0;
    for (const auto& b : find_bigons(g.map)) {
      int x = chain_index(g.circle_of_vertex[b.v1]), y = chain_index(g.circle_of_vertex[b.v2]);
      if (x >= 0 && y >= 0 && std::abs(x - y) == 1) ++chain_bigons;
    }
    o.expect(chain_bigons == k - 1, "k=" + std::to_string(k) + ": " + std::to_string(chain_bigons) +
                                        " chain bigons, expected " + std::to_string(k - 1));
  }
  return o;
}

// ==== 5 ====

void splitting_suite(const CombinatorialMap& m, int genus, const std::vector<std::vector<Bigon>>& levels,
                     const std::string& name, Outcome& o) {
  auto sb = splitting_bigons(m);
  for (const auto& b : find_bigons(m))
    if (is_splitting(m, b)) o.expect(removal_components(m, b) == 2, name + ": splitting bigon without two components");
  for (const auto& a : sb)
    for (const auto& b : sb) {
      if (a == b) continue;
      try {
        Side s1 = bigon_side(m, a, b);
        o.expect(s1 == bigon_side(m, a, b), name + ": bigon_side is not stable");
      } catch (const Error& e) {
        o.fail(name + ": bigon_side " + e.what());
      }
    }
  std::vector<std::vector<Bigon>> groups = levels;
  if (genus == 2 || groups.empty()) groups = {sb};
  for (const auto& group : groups)
    for (const auto& a : group)
      for (const auto& b : group)
        o.expect(loops_cobound_sphere(m, a, b), name + ": splitting loops do not cobound a sphere");
  if (sb.empty()) return;
  if (sb.size() <= 5) o.expect(count_valid_orderings(m, sb) == 1, name + ": ordering is not unique");
  try {
    order_splitting_bigons(m);
    auto d = decompose(m);
    o.expect(d.pieces.size() == sb.size() + 1, name + ": " + std::to_string(d.pieces.size()) + " pieces");
    int total = 0;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
      int gi = d.pieces[i].genus;
      total += gi;
      o.expect(gi == 0 || gi == 1, name + ": piece of genus " + std::to_string(gi));
      if (genus == 2) {
        bool end = i == 0 || i + 1 == d.pieces.size();
        o.expect(gi == (end ? 1 : 0), name + ": genus pattern is not 1,0,...,0,1");
      }
    }
    o.expect(total == genus, name + ": piece genera do not add up");
  } catch (const Error& e) {
    o.fail(name + ": " + e.what());
  }
}

Outcome splitting_bigons_suite() {
  Outcome o;
  for (int k = 2; k <= 4; ++k) {
    auto g = contacts_graph(chain_configuration(make_chain_packing(k)), 6);
    splitting_suite(g.map, 2, {}, "chain packing " + std::to_string(k), o);
  }
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 500; ++i) {
    auto c = make_chain_triangulation(random_chain_spec(rng), rng());
    splitting_suite(c.map, c.genus, c.levels, "random triangulation " + std::to_string(i), o);
    int expected = 1;
    for (const auto& level : c.levels) expected += static_cast<int>(level.size());
    o.expect(static_cast<int>(splitting_bigons(c.map).size()) + 1 == expected,
             "random triangulation " + std::to_string(i) + ": piece count is not 1 + sum k_i");
  }
  return o;
}

// ==== 6 ====

Outcome uniqueness_bounds() {
  Outcome o;
  ChainSpec sym;
  sym.level_sizes = {1};
  sym.insertions = 2;
  sym.mirror_ends = true;
  auto s = make_chain_triangulation(sym, 5);
  o.expect(enumerate_repackings(s.map, s.marked, 2).candidates.empty(), "symmetric k=1 fixture has candidates");
  std::mt19937_64 rng(77);
  for (int k = 1; k <= 5; ++k)
    for (int trial = 0; trial < 4; ++trial) {
      ChainSpec spec;
      spec.level_sizes = {k};
      spec.insertions = 1 + static_cast<int>(rng() % 3);
      spec.flips = static_cast<int>(rng() % 3);
      auto c = make_chain_triangulation(spec, rng());
      auto r = enumerate_repackings(c.map, c.marked, 2);
      o.expect(r.bound == 2 * k - 1, "genus 2 bound for k=" + std::to_string(k));
      o.expect(static_cast<int>(r.candidates.size()) <= 2 * k - 1,
               "k=" + std::to_string(k) + ": " + std::to_string(r.candidates.size()) + " candidates");
    }
  for (const auto& levels : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    ChainSpec spec;
    spec.level_sizes = levels;
    spec.insertions = 1;
    auto c = make_chain_triangulation(spec, rng());
    auto r = enumerate_repackings(c.map, c.marked, 3);
    int bound = 2 * levels[0] * levels[1] - 1;
    o.expect(r.bound == bound, "genus 3 bound");
    o.expect(static_cast<int>(r.candidates.size()) <= bound, "genus 3 candidates exceed the bound");
  }
  for (int k = 1; k <= 10; ++k) o.expect(repacking_bound({k}) == 2 * k - 1, "general bound at g=2");
  return o;
}

// ==== 7 ====

Outcome cut_oracle() {
  Outcome o;
  long checked = 0;
  for (const auto& m : all_rooted_maps(6))
    for (const auto& loop : simple_cycles(m, 12)) {
      auto fast = summarize(cut_along_cycle(m, loop));
      auto slow = brute_force_cut(m, loop);
      o.expect(fast == slow, "cut mismatch on a map with " + std::to_string(m.half_edge_count()) + " half-edges");
      ++checked;
    }
  o.expect(checked > 0, "no cuts checked");
  return o;
}

// ==== 8 ====

Outcome metric_oracle() {
  Outcome o;
  auto t = make_torus();
  std::mt19937_64 rng(8080);
  std::uniform_int_distribution<long> den(1, 40);
  auto coord = [&] {
    long d = den(rng);
    return Rat(static_cast<long>(rng() % (d + 1)), d);
  };
  for (int i = 0; i < 1000; ++i) {
    QPoint p{coord(), coord()}, q{coord(), coord()};
    Rat best = squared_distance(p, q);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) best = std::min(best, squared_distance(p, q + QPoint{Rat(dx), Rat(dy)}));
    auto r = unfold_distance(t, {0, p}, {0, q}, 3);
    o.expect(r.length_sq && *r.length_sq == best, "pair " + std::to_string(i) + " distance mismatch");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  std::vector<int> only;
  app.add_option("--known-deviation", known, "Criteria whose failure is a recorded deviation; they do not set the exit code");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria = {
      {1, "fixture invariants", 1, fixture_invariants},
      {2, "degree-sum law on 200 slitted surfaces", 30, degree_sum},
      {3, "figure configurations and forbidden geometry", 10, configurations},
      {4, "chain packings k=2,3,4 triangulate with k-1 bigons", 10, chain_triangulation},
      {5, "splitting-bigon suite", 120, splitting_bigons_suite},
      {6, "uniqueness bounds", 30, uniqueness_bounds},
      {7, "cut oracle on all maps with <= 12 half-edges", 120, cut_oracle},
      {8, "metric oracle on the square torus", 30, metric_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_s) out.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
    bool is_known = std::find(known.begin(), known.end(), c.number) != known.end();
    std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.title << " (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    if (!out.ok && is_known) std::cout << " [known deviation]";
    std::cout << "\n";
    for (const auto& n : out.notes) std::cout << "      " << n << "\n";
    if (!out.ok && !is_known) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

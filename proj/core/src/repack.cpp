#include "flatpack/topomap.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace flatpack {

namespace {

std::vector<int> loop_of(const Bigon& b) { return b.associated_loop; }

bool same_pair(const Bigon& a, const Bigon& b) { return a.v1 == b.v1 && a.v2 == b.v2; }

// What marks the red end: a vertex off every splitting bigon, else an edge off every bigon.
struct Anchor {
  int vertex = -1;
  int edge = -1;
  bool in(const BoundedPiece& p) const { return vertex >= 0 ? p.has_vertex(vertex) : p.has_edge(edge); }
};

std::optional<Anchor> red_anchor(const CombinatorialMap& m, const std::vector<Bigon>& splitting) {
  if (m.red_vertex) return Anchor{*m.red_vertex, -1};
  if (splitting.empty()) return std::nullopt;
  std::vector<std::vector<int>> loops;
  std::set<int> on_bigon_v, on_bigon_e;
  for (const auto& b : splitting) {
    loops.push_back(loop_of(b));
    on_bigon_v.insert({b.v1, b.v2});
    on_bigon_e.insert({b.e1, b.e2});
  }
  auto pieces = cut_along_cycles(m, loops);
  std::optional<Anchor> best;
  for (const auto& p : pieces) {
    if (p.boundary_count != 1) continue;
    for (int v : p.vertex_origin)
      if (!on_bigon_v.count(v) && (!best || best->vertex < 0 || v < best->vertex)) best = Anchor{v, -1};
  }
  if (best) return best;
  for (const auto& p : pieces) {
    if (p.boundary_count != 1) continue;
    for (int e : p.edge_origin)
      if (!on_bigon_e.count(e) && (!best || e < best->edge)) best = Anchor{-1, e};
  }
  return best;
}

struct SideInfo {
  int red_genus = 0;
  std::set<int> red_side;  // indices into the bigon list
};

// For each bigon: genus of its red-side piece and the other bigons lying there.
std::vector<SideInfo> side_table(const CombinatorialMap& m, const std::vector<Bigon>& bigons, const Anchor& red) {
  std::vector<SideInfo> out(bigons.size());
  for (std::size_t i = 0; i < bigons.size(); ++i) {
    auto pieces = cut_along_cycle(m, loop_of(bigons[i]));
    if (pieces.size() != 2) throw Error(ErrorCode::OrderingImpossible, "bigon is not splitting");
    int r = red.in(pieces[0]) ? 0 : 1;
    if (!red.in(pieces[r])) throw Error(ErrorCode::OrderingImpossible, "red mark lies on a splitting bigon");
    out[i].red_genus = pieces[r].genus;
    for (std::size_t j = 0; j < bigons.size(); ++j) {
      if (j == i) continue;
      bool a = pieces[r].has_edge(bigons[j].e1), b = pieces[r].has_edge(bigons[j].e2);
      if (a != b) throw Error(ErrorCode::StraddlingLoop, "a splitting loop straddles another");
      if (a) out[i].red_side.insert(static_cast<int>(j));
    }
  }
  return out;
}

Subgraph subgraph_of(const BoundedPiece& p) {
  Subgraph g;
  g.vertices = p.vertex_origin;
  g.edges = p.edge_origin;
  for (auto* v : {&g.vertices, &g.edges}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return g;
}

// Smallest code over all roots of a connected labelled map: for each half-edge in breadth-first
// order, the numbers of its sigma and rho images, its vertex label and its face label.
std::vector<int> canonical_code(const CombinatorialMap& m, const std::vector<int>& vertex_label,
                                const std::vector<int>& face_label) {
  const int n = m.half_edge_count();
  std::vector<int> best;
  std::vector<int> num(n), order;
  for (int root = 0; root < n; ++root) {
    std::fill(num.begin(), num.end(), -1);
    order.clear();
    num[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int nb : {m.sigma(order[i]), m.rho(order[i])}) {
        if (num[nb] >= 0) continue;
        num[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
    std::vector<int> code;
    code.reserve(4 * n);
    for (int h : order) {
      code.push_back(num[m.sigma(h)]);
      code.push_back(num[m.rho(h)]);
      code.push_back(vertex_label[m.vertex_of(h)]);
      code.push_back(face_label[m.face_of(h)]);
    }
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<int> piece_code(const BoundedPiece& p, const std::map<int, int>& vertex_labels) {
  std::vector<int> vl(p.map.vertex_count(), 0), fl(p.map.face_count(), 0);
  for (int v = 0; v < p.map.vertex_count(); ++v) {
    auto it = vertex_labels.find(p.vertex_origin[v]);
    if (it != vertex_labels.end()) vl[v] = it->second;
  }
  for (std::size_t i = 0; i < p.hole_faces.size(); ++i) fl[p.hole_faces[i]] = 1 + p.hole_tags[i].cut;
  return canonical_code(p.map, vl, fl);
}

}  // namespace

bool is_splitting(const CombinatorialMap& m, const Bigon& b) {
  auto pieces = cut_along_cycle(m, loop_of(b));
  return pieces.size() == 2 && pieces[0].genus >= 1 && pieces[1].genus >= 1;
}

int removal_components(const CombinatorialMap& m, const Bigon& b) {
  std::vector<int> parent(m.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto gone = [&](int v) { return v == b.v1 || v == b.v2; };
  for (int e = 0; e < m.edge_count(); ++e) {
    auto [a, c] = m.edge_ends(e);
    if (!gone(a) && !gone(c)) parent[find(a)] = find(c);
  }
  std::set<int> roots;
  for (int v = 0; v < m.vertex_count(); ++v)
    if (!gone(v)) roots.insert(find(v));
  return static_cast<int>(roots.size());
}

std::vector<Bigon> splitting_bigons(const CombinatorialMap& m) {
  std::vector<Bigon> out;
  for (const auto& b : find_bigons(m)) {
    if (!out.empty() && same_pair(out.back(), b)) continue;
    if (is_splitting(m, b)) out.push_back(b);
  }
  return out;
}

std::optional<int> red_vertex(const CombinatorialMap& m) {
  auto a = red_anchor(m, splitting_bigons(m));
  if (!a || a->vertex < 0) return std::nullopt;
  return a->vertex;
}

Side bigon_side(const CombinatorialMap& m, const Bigon& splitting, const Bigon& other) {
  if (same_pair(splitting, other)) throw Error(ErrorCode::StraddlingLoop, "bigons on the same vertex pair are not distinct");
  cut_along_cycles(m, {loop_of(splitting), loop_of(other)});  // throws when the second loop straddles
  auto pieces = cut_along_cycle(m, loop_of(splitting));
  int holder = pieces[0].has_edge(other.e1) ? 0 : 1;
  if (pieces[holder].has_edge(other.e2) != true) throw Error(ErrorCode::StraddlingLoop, "loop lies on both sides");
  int first = -1;
  if (auto red = red_anchor(m, splitting_bigons(m)); red && red->vertex != splitting.v1 && red->vertex != splitting.v2) {
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
      if (red->in(pieces[i])) first = i;
  }
  if (first < 0) {
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
      for (const auto& t : pieces[i].hole_tags)
        if (t.side == 0) first = i;
  }
  return holder == first ? Side::Side1 : Side::Side2;
}

int bounded_genus_between(const CombinatorialMap& m, const Bigon& b1, const Bigon& b2) {
  if (b1 == b2) return 0;
  auto pieces = cut_along_cycles(m, {loop_of(b1), loop_of(b2)});
  const BoundedPiece* middle = nullptr;
  for (const auto& p : pieces)
    if (p.has_hole(0) && p.has_hole(1)) {
      if (middle) throw Error(ErrorCode::DecompositionMismatch, "two pieces touch both loops");
      middle = &p;
    }
  if (!middle) throw Error(ErrorCode::DecompositionMismatch, "no piece touches both loops");
  return middle->genus;
}

bool loops_cobound_sphere(const CombinatorialMap& m, const Bigon& b1, const Bigon& b2) {
  try {
    return bounded_genus_between(m, b1, b2) == 0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DecompositionMismatch) return false;
    throw;
  }
}

std::vector<OrderedBigon> order_splitting_bigons(const CombinatorialMap& m) {
  auto bigons = splitting_bigons(m);
  if (bigons.empty()) return {};
  auto red = red_anchor(m, bigons);
  if (!red) throw Error(ErrorCode::OrderingImpossible, "no red end");
  auto table = side_table(m, bigons, *red);
  std::vector<int> idx(bigons.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::pair{table[a].red_genus, table[a].red_side.size()} < std::pair{table[b].red_genus, table[b].red_side.size()};
  });
  std::vector<int> pos(bigons.size());
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<int>(i);
  std::vector<OrderedBigon> out;
  const int g = m.genus();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const SideInfo& s = table[idx[i]];
    OrderedBigon ob;
    ob.bigon = bigons[idx[i]];
    ob.y = s.red_genus;
    ob.x = (i > 0 && out.back().y == ob.y) ? out.back().x + 1 : 1;
    for (int j : s.red_side) ob.red_side.push_back(pos[j]);
    std::sort(ob.red_side.begin(), ob.red_side.end());
    std::vector<int> expected(i);
    std::iota(expected.begin(), expected.end(), 0);
    if (ob.red_side != expected) throw Error(ErrorCode::OrderingImpossible, "red sides are not nested");
    if (ob.y < 1 || ob.y > g - 1) throw Error(ErrorCode::OrderingImpossible, "red-side genus out of range");
    out.push_back(std::move(ob));
  }
  return out;
}

int count_valid_orderings(const CombinatorialMap& m, const std::vector<Bigon>& bigons) {
  if (bigons.empty()) return 1;
  auto red = red_anchor(m, bigons);
  if (!red) return 0;
  auto table = side_table(m, bigons, *red);
  std::vector<int> perm(bigons.size());
  std::iota(perm.begin(), perm.end(), 0);
  int count = 0;
  do {
    bool ok = true;
    std::set<int> before;
    for (int b : perm) {
      if (table[b].red_side != before) {
        ok = false;
        break;
      }
      before.insert(b);
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

SplitDecomposition decompose(const CombinatorialMap& m) {
  SplitDecomposition d;
  d.ordered_bigons = order_splitting_bigons(m);
  const int k = static_cast<int>(d.ordered_bigons.size());
  if (k == 0) throw Error(ErrorCode::DecompositionMismatch, "no splitting bigons");
  std::vector<std::vector<int>> loops;
  for (const auto& ob : d.ordered_bigons) loops.push_back(loop_of(ob.bigon));
  auto pieces = cut_along_cycles(m, loops);
  if (static_cast<int>(pieces.size()) != k + 1)
    throw Error(ErrorCode::DecompositionMismatch,
                "expected " + std::to_string(k + 1) + " pieces, got " + std::to_string(pieces.size()));
  auto red = red_anchor(m, splitting_bigons(m));
  std::vector<int> slot(pieces.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::set<int> cuts;
    for (const auto& t : pieces[i].hole_tags) cuts.insert(t.cut);
    if (cuts.size() > 2) throw Error(ErrorCode::DecompositionMismatch, "piece bounded by more than two bigons");
    if (cuts.size() == 2) {
      int a = *cuts.begin(), b = *cuts.rbegin();
      if (b != a + 1) throw Error(ErrorCode::DecompositionMismatch, "piece bounded by non-consecutive bigons");
      slot[i] = b;
    } else if (cuts.size() == 1) {
      int c = *cuts.begin();
      bool red_end = red && red->in(pieces[i]);
      if (c == 0 && (red_end || k > 1)) slot[i] = 0;
      if (c == k - 1 && !red_end && (k > 1 || slot[i] < 0)) slot[i] = k;
      if (k == 1 && red_end) slot[i] = 0;
    }
    if (slot[i] < 0) throw Error(ErrorCode::DecompositionMismatch, "piece has no place in the chain");
  }
  std::vector<int> order(pieces.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (order[slot[i]] >= 0) throw Error(ErrorCode::DecompositionMismatch, "two pieces claim one place");
    order[slot[i]] = static_cast<int>(i);
  }
  int genus_sum = 0;
  for (int s = 0; s <= k; ++s) {
    BoundedPiece& p = pieces[order[s]];
    int expected = 1;
    if (s > 0 && s < k) expected = d.ordered_bigons[s - 1].y != d.ordered_bigons[s].y ? 1 : 0;
    if (p.genus != expected)
      throw Error(ErrorCode::DecompositionMismatch, "piece " + std::to_string(s) + " has genus " +
                                                        std::to_string(p.genus) + ", expected " + std::to_string(expected));
    genus_sum += p.genus;
    std::vector<int> bounds;
    if (s > 0) bounds.push_back(s - 1);
    if (s < k) bounds.push_back(s);
    d.piece_bounds.push_back(bounds);
    d.pieces.push_back(std::move(p));
  }
  if (genus_sum != m.genus()) throw Error(ErrorCode::DecompositionMismatch, "piece genera do not add up");
  return d;
}

std::pair<Subgraph, Subgraph> split_triangulation(const CombinatorialMap& m, const Bigon& b) {
  auto pieces = cut_along_cycle(m, loop_of(b));
  if (pieces.size() != 2) throw Error(ErrorCode::MarkedBigonNotSplitting, "bigon does not separate");
  int left = pieces[0].hole_tags.front().side == 0 ? 0 : 1;
  return {subgraph_of(pieces[left]), subgraph_of(pieces[1 - left])};
}

bool halves_isomorphic(const CombinatorialMap& m, const Bigon& b) {
  auto pieces = cut_along_cycle(m, loop_of(b));
  if (pieces.size() != 2) throw Error(ErrorCode::MarkedBigonNotSplitting, "bigon does not separate");
  std::map<int, int> labels{{b.v1, 1}, {b.v2, 2}};
  return piece_code(pieces[0], labels) == piece_code(pieces[1], labels);
}

int repacking_bound(const std::vector<int>& level_sizes) {
  long prod = 1;
  for (int k : level_sizes) prod *= k;
  return static_cast<int>(2 * prod - 1);
}

namespace {

struct Layout {
  std::vector<int> code;
  std::vector<Subgraph> parts;
};

// Cuts along the slit bigons (slit 1 first) and lists the pieces from torus 1 onwards; for a single
// slit `first_is_red` picks which side is torus 1. The code is the smallest over swapping the two
// labelled vertices of any slit.
Layout layout_of(const CombinatorialMap& m, const std::vector<Bigon>& slits, const Anchor& red, bool first_is_red) {
  std::vector<std::vector<int>> loops;
  for (const auto& b : slits) loops.push_back(loop_of(b));
  auto pieces = cut_along_cycles(m, loops);
  const int g = static_cast<int>(slits.size()) + 1;
  if (static_cast<int>(pieces.size()) != g) throw Error(ErrorCode::DecompositionMismatch, "slit bigons do not cut into tori");
  auto cuts_of = [&](const BoundedPiece& p) {
    std::set<int> c;
    for (const auto& t : p.hole_tags) c.insert(t.cut);
    return c;
  };
  std::vector<int> order;
  for (int i = 0; i < g; ++i) {
    auto c = cuts_of(pieces[i]);
    if (c == std::set<int>{0} && (g > 2 || red.in(pieces[i]) == first_is_red)) order.push_back(i);
  }
  if (order.size() != 1) throw Error(ErrorCode::DecompositionMismatch, "cannot find the first torus");
  for (int j = 1; j < g; ++j) {
    int found = -1;
    for (int i = 0; i < g; ++i) {
      if (std::find(order.begin(), order.end(), i) != order.end()) continue;
      if (cuts_of(pieces[i]).count(j - 1)) found = i;
    }
    if (found < 0) throw Error(ErrorCode::DecompositionMismatch, "slit pieces do not chain");
    order.push_back(found);
  }
  Layout out;
  for (int i : order) out.parts.push_back(subgraph_of(pieces[i]));
  const int labelings = 1 << slits.size();
  for (int mask = 0; mask < labelings; ++mask) {
    std::map<int, int> labels;
    for (std::size_t j = 0; j < slits.size(); ++j) {
      bool swap = (mask >> j) & 1;
      labels[swap ? slits[j].v2 : slits[j].v1] = 1 + 2 * static_cast<int>(j);
      labels[swap ? slits[j].v1 : slits[j].v2] = 2 + 2 * static_cast<int>(j);
    }
    std::vector<int> code;
    for (int i : order) {
      auto c = piece_code(pieces[i], labels);
      code.push_back(static_cast<int>(c.size()));
      code.insert(code.end(), c.begin(), c.end());
    }
    if (mask == 0 || code < out.code) out.code = std::move(code);
  }
  return out;
}

}  // namespace

RepackingReport enumerate_repackings(const CombinatorialMap& m, const std::vector<Bigon>& marked, int g) {
  if (g < 2 || static_cast<int>(marked.size()) != g - 1)
    throw Error(ErrorCode::MarkedBigonNotSplitting, "expected one marked bigon per slit");
  for (const auto& b : marked)
    if (!is_splitting(m, b)) throw Error(ErrorCode::MarkedBigonNotSplitting, "marked bigon is not splitting");
  auto ordered = order_splitting_bigons(m);
  RepackingReport rep;
  rep.level_sizes.assign(g - 1, 0);
  for (const auto& ob : ordered) {
    if (ob.y < 1 || ob.y > g - 1) throw Error(ErrorCode::OrderingImpossible, "bigon level out of range");
    ++rep.level_sizes[ob.y - 1];
  }
  for (int k : rep.level_sizes)
    if (k == 0) throw Error(ErrorCode::OrderingImpossible, "a slit level has no splitting bigon");
  rep.bound = repacking_bound(rep.level_sizes);
  auto red = red_anchor(m, splitting_bigons(m));
  std::vector<std::vector<Bigon>> level(g - 1);
  for (const auto& ob : ordered) level[ob.y - 1].push_back(ob.bigon);

  const std::vector<int> original = layout_of(m, marked, *red, true).code;
  std::set<std::vector<int>> seen{original};

  for (RepackOrientation o : {RepackOrientation::Forward, RepackOrientation::Reversed}) {
    std::vector<int> choice(g - 1, 0);
    for (;;) {
      std::vector<Bigon> slits(g - 1);
      for (int j = 0; j < g - 1; ++j) {
        int lvl = o == RepackOrientation::Forward ? j : g - 2 - j;
        slits[j] = level[lvl][choice[lvl]];
      }
      ++rep.assignments_tried;
      Layout lay = layout_of(m, slits, *red, o == RepackOrientation::Forward);
      if (seen.insert(lay.code).second)
        rep.candidates.push_back(RepackingCandidate{slits, o, std::move(lay.parts), std::move(lay.code)});
      int j = 0;
      while (j < g - 1 && ++choice[j] == static_cast<int>(level[j].size())) choice[j++] = 0;
      if (j == g - 1) break;
    }
  }
  return rep;
}

}  // namespace flatpack

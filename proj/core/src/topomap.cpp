#include "flatpack/topomap.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace flatpack {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void check_permutation(const std::vector<int>& p, const char* name) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
      throw Error(ErrorCode::InvalidPermutation, std::string(name) + " is not a permutation");
    seen[v] = 1;
  }
}

// Orbits of a permutation, each starting at its smallest element, ordered by that element.
std::vector<std::vector<int>> orbits(int n, const std::function<int(int)>& f, std::vector<int>& label) {
  label.assign(n, -1);
  std::vector<std::vector<int>> out;
  for (int h = 0; h < n; ++h) {
    if (label[h] >= 0) continue;
    std::vector<int> orb;
    for (int x = h; label[x] < 0; x = f(x)) {
      label[x] = static_cast<int>(out.size());
      orb.push_back(x);
    }
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

CombinatorialMap build_map(std::vector<int> sigma, std::vector<int> rho) {
  if (sigma.size() != rho.size() || sigma.size() % 2 != 0)
    throw Error(ErrorCode::InvalidPermutation, "sigma and rho must act on the same even set");
  check_permutation(sigma, "sigma");
  check_permutation(rho, "rho");
  const int n = static_cast<int>(sigma.size());
  for (int h = 0; h < n; ++h) {
    if (sigma[h] == h) throw Error(ErrorCode::SigmaFixedPoint, "sigma fixes half-edge " + std::to_string(h));
    if (sigma[sigma[h]] != h) throw Error(ErrorCode::InvalidPermutation, "sigma is not an involution");
  }
  CombinatorialMap m;
  m.sigma_ = std::move(sigma);
  m.rho_ = std::move(rho);
  m.rho_inv_.assign(n, 0);
  for (int h = 0; h < n; ++h) m.rho_inv_[m.rho_[h]] = h;
  m.vertices_ = orbits(n, [&](int h) { return m.rho_[h]; }, m.vertex_of_);
  m.faces_ = orbits(n, [&](int h) { return m.sigma_[m.rho_[h]]; }, m.face_of_);
  m.edge_of_.assign(n, -1);
  for (int h = 0; h < n; ++h) {
    if (m.edge_of_[h] >= 0) continue;
    m.edge_of_[h] = m.edge_of_[m.sigma_[h]] = static_cast<int>(m.edge_halves_.size());
    m.edge_halves_.push_back({h, m.sigma_[h]});
  }
  UnionFind uf(m.vertex_count());
  for (const auto& [a, b] : m.edge_halves_) uf.unite(m.vertex_of_[a], m.vertex_of_[b]);
  std::map<int, int> comp;
  m.vertex_component_.assign(m.vertex_count(), 0);
  for (int v = 0; v < m.vertex_count(); ++v) {
    auto it = comp.try_emplace(uf.find(v), static_cast<int>(comp.size())).first;
    m.vertex_component_[v] = it->second;
  }
  m.components_ = static_cast<int>(comp.size());
  return m;
}

CombinatorialMap map_from_faces(int edge_count, const std::vector<std::vector<Dart>>& faces) {
  const int n = 2 * edge_count;
  std::vector<int> sigma(n), rho(n, -1);
  for (int e = 0; e < edge_count; ++e) {
    sigma[2 * e] = 2 * e + 1;
    sigma[2 * e + 1] = 2 * e;
  }
  std::vector<char> used(n, 0);
  for (const auto& f : faces) {
    if (f.empty()) throw Error(ErrorCode::InvalidPermutation, "empty face");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Dart& d = f[i];
      if (d.edge < 0 || d.edge >= edge_count) throw Error(ErrorCode::InvalidPermutation, "face uses a missing edge");
      int h = dart_half(d);
      if (used[h]) throw Error(ErrorCode::InvalidPermutation, "dart used twice");
      used[h] = 1;
      int next = dart_half(f[(i + 1) % f.size()]);
      if (rho[next] >= 0) throw Error(ErrorCode::InvalidPermutation, "rotation assigned twice");
      rho[next] = sigma[h];
    }
  }
  if (std::find(used.begin(), used.end(), 0) != used.end())
    throw Error(ErrorCode::InvalidPermutation, "some dart lies on no face");
  return build_map(std::move(sigma), std::move(rho));
}

// ==== bigons ====

Bigon make_bigon(const CombinatorialMap& m, int e1, int e2) {
  if (e1 == e2) throw Error(ErrorCode::NotAClosedWalk, "a bigon needs two distinct edges");
  if (e1 > e2) std::swap(e1, e2);
  auto [a, b] = m.edge_ends(e1);
  auto [c, d] = m.edge_ends(e2);
  if (a == b || !((a == c && b == d) || (a == d && b == c)))
    throw Error(ErrorCode::NotAClosedWalk, "edges do not join the same two vertices");
  Bigon out;
  out.v1 = std::min(a, b);
  out.v2 = std::max(a, b);
  out.e1 = e1;
  out.e2 = e2;
  auto leaving = [&](int e, int v) {
    auto [h, k] = m.edge_halves(e);
    return m.vertex_of(h) == v ? h : k;
  };
  out.associated_loop = {leaving(e1, out.v1), leaving(e2, out.v2)};
  return out;
}

std::vector<Bigon> find_bigons(const CombinatorialMap& m) {
  std::map<std::pair<int, int>, std::vector<int>> parallel;
  for (int e = 0; e < m.edge_count(); ++e) {
    auto [a, b] = m.edge_ends(e);
    if (a != b) parallel[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  std::vector<Bigon> out;
  for (const auto& [key, edges] : parallel)
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j) out.push_back(make_bigon(m, edges[i], edges[j]));
  return out;
}

// ==== surgery ====

namespace {

struct RawCut {
  std::vector<int> sigma, rho;
  std::vector<int> src;  // half-edge of the input each new half-edge copies
  int left_hole = 0, right_hole = 0;
};

void validate_walk(const CombinatorialMap& m, const std::vector<int>& loop, ErrorCode code) {
  if (loop.empty()) throw Error(code, "empty walk");
  std::vector<char> edge_used(m.edge_count(), 0), vertex_used(m.vertex_count(), 0);
  for (std::size_t i = 0; i < loop.size(); ++i) {
    int h = loop[i];
    if (h < 0 || h >= m.half_edge_count()) throw Error(ErrorCode::NotAClosedWalk, "walk uses a missing half-edge");
    int next = loop[(i + 1) % loop.size()];
    if (next < 0 || next >= m.half_edge_count()) throw Error(ErrorCode::NotAClosedWalk, "walk uses a missing half-edge");
    if (m.vertex_of(m.sigma(h)) != m.vertex_of(next)) throw Error(code, "walk does not close up");
    if (edge_used[m.edge_of(h)]++) throw Error(ErrorCode::NotAClosedWalk, "walk repeats an edge");
    if (vertex_used[m.vertex_of(h)]++) throw Error(ErrorCode::NotAClosedWalk, "walk repeats a vertex");
  }
}

// Duplicates every loop edge. At each walk vertex the rotation splits into the wedge left of the
// walk (from the outgoing half-edge round to the incoming one) and the wedge right of it.
RawCut cut_once(const CombinatorialMap& m, const std::vector<int>& loop) {
  const int H = m.half_edge_count(), n = static_cast<int>(loop.size());
  RawCut r;
  r.sigma = m.sigma();
  r.rho = m.rho();
  r.sigma.resize(H + 2 * n);
  r.rho.resize(H + 2 * n);
  r.src.resize(H + 2 * n);
  std::iota(r.src.begin(), r.src.begin() + H, 0);
  auto hR = [&](int i) { return H + 2 * (((i % n) + n) % n); };
  auto aR = [&](int i) { return H + 2 * (((i - 1) % n + n) % n) + 1; };  // right copy of sigma(h_{i-1})
  for (int i = 0; i < n; ++i) {
    r.src[hR(i)] = loop[i];
    r.src[aR(i + 1)] = m.sigma(loop[i]);
    r.sigma[hR(i)] = aR(i + 1);
    r.sigma[aR(i + 1)] = hR(i);
  }
  for (int i = 0; i < n; ++i) {
    int h = loop[i];
    int a = m.sigma(loop[(i - 1 + n) % n]);
    // left wedge keeps the old ids and closes at a -> h
    r.rho[a] = h;
    // right wedge: a^R, rho(a), ..., rho^-1(h), h^R
    int first = m.rho(a);
    r.rho[aR(i)] = first == h ? hR(i) : first;
    if (first != h) r.rho[m.rho_inv(h)] = hR(i);
    r.rho[hR(i)] = aR(i);
  }
  r.left_hole = m.sigma(loop[n - 1]);
  r.right_hole = hR(0);
  return r;
}

struct Hole {
  int rep;
  BoundaryTag tag;
};

std::vector<BoundedPiece> split_components(const CombinatorialMap& source, const CombinatorialMap& whole,
                                           const std::vector<int>& origin, const std::vector<Hole>& holes) {
  std::vector<BoundedPiece> out(whole.component_count());
  std::vector<std::vector<int>> members(whole.component_count());
  for (int h = 0; h < whole.half_edge_count(); ++h)
    members[whole.component_of_vertex(whole.vertex_of(h))].push_back(h);
  std::vector<int> local(whole.half_edge_count(), -1);
  for (int c = 0; c < whole.component_count(); ++c) {
    const auto& hs = members[c];
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) local[hs[i]] = i;
    std::vector<int> sg(hs.size()), rh(hs.size());
    BoundedPiece& p = out[c];
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) {
      sg[i] = local[whole.sigma(hs[i])];
      rh[i] = local[whole.rho(hs[i])];
      p.origin.push_back(origin[hs[i]]);
      p.edge_origin.push_back(source.edge_of(origin[hs[i]]));
    }
    p.map = build_map(std::move(sg), std::move(rh));
    for (const auto& orb : p.map.vertices()) p.vertex_origin.push_back(source.vertex_of(p.origin[orb.front()]));
  }
  for (const Hole& hole : holes) {
    BoundedPiece& p = out[whole.component_of_vertex(whole.vertex_of(hole.rep))];
    p.hole_faces.push_back(p.map.face_of(local[hole.rep]));
    p.hole_tags.push_back(hole.tag);
  }
  for (auto& p : out) {
    p.boundary_count = static_cast<int>(p.hole_faces.size());
    int chi = p.map.euler_characteristic();
    if ((2 - chi) % 2 != 0 || chi > 2) throw Error(ErrorCode::DecompositionMismatch, "piece genus is not an integer");
    p.genus = (2 - chi) / 2;
    for (const auto& [name, v] : {std::pair{"red", source.red_vertex}, std::pair{"blue", source.blue_vertex}}) {
      if (!v) continue;
      for (int i = 0; i < p.map.vertex_count(); ++i)
        if (p.vertex_origin[i] == *v) {
          p.contains_marks.insert(name);
          if (std::string(name) == "red" && !p.map.red_vertex) p.map.red_vertex = i;
          if (std::string(name) == "blue" && !p.map.blue_vertex) p.map.blue_vertex = i;
        }
    }
  }
  return out;
}

}  // namespace

bool BoundedPiece::has_vertex(int v) const {
  return std::find(vertex_origin.begin(), vertex_origin.end(), v) != vertex_origin.end();
}

bool BoundedPiece::has_edge(int e) const { return std::find(edge_origin.begin(), edge_origin.end(), e) != edge_origin.end(); }

bool BoundedPiece::has_hole(int cut) const {
  return std::any_of(hole_tags.begin(), hole_tags.end(), [&](const BoundaryTag& t) { return t.cut == cut; });
}

std::vector<BoundedPiece> cut_along_cycle(const CombinatorialMap& m, const std::vector<int>& loop) {
  return cut_along_cycles(m, {loop});
}

std::vector<BoundedPiece> cut_along_cycles(const CombinatorialMap& m, const std::vector<std::vector<int>>& loops) {
  CombinatorialMap cur = m;
  std::vector<int> origin(m.half_edge_count());
  std::iota(origin.begin(), origin.end(), 0);
  std::vector<Hole> holes;
  std::vector<char> cut_edge(m.edge_count(), 0);
  for (int k = 0; k < static_cast<int>(loops.size()); ++k) {
    for (int h : loops[k]) {
      if (h < 0 || h >= m.half_edge_count()) throw Error(ErrorCode::NotAClosedWalk, "walk uses a missing half-edge");
      if (cut_edge[m.edge_of(h)]) throw Error(ErrorCode::NotAClosedWalk, "loops share an edge");
    }
    // Uncut half-edges keep their ids through every cut, so the loop can be used as given.
    validate_walk(cur, loops[k], k == 0 ? ErrorCode::NotAClosedWalk : ErrorCode::StraddlingLoop);
    RawCut r = cut_once(cur, loops[k]);
    std::vector<int> next_origin(r.src.size());
    for (std::size_t h = 0; h < r.src.size(); ++h) next_origin[h] = origin[r.src[h]];
    origin = std::move(next_origin);
    holes.push_back({r.left_hole, {k, 0}});
    holes.push_back({r.right_hole, {k, 1}});
    for (int h : loops[k]) cut_edge[m.edge_of(h)] = 1;
    cur = build_map(std::move(r.sigma), std::move(r.rho));
  }
  return split_components(m, cur, origin, holes);
}

// ==== oracles ====

std::vector<PieceSummary> brute_force_cut(const CombinatorialMap& m, const std::vector<int>& loop) {
  validate_walk(m, loop, ErrorCode::NotAClosedWalk);
  const int H = m.half_edge_count();
  std::vector<char> cut(m.edge_count(), 0);
  for (int h : loop) cut[m.edge_of(h)] = 1;
  auto is_cut = [&](int h) { return cut[m.edge_of(h)] != 0; };

  // faces traced as rho o sigma: from a dart go to its head, then turn to the next dart there
  std::vector<int> face(H, -1);
  int F = 0;
  for (int h = 0; h < H; ++h) {
    if (face[h] >= 0) continue;
    for (int x = h; face[x] < 0; x = m.rho(m.sigma(x))) face[x] = F;
    ++F;
  }
  UnionFind faces(F);
  for (int h = 0; h < H; ++h)
    if (!is_cut(h)) faces.unite(face[h], face[m.sigma(h)]);

  // corner before dart x is the wedge (rho^-1 x, x); neighbours across an uncut edge stay glued
  UnionFind corners(H);
  for (int x = 0; x < H; ++x)
    if (!is_cut(x)) corners.unite(x, m.rho(x));

  // boundary sides: darts of cut edges; a side runs from the corner of x to the corner of its
  // face successor
  UnionFind sides(H);
  std::map<int, int> side_at_corner;
  for (int x = 0; x < H; ++x) {
    if (!is_cut(x)) continue;
    for (int c : {corners.find(x), corners.find(m.rho(m.sigma(x)))}) {
      auto [it, fresh] = side_at_corner.try_emplace(c, x);
      if (!fresh) sides.unite(x, it->second);
    }
  }

  std::map<int, PieceSummary> comp;
  std::set<int> seen_vertex, seen_face, seen_side;
  for (int x = 0; x < H; ++x) {
    PieceSummary& s = comp[faces.find(face[x])];
    if (seen_face.insert(face[x]).second) ++s.faces;
    if (seen_vertex.insert(corners.find(x)).second) ++s.vertices;
    if (is_cut(x)) {
      ++s.edges;  // each bank of a cut edge is its own edge
      if (seen_side.insert(sides.find(x)).second) ++s.boundary_count;
    } else if (x < m.sigma(x)) {
      ++s.edges;
    }
  }
  std::vector<PieceSummary> out;
  for (auto& [k, s] : comp) {
    int chi = s.vertices - s.edges + s.faces;
    s.genus = (2 - chi - s.boundary_count) / 2;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PieceSummary> summarize(const std::vector<BoundedPiece>& pieces) {
  std::vector<PieceSummary> out;
  for (const auto& p : pieces)
    out.push_back(PieceSummary{p.genus, p.boundary_count, p.map.vertex_count(), p.map.edge_count(),
                               p.map.face_count() - p.boundary_count});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CombinatorialMap> all_rooted_maps(int max_edges) {
  const int cap = 2 * max_edges;
  std::vector<int> sigma(cap, -1), rho(cap, -1);
  std::vector<char> rho_hit(cap, 0);
  std::vector<CombinatorialMap> out;
  int n = 1;  // labelled half-edges; the root is 0
  std::function<void()> grow = [&] {
    int h = 0;
    while (h < n && sigma[h] >= 0 && rho[h] >= 0) ++h;
    if (h == n) {
      out.push_back(build_map(std::vector<int>(sigma.begin(), sigma.begin() + n),
                              std::vector<int>(rho.begin(), rho.begin() + n)));
      return;
    }
    if (sigma[h] < 0) {
      for (int x = 0; x < n; ++x) {
        if (x == h || sigma[x] >= 0) continue;
        sigma[h] = x;
        sigma[x] = h;
        grow();
        sigma[h] = sigma[x] = -1;
      }
      if (n < cap) {
        sigma[h] = n;
        sigma[n] = h;
        ++n;
        grow();
        --n;
        sigma[h] = sigma[n] = -1;
      }
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (rho_hit[x]) continue;
      rho[h] = x;
      rho_hit[x] = 1;
      grow();
      rho_hit[x] = 0;
      rho[h] = -1;
    }
    if (n < cap) {
      rho[h] = n;
      rho_hit[n] = 1;
      ++n;
      grow();
      --n;
      rho_hit[n] = 0;
      rho[h] = -1;
    }
  };
  grow();
  return out;
}

std::vector<std::vector<int>> simple_cycles(const CombinatorialMap& m, int max_length) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> on_path(m.vertex_count(), 0), edge_used(m.edge_count(), 0);
  std::function<void(int, int)> extend = [&](int h0, int at) {
    int start = m.vertex_of(h0);
    for (int x : m.vertices()[at]) {
      if (x <= h0 || edge_used[m.edge_of(x)]) continue;
      int head = m.vertex_of(m.sigma(x));
      if (head == start) {
        path.push_back(x);
        out.push_back(path);
        path.pop_back();
      } else if (!on_path[head] && static_cast<int>(path.size()) + 1 < max_length) {
        path.push_back(x);
        on_path[head] = 1;
        edge_used[m.edge_of(x)] = 1;
        extend(h0, head);
        edge_used[m.edge_of(x)] = 0;
        on_path[head] = 0;
        path.pop_back();
      }
    }
  };
  for (int h0 = 0; h0 < m.half_edge_count(); ++h0) {
    int u = m.vertex_of(h0), head = m.vertex_of(m.sigma(h0));
    path = {h0};
    if (head == u) {
      out.push_back(path);
      continue;
    }
    if (max_length < 2) continue;
    on_path[u] = on_path[head] = 1;
    edge_used[m.edge_of(h0)] = 1;
    extend(h0, head);
    edge_used[m.edge_of(h0)] = 0;
    on_path[u] = on_path[head] = 0;
  }
  return out;
}

}  // namespace flatpack

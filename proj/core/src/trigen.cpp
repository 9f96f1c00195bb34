#include "flatpack/trigen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace flatpack {

SimplicialSurface seven_vertex_torus() {
  SimplicialSurface s;
  s.vertex_count = 7;
  for (int i = 0; i < 7; ++i) {
    s.triangles.push_back({i, (i + 1) % 7, (i + 3) % 7});
    s.triangles.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return s;
}

SimplicialSurface octahedron() {
  SimplicialSurface s;
  s.vertex_count = 6;
  for (int i = 0; i < 4; ++i) {
    int a = 1 + i, b = 1 + (i + 1) % 4;
    s.triangles.push_back({0, a, b});
    s.triangles.push_back({5, b, a});
  }
  return s;
}

namespace {

using VertexPair = std::pair<int, int>;

// Directed side -> (triangle, position).
std::map<VertexPair, std::pair<int, int>> side_index(const SimplicialSurface& s) {
  std::map<VertexPair, std::pair<int, int>> out;
  for (int t = 0; t < static_cast<int>(s.triangles.size()); ++t)
    for (int i = 0; i < 3; ++i) out[{s.triangles[t][i], s.triangles[t][(i + 1) % 3]}] = {t, i};
  return out;
}

std::vector<VertexPair> undirected_edges(const SimplicialSurface& s) {
  std::vector<VertexPair> out;
  for (const auto& t : s.triangles)
    for (int i = 0; i < 3; ++i)
      if (t[i] < t[(i + 1) % 3]) out.push_back({t[i], t[(i + 1) % 3]});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void refine(SimplicialSurface& s, std::mt19937_64& rng, int insertions, int flips) {
  for (int n = 0; n < insertions; ++n) {
    std::uniform_int_distribution<std::size_t> pick(0, s.triangles.size() - 1);
    std::size_t t = pick(rng);
    auto [a, b, c] = s.triangles[t];
    int x = s.vertex_count++;
    s.triangles[t] = {a, b, x};
    s.triangles.push_back({b, c, x});
    s.triangles.push_back({c, a, x});
  }
  for (int n = 0; n < flips; ++n) {
    auto edges = undirected_edges(s);
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    auto [a, b] = edges[pick(rng)];
    auto sides = side_index(s);
    auto [t1, i1] = sides.at({a, b});
    auto [t2, i2] = sides.at({b, a});
    int c = s.triangles[t1][(i1 + 2) % 3];
    int d = s.triangles[t2][(i2 + 2) % 3];
    if (c == d || sides.count({c, d}) || sides.count({d, c})) continue;
    s.triangles[t1] = {a, d, c};
    s.triangles[t2] = {d, b, c};
  }
}

namespace {

struct Piece {
  SimplicialSurface surface;
  int offset = 0;  // global vertex label of local vertex 0
};

// Glues triangles whose directed sides carry keys; a plain side's key is its unordered vertex pair.
class Assembler {
public:
  void add_piece(const SimplicialSurface& s, int piece) {
    for (const auto& t : s.triangles) {
      Tri tri;
      tri.piece = piece;
      for (int i = 0; i < 3; ++i) {
        tri.v[i] = t[i];
        int a = t[i], b = t[(i + 1) % 3];
        tri.key[i] = "p" + std::to_string(piece) + ":" + std::to_string(std::min(a, b)) + "-" + std::to_string(std::max(a, b));
      }
      tris_.push_back(tri);
    }
  }

  void set_key(int piece, int a, int b, const std::string& key) {
    for (auto& t : tris_)
      for (int i = 0; i < 3; ++i)
        if (t.piece == piece && t.v[i] == a && t.v[(i + 1) % 3] == b) {
          t.key[i] = key;
          return;
        }
    throw Error(ErrorCode::InvalidPermutation, "no such side");
  }

  struct Result {
    CombinatorialMap map;
    std::map<std::string, int> edge_of_key;
    std::map<int, int> vertex_of_label;
  };

  Result build() const {
    Result r;
    std::map<std::string, int> tail;
    std::vector<std::vector<Dart>> faces;
    for (const auto& t : tris_) {
      std::vector<Dart> f;
      for (int i = 0; i < 3; ++i) {
        auto [it, fresh] = r.edge_of_key.emplace(t.key[i], static_cast<int>(r.edge_of_key.size()));
        if (fresh) tail[t.key[i]] = t.v[i];
        f.push_back(Dart{it->second, tail[t.key[i]] == t.v[i]});
      }
      faces.push_back(f);
    }
    r.map = map_from_faces(static_cast<int>(r.edge_of_key.size()), faces);
    for (const auto& t : tris_)
      for (int i = 0; i < 3; ++i) {
        int e = r.edge_of_key.at(t.key[i]);
        bool fwd = tail.at(t.key[i]) == t.v[i];
        int h = dart_half(Dart{e, fwd});
        auto [it, fresh] = r.vertex_of_label.emplace(t.v[i], r.map.vertex_of(h));
        if (!fresh && it->second != r.map.vertex_of(h))
          throw Error(ErrorCode::InvalidPermutation, "one label landed on two vertices");
      }
    return r;
  }

private:
  struct Tri {
    int piece = 0;
    std::array<int, 3> v;
    std::array<std::string, 3> key;
  };
  std::vector<Tri> tris_;
};

VertexPair pick_edge(const SimplicialSurface& s, std::mt19937_64& rng, const std::set<int>& avoid) {
  std::vector<VertexPair> ok;
  for (auto e : undirected_edges(s))
    if (!avoid.count(e.first) && !avoid.count(e.second)) ok.push_back(e);
  if (ok.empty()) throw Error(ErrorCode::ChainDoesNotFit, "no edge available for a hole");
  std::uniform_int_distribution<std::size_t> pick(0, ok.size() - 1);
  return ok[pick(rng)];
}

}  // namespace

CombinatorialMap surface_map(const SimplicialSurface& s) {
  Assembler as;
  as.add_piece(s, 0);
  return as.build().map;
}

ChainTriangulation make_chain_triangulation(const ChainSpec& spec, std::uint64_t seed) {
  const int g = static_cast<int>(spec.level_sizes.size()) + 1;
  if (g < 2) throw Error(ErrorCode::WrongSlitCount, "a chain needs at least one level");
  for (int k : spec.level_sizes)
    if (k < 1) throw Error(ErrorCode::WrongSlitCount, "every level needs a bigon");
  std::mt19937_64 rng(seed);

  // Piece sequence: torus, then per level (k - 1) spheres followed by a torus.
  std::vector<Piece> pieces;
  std::vector<int> bigon_level;
  int offset = 0;
  auto add = [&](SimplicialSurface s) {
    std::size_t i = pieces.size();
    refine(s, rng, i < spec.piece_insertions.size() ? spec.piece_insertions[i] : spec.insertions, spec.flips);
    pieces.push_back(Piece{s, offset});
    offset += s.vertex_count;
  };
  add(seven_vertex_torus());
  for (int y = 0; y < g - 1; ++y) {
    for (int x = 0; x + 1 < spec.level_sizes[y]; ++x) {
      add(octahedron());
      bigon_level.push_back(y);
    }
    if (spec.mirror_ends && g == 2 && spec.level_sizes[0] == 1) {
      pieces.push_back(Piece{pieces.front().surface, offset});
      offset += pieces.back().surface.vertex_count;
    } else {
      add(seven_vertex_torus());
    }
    bigon_level.push_back(y);
  }

  // Hole edges: piece i's outgoing hole and piece i+1's incoming hole, in local labels.
  const int n = static_cast<int>(pieces.size());
  std::vector<VertexPair> out_hole(n), in_hole(n);
  for (int i = 0; i < n; ++i) {
    const auto& s = pieces[i].surface;
    std::set<int> avoid;
    if (i > 0) {
      in_hole[i] = spec.mirror_ends && n == 2 ? out_hole[0] : pick_edge(s, rng, {});
      avoid = {in_hole[i].first, in_hole[i].second};
    }
    if (i + 1 < n) {
      if (spec.share_vertices && i > 0) {
        int shared = in_hole[i].first;
        std::set<int> other{in_hole[i].second};
        std::vector<VertexPair> ok;
        for (auto e : undirected_edges(s))
          if ((e.first == shared || e.second == shared) && !other.count(e.first) && !other.count(e.second)) ok.push_back(e);
        std::uniform_int_distribution<std::size_t> pick(0, ok.size() - 1);
        out_hole[i] = ok.at(pick(rng));
      } else {
        out_hole[i] = pick_edge(s, rng, avoid);
      }
    }
  }

  // Global labels: the incoming hole of piece i+1 reuses the labels of piece i's outgoing hole.
  std::vector<std::vector<int>> label(n);
  for (int i = 0; i < n; ++i) {
    label[i].resize(pieces[i].surface.vertex_count);
    for (int v = 0; v < pieces[i].surface.vertex_count; ++v) label[i][v] = pieces[i].offset + v;
    if (i > 0) {
      label[i][in_hole[i].first] = label[i - 1][out_hole[i - 1].first];
      label[i][in_hole[i].second] = label[i - 1][out_hole[i - 1].second];
    }
  }
  Assembler as;
  for (int i = 0; i < n; ++i) {
    SimplicialSurface relabelled = pieces[i].surface;
    for (auto& t : relabelled.triangles)
      for (int& v : t) v = label[i][v];
    as.add_piece(relabelled, i);
  }
  for (int i = 0; i + 1 < n; ++i) {
    int u = label[i][out_hole[i].first], v = label[i][out_hole[i].second];
    std::string k1 = "b" + std::to_string(i) + "+", k2 = "b" + std::to_string(i) + "-";
    as.set_key(i, u, v, k1);
    as.set_key(i + 1, v, u, k1);
    as.set_key(i, v, u, k2);
    as.set_key(i + 1, u, v, k2);
  }
  auto built = as.build();

  ChainTriangulation out;
  out.map = std::move(built.map);
  out.genus = g;
  out.levels.resize(g - 1);
  for (int i = 0; i + 1 < n; ++i) {
    Bigon b = make_bigon(out.map, built.edge_of_key.at("b" + std::to_string(i) + "+"),
                         built.edge_of_key.at("b" + std::to_string(i) + "-"));
    out.bigons.push_back(b);
    out.levels[bigon_level[i]].push_back(b);
  }
  for (const auto& lvl : out.levels) out.marked.push_back(lvl.front());
  for (int v = 0; v < pieces[0].surface.vertex_count; ++v)
    if (v != out_hole[0].first && v != out_hole[0].second) {
      out.red_vertex = built.vertex_of_label.at(label[0][v]);
      break;
    }
  out.map.red_vertex = out.red_vertex;
  return out;
}

ChainSpec random_chain_spec(std::mt19937_64& rng) {
  ChainSpec s;
  int g = std::uniform_int_distribution<int>(2, 4)(rng);
  std::uniform_int_distribution<int> k(1, 3);
  for (int y = 0; y + 1 < g; ++y) s.level_sizes.push_back(k(rng));
  s.insertions = std::uniform_int_distribution<int>(0, 4)(rng);
  s.flips = std::uniform_int_distribution<int>(0, 6)(rng);
  s.share_vertices = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
  return s;
}

}  // namespace flatpack

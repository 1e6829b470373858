#include "mdcensus/tri.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mdcensus {

namespace {

std::array<int8_t, 4> inverse_perm(const std::array<int8_t, 4>& p) {
  std::array<int8_t, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[p[i]] = int8_t(i);
  return inv;
}

int perm_sign(const std::array<int8_t, 4>& p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

// Plain union-find, no rollback; used for orbit computations.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

void Triangulation::glue(int tet, int face, int other_tet,
                         std::array<int8_t, 4> perm) {
  gluings[4 * tet + face] = Gluing{other_tet, perm};
  gluings[4 * other_tet + perm[face]] = Gluing{tet, inverse_perm(perm)};
}

bool Triangulation::closed() const {
  for (const auto& g : gluings)
    if (!g) return false;
  return true;
}

bool Triangulation::valid() const {
  if (int(gluings.size()) != 4 * tet_count) return false;
  for (int tet = 0; tet < tet_count; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = gluings[4 * tet + face];
      if (!g) continue;
      if (g->tet < 0 || g->tet >= tet_count) return false;
      std::array<char, 4> seen{};
      for (int v = 0; v < 4; ++v) {
        if (g->perm[v] < 0 || g->perm[v] > 3) return false;
        seen[g->perm[v]] = 1;
      }
      if (!(seen[0] && seen[1] && seen[2] && seen[3])) return false;
      int pf = g->perm[face];
      if (g->tet == tet && pf == face) return false;  // face glued to itself
      const auto& back = gluings[4 * g->tet + pf];
      if (!back || back->tet != tet) return false;
      if (back->perm != inverse_perm(g->perm)) return false;
    }
  return true;
}

std::string Triangulation::to_text() const {
  std::ostringstream out;
  for (int tet = 0; tet < tet_count; ++tet) {
    for (int face = 0; face < 4; ++face) {
      if (face) out << ' ';
      const auto& g = gluings[4 * tet + face];
      if (!g) {
        out << '-';
        continue;
      }
      out << '(' << g->tet << ',' << int(g->perm[face]) << ',';
      for (int v = 0; v < 4; ++v)
        if (v != face) out << int(g->perm[v]);
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

std::optional<Triangulation> Triangulation::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  Triangulation t(int(lines.size()));
  for (int tet = 0; tet < t.tet_count; ++tet) {
    std::string_view line = lines[tet];
    size_t pos = 0;
    for (int face = 0; face < 4; ++face) {
      while (pos < line.size() && line[pos] == ' ') pos++;
      if (pos >= line.size()) return std::nullopt;
      if (line[pos] == '-') {
        pos++;
        continue;
      }
      if (line[pos] != '(') return std::nullopt;
      pos++;
      Gluing g;
      auto [p1, ec1] =
          std::from_chars(line.data() + pos, line.data() + line.size(), g.tet);
      if (ec1 != std::errc()) return std::nullopt;
      pos = size_t(p1 - line.data());
      if (pos >= line.size() || line[pos] != ',') return std::nullopt;
      pos++;
      int partner_face = 0;
      auto [p2, ec2] = std::from_chars(line.data() + pos,
                                       line.data() + line.size(), partner_face);
      if (ec2 != std::errc()) return std::nullopt;
      pos = size_t(p2 - line.data());
      if (pos >= line.size() || line[pos] != ',') return std::nullopt;
      pos++;
      g.perm[face] = int8_t(partner_face);
      for (int v = 0; v < 4; ++v) {
        if (v == face) continue;
        if (pos >= line.size() || line[pos] < '0' || line[pos] > '3')
          return std::nullopt;
        g.perm[v] = int8_t(line[pos] - '0');
        pos++;
      }
      if (pos >= line.size() || line[pos] != ')') return std::nullopt;
      pos++;
      if (g.tet < 0 || g.tet >= t.tet_count || partner_face > 3)
        return std::nullopt;
      t.gluings[4 * tet + face] = g;
    }
    while (pos < line.size() && line[pos] == ' ') pos++;
    if (pos != line.size()) return std::nullopt;
  }
  if (!t.valid()) return std::nullopt;
  return t;
}

std::vector<EdgeClass> edge_classes(const Triangulation& t) {
  const int n = t.tet_count;
  // Directed tetrahedron edge (tet, x -> y) as 16*tet + 4*x + y.
  auto dir_id = [](int tet, int x, int y) { return 16 * tet + 4 * x + y; };
  UnionFind uf(16 * n);
  for (int tet = 0; tet < n; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[4 * tet + face];
      if (!g) continue;
      for (int x = 0; x < 4; ++x) {
        if (x == face) continue;
        for (int y = 0; y < 4; ++y) {
          if (y == face || y == x) continue;
          uf.unite(dir_id(tet, x, y), dir_id(g->tet, g->perm[x], g->perm[y]));
        }
      }
    }
  // Collect undirected classes in order of their smallest member.
  std::map<int, int> root_to_class;
  std::vector<EdgeClass> out;
  for (int tet = 0; tet < n; ++tet)
    for (int p = 0; p < 6; ++p) {
      int x = kPairs[p][0], y = kPairs[p][1];
      int root = uf.find(dir_id(tet, x, y));
      int root2 = uf.find(dir_id(tet, y, x));
      int canon = std::min(root, root2);
      auto [it, inserted] = root_to_class.try_emplace(canon, int(out.size()));
      if (inserted) out.emplace_back();
      EdgeClass& cls = out[it->second];
      cls.members.push_back(6 * tet + p);
      if (root == root2) cls.reversed = true;
    }
  std::sort(out.begin(), out.end(), [](const EdgeClass& a, const EdgeClass& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

std::vector<VertexClass> vertex_classes(const Triangulation& t) {
  const int n = t.tet_count;
  UnionFind uf(4 * n);
  for (int tet = 0; tet < n; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[4 * tet + face];
      if (!g) continue;
      for (int v = 0; v < 4; ++v)
        if (v != face) uf.unite(4 * tet + v, 4 * g->tet + g->perm[v]);
    }
  std::map<int, int> root_to_class;
  std::vector<VertexClass> out;
  for (int v = 0; v < 4 * n; ++v) {
    auto [it, inserted] = root_to_class.try_emplace(uf.find(v), int(out.size()));
    if (inserted) out.emplace_back();
    out[it->second].members.push_back(v);
  }
  std::sort(out.begin(), out.end(),
            [](const VertexClass& a, const VertexClass& b) {
              return a.members.front() < b.members.front();
            });
  return out;
}

std::vector<LinkComponent> vertex_links(const Triangulation& t) {
  const int n = t.tet_count;
  // Link triangle of (tet, v); its side in face f (f != v) as
  // 16*tet + 4*v + f; its corner on edge {v,w} as 16*tet + 4*v + w.
  auto side_id = [](int tet, int v, int f) { return 16 * tet + 4 * v + f; };
  auto corner_id = [](int tet, int v, int w) { return 16 * tet + 4 * v + w; };
  UnionFind sides(16 * n), corners(16 * n);
  std::vector<char> side_glued(16 * n, 0);
  for (int tet = 0; tet < n; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[4 * tet + face];
      if (!g) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == face) continue;
        side_glued[side_id(tet, v, face)] = 1;
        sides.unite(side_id(tet, v, face),
                    side_id(g->tet, g->perm[v], g->perm[face]));
        for (int w = 0; w < 4; ++w) {
          if (w == v || w == face) continue;
          corners.unite(corner_id(tet, v, w),
                        corner_id(g->tet, g->perm[v], g->perm[w]));
        }
      }
    }
  auto vclasses = vertex_classes(t);
  std::vector<int> class_of_vertex(4 * n, -1);
  for (int c = 0; c < int(vclasses.size()); ++c)
    for (int v : vclasses[c].members) class_of_vertex[v] = c;

  std::vector<LinkComponent> out(vclasses.size());
  std::vector<std::map<int, char>> seen_sides(vclasses.size());
  std::vector<std::map<int, char>> seen_corners(vclasses.size());
  std::vector<int> side_count(vclasses.size(), 0);
  std::vector<int> corner_count(vclasses.size(), 0);
  std::vector<bool> all_glued(vclasses.size(), true);
  for (int c = 0; c < int(vclasses.size()); ++c) out[c].vertex_class = c;
  for (int tet = 0; tet < n; ++tet)
    for (int v = 0; v < 4; ++v) {
      int c = class_of_vertex[4 * tet + v];
      out[c].triangles++;
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        if (!side_glued[side_id(tet, v, f)]) all_glued[c] = false;
        if (seen_sides[c].try_emplace(sides.find(side_id(tet, v, f)), 1).second)
          side_count[c]++;
        if (seen_corners[c]
                .try_emplace(corners.find(corner_id(tet, v, f)), 1)
                .second)
          corner_count[c]++;
      }
    }
  for (int c = 0; c < int(vclasses.size()); ++c) {
    out[c].euler = corner_count[c] - side_count[c] + out[c].triangles;
    out[c].closed = all_glued[c];
  }
  return out;
}

bool tri_connected(const Triangulation& t) {
  if (t.tet_count == 0) return false;
  std::vector<char> seen(t.tet_count, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int tet = stack.back();
    stack.pop_back();
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[4 * tet + face];
      if (g && !seen[g->tet]) {
        seen[g->tet] = 1;
        count++;
        stack.push_back(g->tet);
      }
    }
  }
  return count == t.tet_count;
}

bool is_3manifold(const Triangulation& t) {
  if (!tri_connected(t) || !t.closed()) return false;
  for (const LinkComponent& link : vertex_links(t))
    if (!link.closed || link.euler != 2) return false;
  for (const EdgeClass& e : edge_classes(t))
    if (e.reversed) return false;
  return true;
}

bool is_3manifold_allow_boundary(const Triangulation& t) {
  if (!tri_connected(t)) return false;
  for (const LinkComponent& link : vertex_links(t)) {
    if (link.closed ? link.euler != 2 : link.euler != 1) return false;
  }
  for (const EdgeClass& e : edge_classes(t))
    if (e.reversed) return false;
  return true;
}

bool is_orientable(const Triangulation& t) {
  std::vector<int> sign(t.tet_count, 0);
  for (int seed = 0; seed < t.tet_count; ++seed) {
    if (sign[seed]) continue;
    sign[seed] = 1;
    std::vector<int> stack = {seed};
    while (!stack.empty()) {
      int tet = stack.back();
      stack.pop_back();
      for (int face = 0; face < 4; ++face) {
        const auto& g = t.gluings[4 * tet + face];
        if (!g) continue;
        int want = -perm_sign(g->perm) * sign[tet];
        if (sign[g->tet] == 0) {
          sign[g->tet] = want;
          stack.push_back(g->tet);
        } else if (sign[g->tet] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

int euler_characteristic(const Triangulation& t) {
  int gluing_count = 0;
  for (const auto& g : t.gluings)
    if (g) gluing_count++;
  assert(gluing_count % 2 == 0);
  int faces = gluing_count / 2 + (4 * t.tet_count - gluing_count);
  int k = int(vertex_classes(t).size());
  int e = int(edge_classes(t).size());
  return k - e + faces - t.tet_count;
}

Triangulation decomposition_to_triangulation(const OrderedDecomposition& d,
                                             const FatGraph& fg) {
  Triangulation t(fg.tet_count);
  // For each triple: the three member contexts contribute one vertex
  // identification each, oriented tail side -> head side.
  std::vector<std::array<int8_t, 4>> vmap(fg.triple_count(),
                                          {-1, -1, -1, -1});
  std::vector<std::array<char, 4>> image_used(fg.triple_count(), {0, 0, 0, 0});
  for (const Walk& walk : d.walks) {
    const int m = int(walk.size());
    for (int p = 0; p < m; ++p) {
      int x = walk[p];
      int label = x < 0 ? -x : x;
      int triple_idx = label - 1;
      int s = entry_start_node(fg, x);
      int e = entry_end_node(fg, x);
      int prev_end = entry_end_node(fg, walk[(p + m - 1) % m]);
      int next_start = entry_start_node(fg, walk[(p + 1) % m]);
      if (fat_tet(prev_end) != fat_tet(s) || prev_end == s ||
          fat_tet(next_start) != fat_tet(e) || next_start == e)
        throw std::invalid_argument(
            "decomposition_to_triangulation: broken alternation");
      // Vertex opposite the traced edge on the start face maps to the one
      // on the end face.
      int src_vertex = fat_face(prev_end);
      int dst_vertex = fat_face(next_start);
      if (x < 0) std::swap(src_vertex, dst_vertex);  // orient tail -> head
      auto& map = vmap[triple_idx];
      auto& used = image_used[triple_idx];
      if (map[src_vertex] != -1 || used[dst_vertex])
        throw std::invalid_argument(
            "decomposition_to_triangulation: inconsistent vertex map");
      map[src_vertex] = int8_t(dst_vertex);
      used[dst_vertex] = 1;
    }
  }
  for (int i = 0; i < fg.triple_count(); ++i) {
    const Triple& tr = fg.triples[i];
    int tail_tet = fat_tet(tr.tail), tail_face = fat_face(tr.tail);
    int head_tet = fat_tet(tr.head), head_face = fat_face(tr.head);
    auto& map = vmap[i];
    if (map[tail_face] != -1)
      throw std::invalid_argument(
          "decomposition_to_triangulation: vertex map touches the face label");
    int count = 0;
    for (int v = 0; v < 4; ++v)
      if (map[v] != -1) count++;
    if (count != 3)
      throw std::invalid_argument(
          "decomposition_to_triangulation: triple not fully used");
    map[tail_face] = int8_t(head_face);
    t.gluings[4 * tail_tet + tail_face] = Gluing{head_tet, map};
    t.gluings[4 * head_tet + head_face] = Gluing{tail_tet, inverse_perm(map)};
  }
  assert(t.valid());
  return t;
}

FatGraph fat_graph_of(const Triangulation& t) {
  if (!t.closed() || !t.valid())
    throw std::invalid_argument("fat_graph_of: need a closed valid gluing table");
  FatGraph fg;
  fg.tet_count = t.tet_count;
  fg.triple_at.assign(4 * t.tet_count, -1);
  std::vector<Arc> arcs;
  for (int tet = 0; tet < t.tet_count; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluings[4 * tet + face];
      int pf = g->perm[face];
      int other = fat_node(g->tet, pf);
      int self = fat_node(tet, face);
      if (other < self) continue;  // each pair once
      Triple tr;
      tr.tail = self;
      tr.head = other;
      tr.label = int(fg.triples.size()) + 1;
      fg.triples.push_back(tr);
      arcs.push_back({tet, g->tet});
    }
  fg.base.order = t.tet_count;
  fg.base.arcs = arcs;  // triple order; base_arc_of_triple fixed below
  // Normalize base arcs while remembering where each triple's arc went.
  std::vector<std::pair<Arc, int>> tagged;
  for (int i = 0; i < int(arcs.size()); ++i) {
    Arc a = arcs[i];
    if (a.u > a.v) std::swap(a.u, a.v);
    tagged.push_back({a, i});
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  fg.base.arcs.clear();
  fg.base_arc_of_triple.assign(fg.triples.size(), -1);
  for (int pos = 0; pos < int(tagged.size()); ++pos) {
    fg.base.arcs.push_back(tagged[pos].first);
    fg.base_arc_of_triple[tagged[pos].second] = pos;
  }
  return default_labelling(std::move(fg));
}

OrderedDecomposition triangulation_to_decomposition(const Triangulation& t,
                                                    const FatGraph& fg) {
  if (!t.closed() || !t.valid())
    throw std::invalid_argument(
        "triangulation_to_decomposition: need a closed valid gluing table");
  // fg must carry exactly t's face pairing.
  for (const Triple& tr : fg.triples) {
    const auto& g = t.gluings[tr.tail];
    if (!g || fat_node(g->tet, g->perm[fat_face(tr.tail)]) != tr.head)
      throw std::invalid_argument(
          "triangulation_to_decomposition: fat graph does not match gluings");
  }
  OrderedDecomposition d;
  std::vector<char> used(fg.internal_count(), 0);
  for (int start = 0; start < fg.internal_count(); ++start) {
    if (used[start]) continue;
    Walk walk;
    int ia = start;
    int tet = start / 6;
    // Leave through the smaller face of the starting internal arc.
    int exit_face = kPairs[start % 6][0];
    int other_face = kPairs[start % 6][1];
    while (true) {
      used[ia] = 1;
      // External step through the gluing of (tet, exit_face).
      int exit_node = fat_node(tet, exit_face);
      const Triple& tr = fg.triples[fg.triple_at[exit_node]];
      walk.push_back(exit_node == tr.tail ? tr.label : -tr.label);
      const Gluing& g = *t.gluings[4 * tet + exit_face];
      // The traced edge is the complement of {exit_face, other_face};
      // push it through the gluing to find the next internal arc.
      int p = kPairs[5 - pair_index(exit_face, other_face)][0];
      int q = kPairs[5 - pair_index(exit_face, other_face)][1];
      int img_edge_pair = pair_index(g.perm[p], g.perm[q]);
      int next_tet = g.tet;
      int next_ia = 6 * next_tet + (5 - img_edge_pair);
      int enter_face = g.perm[exit_face];
      int f1 = kPairs[5 - img_edge_pair][0], f2 = kPairs[5 - img_edge_pair][1];
      assert(f1 == enter_face || f2 == enter_face);
      if (next_ia == start) break;
      assert(!used[next_ia] && "edge neighbourhood trace hit a used arc");
      ia = next_ia;
      tet = next_tet;
      exit_face = (f1 == enter_face) ? f2 : f1;
      other_face = enter_face;
    }
    d.walks.push_back(std::move(walk));
  }
  return d;
}

}  // namespace mdcensus

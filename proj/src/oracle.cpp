#include "mdcensus/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "mdcensus/decomp.hpp"
#include "mdcensus/fatgraph.hpp"

namespace mdcensus {

std::array<int8_t, 4> oracle_gluing_perm(int src_face, int dst_face,
                                         int bijection) {
  std::array<int, 3> src{}, dst{};
  int si = 0, di = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != src_face) src[si++] = v;
    if (v != dst_face) dst[di++] = v;
  }
  std::array<int, 3> order = {0, 1, 2};
  for (int k = 0; k < bijection; ++k)
    std::next_permutation(order.begin(), order.end());
  std::array<int8_t, 4> perm{};
  perm[src_face] = int8_t(dst_face);
  for (int i = 0; i < 3; ++i) perm[src[i]] = int8_t(dst[order[i]]);
  return perm;
}

namespace {

// Union-find with journal over directed tetrahedron edges, for the early
// reversed-edge cut.
struct RollbackDSU {
  std::vector<int> parent, size;
  std::vector<std::pair<int, int>> journal;  // (child, parent)
  explicit RollbackDSU(int n) : parent(n), size(n, 1) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] > size[b]) std::swap(a, b);
    journal.push_back({a, b});
    parent[a] = b;
    size[b] += size[a];
  }
  int checkpoint() const { return int(journal.size()); }
  void rollback(int cp) {
    while (int(journal.size()) > cp) {
      auto [child, par] = journal.back();
      journal.pop_back();
      parent[child] = child;
      size[par] -= size[child];
    }
  }
};

struct OracleEngine {
  const MultiGraph& g;
  OracleFilter filter;
  std::vector<Triangulation>& out;
  // Per arc: the two (tet, face) endpoints, fatten's slot assignment.
  std::vector<std::array<int, 2>> slot_node;
  Triangulation t;
  RollbackDSU directed_edges;

  OracleEngine(const MultiGraph& gg, OracleFilter f,
               std::vector<Triangulation>& o)
      : g(gg), filter(f), out(o), t(gg.order),
        directed_edges(16 * gg.order) {
    std::vector<int> next_face(g.order, 0);
    for (const Arc& arc : g.arcs) {
      slot_node.push_back({fat_node(arc.u, next_face[arc.u]++),
                           fat_node(arc.v, next_face[arc.v]++)});
    }
  }

  static int dir_id(int tet, int x, int y) { return 16 * tet + 4 * x + y; }

  bool reversed_somewhere() {
    for (int tet = 0; tet < g.order; ++tet)
      for (int p = 0; p < 6; ++p) {
        int x = kPairs[p][0], y = kPairs[p][1];
        if (directed_edges.find(dir_id(tet, x, y)) ==
            directed_edges.find(dir_id(tet, y, x)))
          return true;
      }
    return false;
  }

  void assign(size_t arc_idx) {
    if (arc_idx == g.arcs.size()) {
      if (filter == OracleFilter::all) {
        out.push_back(t);
      } else if (vertex_classes(t).size() == 1 && is_3manifold(t)) {
        out.push_back(t);
      }
      return;
    }
    int tu = fat_tet(slot_node[arc_idx][0]);
    int fu = fat_face(slot_node[arc_idx][0]);
    int tv = fat_tet(slot_node[arc_idx][1]);
    int fv = fat_face(slot_node[arc_idx][1]);
    for (int b = 0; b < 6; ++b) {
      auto perm = oracle_gluing_perm(fu, fv, b);
      t.glue(tu, fu, tv, perm);
      int cp = directed_edges.checkpoint();
      bool viable = true;
      if (filter == OracleFilter::one_vertex_3mfld) {
        for (int x = 0; x < 4 && viable; ++x) {
          if (x == fu) continue;
          for (int y = 0; y < 4; ++y) {
            if (y == fu || y == x) continue;
            directed_edges.unite(dir_id(tu, x, y),
                                 dir_id(tv, perm[x], perm[y]));
          }
        }
        // A reversed edge can only stay reversed as gluings accumulate.
        if (reversed_somewhere()) viable = false;
      }
      if (viable) assign(arc_idx + 1);
      directed_edges.rollback(cp);
      t.gluings[4 * tu + fu].reset();
      t.gluings[4 * tv + fv].reset();
    }
  }
};

}  // namespace

std::vector<Triangulation> enumerate_gluings(const MultiGraph& g,
                                             OracleFilter filter) {
  std::vector<Triangulation> out;
  if (!g.valid()) return out;
  OracleEngine engine(g, filter, out);
  engine.assign(0);
  return out;
}

CrossCheckReport cross_check(const MultiGraph& g, const SearchConfig& cfg,
                             long long budget) {
  CrossCheckReport report;
  report.choice_count = 1;
  for (size_t i = 0; i < g.arcs.size(); ++i) {
    report.choice_count *= 6;
    if (report.choice_count > budget) {
      report.refused = true;
      return report;
    }
  }
  FatGraph fg = fatten(g);
  auto rels = lift_automorphisms(fg, automorphisms(g));

  auto orbit_min = [&](const OrderedDecomposition& d) {
    OrderedDecomposition canon = canonicalize(d);
    OrderedDecomposition best = canon;
    for (const SignedRelabelling& rel : rels) {
      OrderedDecomposition img = canonicalize(apply_relabelling(canon, rel));
      if (decomposition_less(img, best)) best = img;
    }
    return best;
  };

  std::set<std::string> oracle_set;
  for (const Triangulation& t :
       enumerate_gluings(g, OracleFilter::one_vertex_3mfld)) {
    OrderedDecomposition d = triangulation_to_decomposition(t, fg);
    oracle_set.insert(to_text(orbit_min(d)));
  }

  SearchConfig search_cfg = cfg;
  search_cfg.min_walk_external = 1;
  search_cfg.degree3_preenum = false;
  search_cfg.require_one_vertex = true;
  search_cfg.orientable_only = false;
  std::set<std::string> search_set;
  SearchStats stats;
  enumerate(
      fg, search_cfg, rels,
      [&](const OrderedDecomposition& d, const Triangulation&) {
        search_set.insert(to_text(d));
      },
      stats);

  for (const std::string& s : search_set)
    if (!oracle_set.count(s)) report.only_search.push_back(s);
  for (const std::string& s : oracle_set)
    if (!search_set.count(s)) report.only_oracle.push_back(s);
  return report;
}

}  // namespace mdcensus

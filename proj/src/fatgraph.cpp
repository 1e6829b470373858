#include "mdcensus/fatgraph.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace mdcensus {

const std::array<std::array<int, 2>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pair_index(int x, int y) {
  if (x > y) std::swap(x, y);
  for (int p = 0; p < 6; ++p)
    if (kPairs[p][0] == x && kPairs[p][1] == y) return p;
  assert(false && "bad face pair");
  return -1;
}

FatGraph fatten(const MultiGraph& g) {
  if (!g.valid())
    throw std::invalid_argument("fatten: graph is not a 4-regular multigraph");
  FatGraph fg;
  fg.tet_count = g.order;
  fg.base = g;
  // Attach each node's four arc endpoint-slots to faces 0..3 in sorted
  // (arc index, slot) order.
  std::vector<int> next_face(g.order, 0);
  std::vector<std::array<int, 2>> slot_node(g.arcs.size(), {-1, -1});
  for (int a = 0; a < int(g.arcs.size()); ++a) {
    const Arc& arc = g.arcs[a];
    slot_node[a][0] = fat_node(arc.u, next_face[arc.u]++);
    slot_node[a][1] = fat_node(arc.v, next_face[arc.v]++);
  }
  for (int u = 0; u < g.order; ++u)
    if (next_face[u] != 4)
      throw std::invalid_argument("fatten: node degree is not 4");
  fg.triple_at.assign(fg.node_count(), -1);
  for (int a = 0; a < int(g.arcs.size()); ++a) {
    Triple t;
    t.label = a + 1;  // provisional; default_labelling finalizes
    t.tail = slot_node[a][0];
    t.head = slot_node[a][1];
    fg.triple_at[t.tail] = a;
    fg.triple_at[t.head] = a;
    fg.triples.push_back(t);
    fg.base_arc_of_triple.push_back(a);
  }
  return default_labelling(std::move(fg));
}

FatGraph default_labelling(FatGraph fg) {
  for (Triple& t : fg.triples)
    if (t.tail > t.head) std::swap(t.tail, t.head);
  // Each node carries exactly one triple, so min endpoints are distinct.
  std::vector<int> order(fg.triples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return fg.triples[a].tail < fg.triples[b].tail;
  });
  std::vector<Triple> sorted;
  std::vector<int> arcs;
  for (size_t i = 0; i < order.size(); ++i) {
    Triple t = fg.triples[order[i]];
    t.label = int(i) + 1;
    sorted.push_back(t);
    arcs.push_back(fg.base_arc_of_triple[order[i]]);
  }
  fg.triples = std::move(sorted);
  fg.base_arc_of_triple = std::move(arcs);
  for (int i = 0; i < fg.triple_count(); ++i) {
    fg.triple_at[fg.triples[i].tail] = i;
    fg.triple_at[fg.triples[i].head] = i;
  }
  return fg;
}

MultiGraph underlying_multigraph(const FatGraph& fg) {
  MultiGraph g;
  g.order = fg.tet_count;
  for (const Triple& t : fg.triples)
    g.arcs.push_back({fat_tet(t.tail), fat_tet(t.head)});
  g.normalize();
  return g;
}

std::string FatGraph::debug_dump() const {
  std::ostringstream out;
  auto face_name = [](int node) {
    std::ostringstream s;
    s << '(' << fat_tet(node) << ',' << char('a' + fat_face(node)) << ')';
    return s.str();
  };
  for (const Triple& t : triples)
    out << t.label << ": " << face_name(t.tail) << "->" << face_name(t.head)
        << "\n";
  for (int node = 0; node < node_count(); ++node) {
    out << face_name(node) << ":";
    for (int f = 0; f < 4; ++f)
      if (f != fat_face(node)) out << ' ' << face_name(fat_node(fat_tet(node), f));
    out << "\n";
  }
  return out.str();
}

bool SignedRelabelling::is_identity() const {
  for (size_t l = 1; l < label_map.size(); ++l)
    if (label_map[l] != int(l) || sign_flip[l]) return false;
  return true;
}

std::vector<SignedRelabelling> lift_automorphisms(
    const FatGraph& fg, const std::vector<ArcAutomorphism>& autos) {
  const int n = fg.tet_count;
  // Per base arc: the fat nodes its two endpoint-slots landed on. Rebuilt
  // with the same ordering rule as fatten.
  std::vector<std::array<int, 2>> slot_node(fg.base.arcs.size(), {-1, -1});
  {
    std::vector<int> next_face(fg.base.order, 0);
    for (int a = 0; a < int(fg.base.arcs.size()); ++a) {
      const Arc& arc = fg.base.arcs[a];
      slot_node[a][0] = fat_node(arc.u, next_face[arc.u]++);
      slot_node[a][1] = fat_node(arc.v, next_face[arc.v]++);
    }
  }
  std::vector<int> triple_of_arc(fg.base.arcs.size(), -1);
  for (int t = 0; t < fg.triple_count(); ++t)
    triple_of_arc[fg.base_arc_of_triple[t]] = t;

  std::vector<SignedRelabelling> out;
  out.reserve(autos.size());
  for (const ArcAutomorphism& au : autos) {
    if (int(au.node_map.size()) != fg.base.order ||
        au.arc_map.size() != fg.base.arcs.size())
      throw std::invalid_argument("lift_automorphisms: size mismatch");
    SignedRelabelling rel;
    rel.label_map.assign(2 * n + 1, 0);
    rel.sign_flip.assign(2 * n + 1, 0);
    rel.node_map.assign(fg.node_count(), -1);
    for (int a = 0; a < int(fg.base.arcs.size()); ++a) {
      int ia = au.arc_map[a];
      int flip = au.endpoint_flip[a];
      for (int s = 0; s < 2; ++s) {
        int src = slot_node[a][s];
        int dst = slot_node[ia][s ^ flip];
        if (au.node_map[fat_tet(src)] != fat_tet(dst))
          throw std::invalid_argument("lift_automorphisms: inconsistent map");
        rel.node_map[src] = dst;
      }
      const Triple& ts = fg.triples[triple_of_arc[a]];
      const Triple& td = fg.triples[triple_of_arc[ia]];
      rel.label_map[ts.label] = td.label;
      // Negative sign exactly when the tail endpoint maps onto the head.
      int tail_img = (slot_node[a][0] == ts.tail) ? slot_node[ia][0 ^ flip]
                                                  : slot_node[ia][1 ^ flip];
      rel.sign_flip[ts.label] = uint8_t(tail_img == td.head);
    }
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace mdcensus

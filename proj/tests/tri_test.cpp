#include <doctest.h>

#include <algorithm>
#include <set>

#include "mdcensus/tri.hpp"

using namespace mdcensus;

namespace {

// The two-tetrahedron 3-sphere: abc=hfe, abd=gfe, acd=bcd, egh=fgh with
// vertices a..d = 0..3 on tet 0 and e..h = 0..3 on tet 1.
Triangulation sphere_triangulation() {
  Triangulation t(2);
  t.glue(0, 3, 1, {3, 1, 0, 2});
  t.glue(0, 2, 1, {2, 1, 3, 0});
  t.glue(0, 1, 0, {1, 0, 2, 3});
  t.glue(1, 1, 1, {1, 0, 2, 3});
  return t;
}

Triangulation single_tet() { return Triangulation(1); }

Triangulation reversed_edge_triangulation() {
  Triangulation t(1);
  t.glue(0, 0, 0, {1, 0, 3, 2});
  t.glue(0, 2, 0, {0, 1, 3, 2});
  return t;
}

}  // namespace

TEST_CASE("gluings are involutive") {
  Triangulation t = sphere_triangulation();
  CHECK(t.valid());
  CHECK(t.closed());
  for (int tet = 0; tet < t.tet_count; ++tet)
    for (int face = 0; face < 4; ++face) {
      const auto& g = t.gluing(tet, face);
      REQUIRE(g.has_value());
      const auto& back = t.gluing(g->tet, g->perm[face]);
      REQUIRE(back.has_value());
      for (int v = 0; v < 4; ++v) CHECK(back->perm[g->perm[v]] == v);
      CHECK(back->tet == tet);
    }
}

TEST_CASE("gluing table text round-trips byte-exactly") {
  for (const Triangulation& t :
       {sphere_triangulation(), single_tet(), reversed_edge_triangulation()}) {
    std::string text = t.to_text();
    auto parsed = Triangulation::parse(text);
    if (!t.closed()) continue;  // parse accepts closed and partial alike
    REQUIRE(parsed.has_value());
    CHECK(*parsed == t);
    CHECK(parsed->to_text() == text);
  }
  CHECK_FALSE(Triangulation::parse("(0,0,012)").has_value());  // self-gluing
  CHECK_FALSE(Triangulation::parse("garbage").has_value());
}

TEST_CASE("3-sphere example classes and invariants") {
  Triangulation t = sphere_triangulation();
  auto edges = edge_classes(t);
  auto vertices = vertex_classes(t);
  REQUIRE(edges.size() == 3);
  CHECK(vertices.size() == 1);

  std::multiset<int> degrees;
  int degree_sum = 0;
  for (const auto& e : edges) {
    degrees.insert(e.degree());
    degree_sum += e.degree();
    CHECK_FALSE(e.reversed);
  }
  CHECK(degrees == std::multiset<int>{1, 1, 10});
  CHECK(degree_sum == 6 * t.tet_count);
  CHECK(euler_characteristic(t) == 0);
  CHECK(is_orientable(t));
  CHECK(is_3manifold(t));

  auto links = vertex_links(t);
  REQUIRE(links.size() == 1);
  CHECK(links[0].closed);
  CHECK(links[0].euler == 2);
  CHECK(links[0].triangles == 8);
  // n + k edges <=> all links spheres (closed, no reversed edge).
  CHECK(int(edges.size()) == t.tet_count + int(vertices.size()));
}

TEST_CASE("single unglued tetrahedron") {
  Triangulation t = single_tet();
  CHECK(t.valid());
  CHECK_FALSE(t.closed());
  auto edges = edge_classes(t);
  CHECK(edges.size() == 6);
  for (const auto& e : edges) CHECK(e.degree() == 1);
  CHECK(vertex_classes(t).size() == 4);
  auto links = vertex_links(t);
  REQUIRE(links.size() == 4);
  for (const auto& l : links) {
    CHECK(l.euler == 1);
    CHECK_FALSE(l.closed);
  }
  CHECK(euler_characteristic(t) == 1);
  CHECK_FALSE(is_3manifold(t));
  CHECK(is_3manifold_allow_boundary(t));
}

TEST_CASE("reversed edge fails the manifold test") {
  Triangulation t = reversed_edge_triangulation();
  CHECK(t.valid());
  CHECK(t.closed());
  bool reversed = false;
  for (const auto& e : edge_classes(t)) reversed |= e.reversed;
  CHECK(reversed);
  CHECK_FALSE(is_3manifold(t));
}

TEST_CASE("disconnected triangulations are rejected") {
  // Two disjoint copies of a closed one-tetrahedron triangulation.
  Triangulation one = reversed_edge_triangulation();
  Triangulation two(2);
  for (int tet = 0; tet < 2; ++tet)
    for (int face = 0; face < 4; ++face) {
      auto g = one.gluing(0, face);
      two.gluings[4 * tet + face] = Gluing{tet, g->perm};
    }
  CHECK(two.valid());
  CHECK(two.closed());
  CHECK_FALSE(tri_connected(two));
  CHECK_FALSE(is_3manifold(two));
}

TEST_CASE("decomposition and triangulation constructions invert each other") {
  Triangulation t = sphere_triangulation();
  FatGraph fg = fat_graph_of(t);
  OrderedDecomposition d = triangulation_to_decomposition(t, fg);
  REQUIRE(validate(d, fg).ok);
  std::multiset<int> lengths;
  for (const Walk& w : d.walks) lengths.insert(external_length(w));
  CHECK(lengths == std::multiset<int>{1, 10, 1});
  CHECK(d.walks.size() == edge_classes(t).size());

  Triangulation back = decomposition_to_triangulation(d, fg);
  CHECK(back == t);

  // Walk lengths equal edge-class degrees, walk by walk.
  auto classes = edge_classes(t);
  for (const Walk& w : d.walks) {
    int from = entry_end_node(fg, w[0]);
    int to = entry_start_node(fg, w[1 % w.size()]);
    int edge = edge_of_internal(
        internal_arc_id(fat_tet(from), fat_face(from), fat_face(to)));
    for (const auto& c : classes)
      if (std::find(c.members.begin(), c.members.end(), edge) != c.members.end())
        CHECK(external_length(w) == c.degree());
  }
}

TEST_CASE("every face of a reconstructed decomposition is glued") {
  FatGraph fg = fatten(*MultiGraph::parse("2; 0-0,0-1,0-1,1-1"));
  auto d = *parse_decomposition("(1) (1,2,4,-2,3,-4,-3,-1,3,-2) (4)");
  Triangulation t = decomposition_to_triangulation(d, fg);
  CHECK(t.closed());
  CHECK(t.valid());
  CHECK(is_3manifold(t));
  CHECK(vertex_classes(t).size() == 1);
  CHECK(euler_characteristic(t) == 0);
  // Round trip through the inverse construction is the identity on
  // canonical forms.
  auto d2 = triangulation_to_decomposition(t, fg);
  CHECK(canonicalize(d2) == canonicalize(d));
}

TEST_CASE("inconsistent walks are rejected by the construction") {
  FatGraph fg = fatten(*MultiGraph::parse("2; 0-0,0-1,0-1,1-1"));
  OrderedDecomposition bad;
  // Label 1 appears three times, but other labels are unbalanced.
  bad.walks = {{1}, {1}, {1}};
  CHECK_THROWS(decomposition_to_triangulation(bad, fg));
}

TEST_CASE("orientability distinguishes a non-orientable gluing") {
  // One tetrahedron, faces 0,1 glued with an even permutation and faces 2,3
  // glued evenly as well: orientation constraints conflict.
  Triangulation t(1);
  t.glue(0, 0, 0, {1, 0, 2, 3});  // odd: transposition (0 1)
  t.glue(0, 2, 0, {1, 0, 3, 2});  // even: (0 1)(2 3)
  CHECK(t.valid());
  CHECK(t.closed());
  CHECK_FALSE(is_orientable(t));
  CHECK(is_orientable(sphere_triangulation()));
}

#include <doctest.h>

#include <set>

#include "mdcensus/fatgraph.hpp"

using namespace mdcensus;

TEST_CASE("fatten counts for the two-tetrahedron graph") {
  MultiGraph g = *MultiGraph::parse("2; 0-0,0-1,0-1,1-1");
  FatGraph fg = fatten(g);
  CHECK(fg.tet_count == 2);
  CHECK(fg.node_count() == 8);
  CHECK(fg.internal_count() == 12);
  CHECK(fg.triple_count() == 4);  // 12 external arcs in 4 triples
  // Every node meets exactly one triple.
  for (int node = 0; node < fg.node_count(); ++node) {
    int t = fg.triple_at[node];
    REQUIRE(t >= 0);
    CHECK((fg.triples[t].tail == node || fg.triples[t].head == node));
  }
}

TEST_CASE("fatten of the one-tetrahedron graph keeps loops inside the K4") {
  MultiGraph g = *MultiGraph::parse("1; 0-0,0-0");
  FatGraph fg = fatten(g);
  CHECK(fg.node_count() == 4);
  CHECK(fg.internal_count() == 6);
  CHECK(fg.triple_count() == 2);
  std::set<int> labels;
  for (const Triple& t : fg.triples) {
    CHECK(fat_tet(t.tail) == fat_tet(t.head));
    CHECK(t.tail != t.head);
    labels.insert(t.label);
  }
  CHECK(labels == std::set<int>{1, 2});
}

TEST_CASE("fatten rejects invalid graphs") {
  MultiGraph bad;
  bad.order = 1;
  bad.arcs = {{0, 0}};  // degree 2
  CHECK_THROWS(fatten(bad));
}

TEST_CASE("default_labelling is idempotent and orients tails") {
  for (const MultiGraph& g : generate(3)) {
    FatGraph fg = fatten(g);
    FatGraph again = default_labelling(fg);
    REQUIRE(again.triples.size() == fg.triples.size());
    std::set<int> labels;
    for (int i = 0; i < fg.triple_count(); ++i) {
      CHECK(fg.triples[i] == again.triples[i]);
      CHECK(fg.triples[i].tail < fg.triples[i].head);
      labels.insert(fg.triples[i].label);
    }
    CHECK(int(labels.size()) == 2 * g.order);
    CHECK(*labels.begin() == 1);
    CHECK(*labels.rbegin() == 2 * g.order);
  }
}

TEST_CASE("fatten then forget recovers the input graph") {
  for (int n = 1; n <= 3; ++n)
    for (const MultiGraph& g : generate(n))
      CHECK(canonical_form(underlying_multigraph(fatten(g))) ==
            canonical_form(g));
}

TEST_CASE("internal arcs biject with tetrahedron edges") {
  std::set<int> edges;
  for (int ia = 0; ia < 12; ++ia) {
    int e = edge_of_internal(ia);
    CHECK(e / 6 == ia / 6);  // same tetrahedron
    CHECK(edge_of_internal(e) == ia);
    edges.insert(e);
  }
  CHECK(edges.size() == 12);
  // The edge shares no face label with the internal arc's face pair.
  for (int p = 0; p < 6; ++p) {
    int q = 5 - p;
    CHECK(kPairs[p][0] != kPairs[q][0]);
    CHECK(kPairs[p][0] != kPairs[q][1]);
    CHECK(kPairs[p][1] != kPairs[q][0]);
    CHECK(kPairs[p][1] != kPairs[q][1]);
  }
}

TEST_CASE("lift_automorphisms maps the group faithfully") {
  MultiGraph g = *MultiGraph::parse("1; 0-0,0-0");
  FatGraph fg = fatten(g);
  auto autos = automorphisms(g);
  auto lifted = lift_automorphisms(fg, autos);
  CHECK(lifted.size() == autos.size());
  for (size_t i = 0; i < autos.size(); ++i)
    CHECK(autos[i].is_identity() == lifted[i].is_identity());

  // Flipping one loop keeps its label but reverses its orientation.
  ArcAutomorphism flip;
  flip.node_map = {0};
  flip.arc_map = {0, 1};
  flip.endpoint_flip = {1, 0};
  auto rel = lift_automorphisms(fg, {flip})[0];
  CHECK(rel.label_map[1] == 1);
  CHECK(rel.label_map[2] == 2);
  CHECK(rel.sign_flip[1] == 1);
  CHECK(rel.sign_flip[2] == 0);
}

TEST_CASE("lifted relabellings preserve triple structure") {
  for (const MultiGraph& g : generate(2)) {
    FatGraph fg = fatten(g);
    auto lifted = lift_automorphisms(fg, automorphisms(g));
    for (const auto& rel : lifted) {
      for (const Triple& t : fg.triples) {
        const Triple& img = fg.triple_of_label(rel.label_map[t.label]);
        int tail_img = rel.node_map[t.tail];
        int head_img = rel.node_map[t.head];
        if (rel.sign_flip[t.label]) {
          CHECK(tail_img == img.head);
          CHECK(head_img == img.tail);
        } else {
          CHECK(tail_img == img.tail);
          CHECK(head_img == img.head);
        }
      }
      // K4 blocks map to K4 blocks.
      for (int node = 0; node < fg.node_count(); ++node)
        CHECK(fat_tet(rel.node_map[node]) ==
              fat_tet(rel.node_map[fat_node(fat_tet(node), 0)]));
    }
  }
}

TEST_CASE("debug dump lists triples and K4 neighbours") {
  FatGraph fg = fatten(*MultiGraph::parse("1; 0-0,0-0"));
  std::string dump = fg.debug_dump();
  CHECK(dump.find("1: (0,a)->(0,b)") != std::string::npos);
  CHECK(dump.find("2: (0,c)->(0,d)") != std::string::npos);
}

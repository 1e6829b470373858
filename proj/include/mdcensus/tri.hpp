#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdcensus/decomp.hpp"
#include "mdcensus/fatgraph.hpp"

namespace mdcensus {

// A face gluing kept as a full S4 permutation: perm[my_face] is the partner
// face, perm[v] the identified vertex for the other three v.
struct Gluing {
  int tet = -1;
  std::array<int8_t, 4> perm{};
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

// Gluing table of a general triangulation. Index 4*tet + face.
struct Triangulation {
  int tet_count = 0;
  std::vector<std::optional<Gluing>> gluings;

  Triangulation() = default;
  explicit Triangulation(int n) : tet_count(n), gluings(4 * n) {}

  const std::optional<Gluing>& gluing(int tet, int face) const {
    return gluings[4 * tet + face];
  }
  void glue(int tet, int face, int other_tet, std::array<int8_t, 4> perm);

  bool closed() const;  // every face glued
  bool valid() const;   // involutive, no face glued to itself

  // One line per tetrahedron, four entries "(j,g,p)" with p the images of
  // the source face's vertices in increasing order; "-" for unglued.
  std::string to_text() const;
  static std::optional<Triangulation> parse(std::string_view text);

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

// Tetrahedron edge {x,y} of tet t encoded as 6*t + pair_index(x,y);
// tetrahedron vertex v of tet t encoded as 4*t + v.
struct EdgeClass {
  std::vector<int> members;  // tetrahedron edge ids, sorted
  bool reversed = false;     // some member identified with itself in reverse
  int degree() const { return int(members.size()); }
};

struct VertexClass {
  std::vector<int> members;  // tetrahedron vertex ids, sorted
};

struct LinkComponent {
  int vertex_class = -1;  // index into vertex_classes(t)
  int triangles = 0;
  int euler = 0;
  bool closed = false;
};

std::vector<EdgeClass> edge_classes(const Triangulation& t);
std::vector<VertexClass> vertex_classes(const Triangulation& t);
std::vector<LinkComponent> vertex_links(const Triangulation& t);

bool tri_connected(const Triangulation& t);

// Closed 3-manifold test: connected, all vertex links 2-spheres, no edge
// class reversed. The permissive variant also admits disc links (boundary).
bool is_3manifold(const Triangulation& t);
bool is_3manifold_allow_boundary(const Triangulation& t);

bool is_orientable(const Triangulation& t);

// V - E + F - T over the identification classes.
int euler_characteristic(const Triangulation& t);

// Face b of tet i identified with face c of tet j for a triple between
// v_{i,b} and v_{j,c}; the vertex maps are assembled from the three member
// arcs' internal-arc contexts. Throws std::invalid_argument when the three
// contributions do not form a bijection (invalid decomposition).
Triangulation decomposition_to_triangulation(const OrderedDecomposition& d,
                                             const FatGraph& fg);

// Walks trace edge neighbourhoods of t over fg; fg must carry exactly t's
// face pairing (see fat_graph_of). Requires t closed and valid.
OrderedDecomposition triangulation_to_decomposition(const Triangulation& t,
                                                    const FatGraph& fg);

// The labelled fattened face pairing graph of a closed triangulation.
FatGraph fat_graph_of(const Triangulation& t);

}  // namespace mdcensus

#pragma once

#include <array>
#include <string>
#include <vector>

#include "mdcensus/multigraph.hpp"

namespace mdcensus {

// Fat node (tet, face) encoded as 4*tet + face, faces 0..3 standing for
// a..d. Face f is the face opposite vertex f.
inline int fat_node(int tet, int face) { return 4 * tet + face; }
inline int fat_tet(int node) { return node / 4; }
inline int fat_face(int node) { return node % 4; }

// Unordered pairs from {0,1,2,3} in the fixed order
// (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
extern const std::array<std::array<int, 2>, 6> kPairs;
int pair_index(int x, int y);

// Internal arc {(tet,f1),(tet,f2)} encoded as 6*tet + pair_index(f1,f2).
inline int internal_arc_id(int tet, int f1, int f2) {
  return 6 * tet + pair_index(f1, f2);
}
// The internal arc {f1,f2} represents the tetrahedron edge joining the two
// complementary vertices; with the pair order above that is pair 5-p.
inline int edge_of_internal(int ia) { return 6 * (ia / 6) + 5 - (ia % 6); }
inline int internal_of_edge(int edge) { return edge_of_internal(edge); }

// One set of three parallel external arcs. The three member arcs are
// interchangeable; only which endpoints and how many are in use ever matter.
struct Triple {
  int label = 0;  // 1..2n after labelling
  int tail = -1;  // fat node ids; traversal tail -> head is "forwards"
  int head = -1;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Fattened face pairing graph: one K4 per tetrahedron, one triple of
// external arcs per arc of the base graph. Immutable after labelling.
struct FatGraph {
  int tet_count = 0;
  MultiGraph base;
  std::vector<Triple> triples;          // indexed by label-1 once labelled
  std::vector<int> triple_at;           // fat node id -> triple index
  std::vector<int> base_arc_of_triple;  // triple index -> arc index in base

  int node_count() const { return 4 * tet_count; }
  int triple_count() const { return int(triples.size()); }
  int internal_count() const { return 6 * tet_count; }
  const Triple& triple_of_label(int label) const { return triples[label - 1]; }

  // Debug dump: per triple "label: (i,a)->(j,b)", then per node its three
  // internal neighbours.
  std::string debug_dump() const;
};

// Replace each node of g with a K4 and each arc with a triple of parallel
// arcs. Throws std::invalid_argument unless g is 4-regular with 2n arcs.
FatGraph fatten(const MultiGraph& g);

// Assign labels 1..2n in the order of the triples' sorted (tet,face)
// endpoints; the tail is the lexicographically smaller endpoint. Idempotent.
FatGraph default_labelling(FatGraph fg);

// Collapse the K4s and merge the triples back to a multigraph.
MultiGraph underlying_multigraph(const FatGraph& fg);

// A face-pairing-graph automorphism expressed on the labelled fat graph:
// a permutation of labels with a per-label orientation flip, plus the
// induced fat node permutation.
struct SignedRelabelling {
  std::vector<int> label_map;      // 1-based, size 2n+1
  std::vector<uint8_t> sign_flip;  // 1-based, size 2n+1
  std::vector<int> node_map;       // fat node id -> fat node id
  bool is_identity() const;
  friend bool operator==(const SignedRelabelling&, const SignedRelabelling&) = default;
};

// Lift each arc-level automorphism of the base graph to a signed
// relabelling of fg. Throws std::invalid_argument on inconsistent input.
std::vector<SignedRelabelling> lift_automorphisms(
    const FatGraph& fg, const std::vector<ArcAutomorphism>& autos);

}  // namespace mdcensus

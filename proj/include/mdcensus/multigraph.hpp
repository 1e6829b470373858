#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mdcensus {

// Unordered node pair; a loop is stored once with u == v. A loop still has
// two distinguishable endpoint-slots (slot 0 and slot 1) so that an
// automorphism can flip it.
struct Arc {
  int u = 0;
  int v = 0;
  bool is_loop() const { return u == v; }
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// 4-regular multigraph on `order` nodes: the face pairing graph of a
// triangulation. Arcs are kept normalized (u <= v, list sorted) so that arc
// indices are stable across serialization.
struct MultiGraph {
  int order = 0;
  std::vector<Arc> arcs;

  int degree(int node) const;
  bool four_regular() const;
  // 4-regular with exactly 2n arcs, arcs normalized. Connectivity is a
  // separate query (census commands skip disconnected graphs).
  bool valid() const;
  void normalize();

  // Text format, one graph per line: "n; u1-v1,u2-v2,..." with nodes
  // 0-indexed, arcs sorted, loops as "u-u".
  std::string to_text() const;
  static std::optional<MultiGraph> parse(std::string_view line);

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;
};

// Arc-level automorphism: a node permutation together with a compatible
// permutation of arc indices. endpoint_flip[a] records that the two
// endpoint-slots of arc a are exchanged by the map; it is forced by node_map
// for non-loop arcs and free for loops.
struct ArcAutomorphism {
  std::vector<int> node_map;
  std::vector<int> arc_map;
  std::vector<uint8_t> endpoint_flip;

  bool is_identity() const;
  // (this o inner): apply `inner` first, then this.
  ArcAutomorphism compose(const ArcAutomorphism& inner) const;
  friend bool operator==(const ArcAutomorphism&, const ArcAutomorphism&) = default;
};

bool is_connected(const MultiGraph& g);

// Canonical byte string: two graphs get equal strings iff they are isomorphic
// as multigraphs. Deterministic.
std::string canonical_form(const MultiGraph& g);

// The full arc-level automorphism group, including parallel-arc swaps and
// loop endpoint flips. Contains the identity (first) and is closed under
// composition.
std::vector<ArcAutomorphism> automorphisms(const MultiGraph& g);

struct GenerateCounts {
  long long connected = 0;
  long long total = 0;  // classes including disconnected graphs
};

// One representative per isomorphism class of connected 4-regular multigraphs
// on n nodes, sorted by canonical form. When `counts` is non-null it receives
// both the connected count and the count with disconnected classes included.
// With include_disconnected the returned list also carries the disconnected
// representatives.
std::vector<MultiGraph> generate(int n, GenerateCounts* counts = nullptr,
                                 bool include_disconnected = false);

}  // namespace mdcensus

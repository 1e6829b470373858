#pragma once

#include <array>
#include <string>
#include <vector>

#include "mdcensus/multigraph.hpp"
#include "mdcensus/search.hpp"
#include "mdcensus/tri.hpp"

namespace mdcensus {

enum class OracleFilter { all, one_vertex_3mfld };

// The six bijections between two faces' vertex triples, indexed 0..5: the
// source face's vertices in increasing order map to the k-th lexicographic
// permutation of the target face's vertices in increasing order.
std::array<int8_t, 4> oracle_gluing_perm(int src_face, int dst_face,
                                         int bijection);

// Traditional enumerator: one bijection per arc of g, 6^(2n) assignments,
// faces assigned exactly as fatten(g) does. With the one_vertex_3mfld filter
// an assignment whose settled part already contains a reversed edge is cut
// early; this never changes the surviving set. Deterministic order.
std::vector<Triangulation> enumerate_gluings(const MultiGraph& g,
                                             OracleFilter filter);

struct CrossCheckReport {
  bool refused = false;  // 6^(2n) above budget
  long long choice_count = 0;
  std::vector<std::string> only_search;  // canonical texts missing in oracle
  std::vector<std::string> only_oracle;  // canonical texts missing in search
  bool consistent() const {
    return !refused && only_search.empty() && only_oracle.empty();
  }
};

// Enumerate 1-vertex 3-manifold triangulations of g both ways — the
// decomposition search and the brute-force gluing oracle — and compare the
// automorphism-reduced canonical decomposition sets. The config contributes
// prune toggles and granularity; the comparison itself always runs the full
// one-vertex search (min_walk_external = 1, no 3-walk pre-enumeration).
CrossCheckReport cross_check(const MultiGraph& g, const SearchConfig& cfg,
                             long long budget);

}  // namespace mdcensus

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mdcensus/decomp.hpp"
#include "mdcensus/fatgraph.hpp"
#include "mdcensus/tri.hpp"

namespace mdcensus {

enum class CanonGranularity { every_arc, walk_complete };

struct SearchConfig {
  // Minimum external arcs per completed walk. 3 is the census default
  // (degree-1/2 edges cannot occur in minimal triangulations on >= 3
  // tetrahedra); 1 enumerates all manifold decompositions.
  int min_walk_external = 3;
  // Variant semantics. require_one_vertex selects manifold decompositions
  // (md/md-o); without it every (n+1)-walk non-reversing ordered
  // decomposition is emitted (md-star variants). orientable_only keeps
  // decompositions whose triangulation is orientable.
  bool require_one_vertex = true;
  bool orientable_only = false;
  // Prune toggles. Disabling any of them changes node counts, never the
  // emitted set.
  bool prune_budget = true;       // arc-count prune
  bool degree3_preenum = true;    // pre-enumerate 3-external walks, budget 4x
  bool prune_orient = true;       // in-walk opposite-direction prune (-o only)
  bool prune_one_vertex = true;   // frontier-edge tracking
  bool prune_canonical = true;    // in-search canonicity rejection
  CanonGranularity granularity = CanonGranularity::walk_complete;
};

struct SearchStats {
  uint64_t nodes = 0;
  uint64_t prune_budget = 0;
  uint64_t prune_orient = 0;
  uint64_t prune_canon = 0;
  uint64_t prune_vertex = 0;
  uint64_t solutions = 0;
  double cpu_seconds = 0.0;
};

// Rollback-capable union-find over the 4n tetrahedron vertices with
// per-root frontier-edge counts (each link starts as a triangle with 3
// frontier edges).
class FrontierTracker {
 public:
  enum class Result { ok, merged, closed_early };

  explicit FrontierTracker(int vertex_count);

  // Identify one frontier edge at vertex_a with one at vertex_b:
  // same link -> count drops by two; distinct links -> union with
  // l_a + l_b - 2. closed_early reports a link closing while other links
  // remain or external arcs are still unused.
  Result glue(int vertex_a, int vertex_b, bool arcs_remain);

  int checkpoint() const { return int(journal_.size()); }
  void rollback(int checkpoint);

  int find(int vertex);
  int frontier_edges(int vertex) { return frontier_[find(vertex)]; }
  int component_size(int vertex) { return size_[find(vertex)]; }
  bool single_closed_component();

 private:
  struct Entry {
    int child;   // -1 for a same-root count update
    int parent;
    int old_parent_frontier;
  };
  int total_;
  std::vector<int> parent_, size_, frontier_;
  std::vector<Entry> journal_;
};

// Improvement: fewer than B*(n+1-k) unused external arcs cannot fill the
// n+1-k remaining walks. Also prunes when all n+1 walks exist but arcs
// remain.
bool prune_arc_budget(int walks_completed, int unused_externals, int tet_count,
                      int min_externals_per_walk);

// Improvement for orientable searches: an external arc must not be used in
// the opposite direction of a parallel arc already in the current walk.
bool orientable_prune(int pos_uses_in_walk, int neg_uses_in_walk,
                      int candidate_entry);

// All closed walks with exactly three externals whose three internal arcs do
// NOT lie on three distinct tetrahedra (the only 3-walk shape a minimal
// census can contain), canonicalized and sorted.
std::vector<Walk> pre_enumerate_degree3_walks(const FatGraph& fg);

// Backtracking enumeration of canonical decompositions over fg. Emits each
// decomposition (canonical walks, sorted, minimal under the given
// relabellings) together with its reconstructed gluing table. Deterministic
// emission order.
void enumerate(const FatGraph& fg, const SearchConfig& cfg,
               const std::vector<SignedRelabelling>& rels,
               const std::function<void(const OrderedDecomposition&,
                                        const Triangulation&)>& emit,
               SearchStats& stats);

}  // namespace mdcensus

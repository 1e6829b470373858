#include "mdcensus/search.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "mdcensus/tri.hpp"

namespace mdcensus {

FrontierTracker::FrontierTracker(int vertex_count)
    : total_(vertex_count),
      parent_(vertex_count),
      size_(vertex_count, 1),
      frontier_(vertex_count, 3) {
  for (int i = 0; i < vertex_count; ++i) parent_[i] = i;
}

int FrontierTracker::find(int vertex) {
  while (parent_[vertex] != vertex) vertex = parent_[vertex];
  return vertex;
}

FrontierTracker::Result FrontierTracker::glue(int vertex_a, int vertex_b,
                                              bool arcs_remain) {
  int ra = find(vertex_a), rb = find(vertex_b);
  Result result = Result::ok;
  if (ra == rb) {
    journal_.push_back({-1, ra, frontier_[ra]});
    frontier_[ra] -= 2;
  } else {
    if (size_[ra] > size_[rb]) std::swap(ra, rb);
    // ra becomes child of rb
    journal_.push_back({ra, rb, frontier_[rb]});
    parent_[ra] = rb;
    size_[rb] += size_[ra];
    frontier_[rb] = frontier_[rb] + frontier_[ra] - 2;
    ra = rb;
    result = Result::merged;
  }
  assert(frontier_[ra] >= 0);
  if (frontier_[ra] == 0 && (size_[ra] < total_ || arcs_remain))
    result = Result::closed_early;
  return result;
}

void FrontierTracker::rollback(int checkpoint) {
  while (int(journal_.size()) > checkpoint) {
    Entry e = journal_.back();
    journal_.pop_back();
    if (e.child < 0) {
      frontier_[e.parent] = e.old_parent_frontier;
    } else {
      parent_[e.child] = e.child;
      size_[e.parent] -= size_[e.child];
      frontier_[e.parent] = e.old_parent_frontier;
    }
  }
}

bool FrontierTracker::single_closed_component() {
  int root = find(0);
  return size_[root] == total_ && frontier_[root] == 0;
}

bool prune_arc_budget(int walks_completed, int unused_externals, int tet_count,
                      int min_externals_per_walk) {
  int remaining = tet_count + 1 - walks_completed;
  if (remaining <= 0) return unused_externals > 0;
  return unused_externals < min_externals_per_walk * remaining;
}

bool orientable_prune(int pos_uses_in_walk, int neg_uses_in_walk,
                      int candidate_entry) {
  return candidate_entry > 0 ? neg_uses_in_walk > 0 : pos_uses_in_walk > 0;
}

std::vector<Walk> pre_enumerate_degree3_walks(const FatGraph& fg) {
  std::set<Walk> found;
  const int labels = fg.triple_count();
  std::vector<int> all;
  for (int l = 1; l <= labels; ++l) {
    all.push_back(l);
    all.push_back(-l);
  }
  auto ok_internal = [&](int from_entry, int to_entry) {
    int a = entry_end_node(fg, from_entry);
    int b = entry_start_node(fg, to_entry);
    return fat_tet(a) == fat_tet(b) && a != b;
  };
  auto internal_id_between = [&](int from_entry, int to_entry) {
    int a = entry_end_node(fg, from_entry);
    int b = entry_start_node(fg, to_entry);
    return internal_arc_id(fat_tet(a), fat_face(a), fat_face(b));
  };
  for (int x1 : all)
    for (int x2 : all) {
      if (!ok_internal(x1, x2)) continue;
      for (int x3 : all) {
        if (!ok_internal(x2, x3) || !ok_internal(x3, x1)) continue;
        int i1 = internal_id_between(x1, x2);
        int i2 = internal_id_between(x2, x3);
        int i3 = internal_id_between(x3, x1);
        if (i1 == i2 || i2 == i3 || i1 == i3) continue;
        // Keep only walks whose internals do not span three distinct
        // tetrahedra.
        int t1 = i1 / 6, t2 = i2 / 6, t3 = i3 / 6;
        if (t1 != t2 && t2 != t3 && t1 != t3) continue;
        found.insert(canonicalize_walk({x1, x2, x3}));
      }
    }
  std::vector<Walk> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), walk_less);
  return out;
}

namespace {

// True when every rotation/reversal of the growing walk prefix that is
// decidable so far is >= the built prefix; a strictly smaller one proves the
// completed walk could never be canonical as built.
bool partial_walk_canonical(const Walk& w) {
  const int m = int(w.size());
  if (m == 0) return true;
  const int l0 = w[0];
  assert(l0 > 0);
  for (int i = 1; i < m; ++i) {
    if (w[i] == l0) {
      // forward rotation anchored at i: compare w[i..] with w[0..]
      for (int k = 0; i + k < m; ++k) {
        if (w[i + k] != w[k]) {
          if (entry_less(w[i + k], w[k])) return false;
          break;
        }
      }
    }
    if (w[i] == -l0) {
      // reversal anchored at i: (-w[i], -w[i-1], ...) vs (w[0], w[1], ...)
      for (int k = 0; k <= i; ++k) {
        if (-w[i - k] != w[k]) {
          if (entry_less(-w[i - k], w[k])) return false;
          break;
        }
      }
    }
  }
  return true;
}

struct Engine {
  const FatGraph& fg;
  const SearchConfig& cfg;
  const std::vector<SignedRelabelling>& rels;
  const std::function<void(const OrderedDecomposition&, const Triangulation&)>&
      emit;
  SearchStats& stats;

  int n;
  int labels;
  std::vector<int> member_used;  // 1-based by label
  std::vector<char> internal_used;
  int unused_ext = 0;
  std::vector<Walk> walks;  // completed walks, presets first
  int preset_count = 0;
  Walk cur;
  std::vector<int> cur_start, cur_end;  // node ids per current entry
  std::vector<int> walk_pos_uses, walk_neg_uses;  // per label, current walk
  FrontierTracker frontier;
  bool track;

  Engine(const FatGraph& f, const SearchConfig& c,
         const std::vector<SignedRelabelling>& r,
         const std::function<void(const OrderedDecomposition&,
                                  const Triangulation&)>& e,
         SearchStats& s)
      : fg(f), cfg(c), rels(r), emit(e), stats(s), n(f.tet_count),
        labels(f.triple_count()), member_used(labels + 1, 0),
        internal_used(f.internal_count(), 0), unused_ext(3 * labels),
        walk_pos_uses(labels + 1, 0), walk_neg_uses(labels + 1, 0),
        frontier(4 * f.tet_count),
        track(c.require_one_vertex && c.prune_one_vertex) {}

  int budget() const { return cfg.degree3_preenum ? 4 : cfg.min_walk_external; }

  int entry_for_node(int node) const {
    const Triple& t = fg.triples[fg.triple_at[node]];
    return node == t.tail ? t.label : -t.label;
  }

  void run() {
    if (!cfg.degree3_preenum) {
      start_next_walk();
      return;
    }
    std::vector<Walk> pool = pre_enumerate_degree3_walks(fg);
    std::vector<int> chosen;
    choose_presets(pool, 0, chosen);
  }

  // Walks of the pool are either present or absent in any decomposition;
  // iterate over the arc-disjoint subsets, empty set first.
  void choose_presets(const std::vector<Walk>& pool, size_t idx,
                      std::vector<int>& chosen) {
    if (idx == pool.size()) {
      start_next_walk();
      return;
    }
    choose_presets(pool, idx + 1, chosen);  // without pool[idx]
    if (apply_preset(pool[idx])) {
      chosen.push_back(int(idx));
      choose_presets(pool, idx + 1, chosen);
      chosen.pop_back();
      unapply_preset();
    }
  }

  struct PresetUndo {
    std::vector<int> internals;
    Walk walk;
    int frontier_checkpoint;
  };
  std::vector<PresetUndo> preset_undo;

  bool apply_preset(const Walk& w) {
    const int m = int(w.size());
    // capacity
    std::vector<int> delta(labels + 1, 0);
    for (int x : w) delta[std::abs(x)]++;
    for (int l = 1; l <= labels; ++l)
      if (member_used[l] + delta[l] > 3) return false;
    if (cfg.orientable_only && cfg.prune_orient) {
      for (int l = 1; l <= labels; ++l) {
        bool pos = false, neg = false;
        for (int x : w) {
          pos |= x == l;
          neg |= x == -l;
        }
        if (pos && neg) {
          stats.prune_orient++;
          return false;
        }
      }
    }
    PresetUndo undo;
    undo.walk = w;
    undo.frontier_checkpoint = frontier.checkpoint();
    for (int k = 0; k < m; ++k) {
      int from = entry_end_node(fg, w[k]);
      int to = entry_start_node(fg, w[(k + 1) % m]);
      int ia = internal_arc_id(fat_tet(from), fat_face(from), fat_face(to));
      if (internal_used[ia]) {
        for (int placed : undo.internals) internal_used[placed] = 0;
        return false;
      }
      internal_used[ia] = 1;
      undo.internals.push_back(ia);
    }
    for (int x : w) member_used[std::abs(x)]++;
    unused_ext -= m;
    if (track) {
      for (int k = 0; k < m; ++k) {
        int va = entry_end_node(fg, w[(k + m - 1) % m]);
        int vd = entry_start_node(fg, w[(k + 1) % m]);
        auto r = frontier.glue(va, vd, unused_ext > 0);
        if (r == FrontierTracker::Result::closed_early) {
          stats.prune_vertex++;
          frontier.rollback(undo.frontier_checkpoint);
          for (int placed : undo.internals) internal_used[placed] = 0;
          for (int x : w) member_used[std::abs(x)]--;
          unused_ext += m;
          return false;
        }
      }
    }
    walks.push_back(w);
    preset_count++;
    preset_undo.push_back(std::move(undo));
    return true;
  }

  void unapply_preset() {
    PresetUndo undo = std::move(preset_undo.back());
    preset_undo.pop_back();
    walks.pop_back();
    preset_count--;
    frontier.rollback(undo.frontier_checkpoint);
    for (int ia : undo.internals) internal_used[ia] = 0;
    for (int x : undo.walk) member_used[std::abs(x)]--;
    unused_ext += int(undo.walk.size());
  }

  void start_next_walk() {
    int k = int(walks.size());
    if (unused_ext == 0) {
      if (k == n + 1) emit_candidate();
      return;
    }
    if (k >= n + 1) {
      stats.prune_budget++;  // no walks left to absorb the remaining arcs
      return;
    }
    if (cfg.prune_budget &&
        prune_arc_budget(k, unused_ext, n, budget())) {
      stats.prune_budget++;
      return;
    }
    int label = 1;
    while (member_used[label] == 3) label++;
    assert(label <= labels);
    push_entry(label);
    extend(cur_end.back());
    pop_entry();
  }

  void push_entry(int entry) {
    int l = std::abs(entry);
    cur.push_back(entry);
    cur_start.push_back(entry_start_node(fg, entry));
    cur_end.push_back(entry_end_node(fg, entry));
    member_used[l]++;
    unused_ext--;
    (entry > 0 ? walk_pos_uses : walk_neg_uses)[l]++;
    stats.nodes++;
  }

  void pop_entry() {
    int entry = cur.back();
    int l = std::abs(entry);
    (entry > 0 ? walk_pos_uses : walk_neg_uses)[l]--;
    unused_ext++;
    member_used[l]--;
    cur.pop_back();
    cur_start.pop_back();
    cur_end.pop_back();
  }

  void extend(int at) {
    const int first_tail = cur_start.front();
    const int tet = fat_tet(at);
    for (int f = 0; f < 4; ++f) {
      int n2 = fat_node(tet, f);
      if (n2 == at) continue;
      int ia = internal_arc_id(tet, fat_face(at), f);
      if (internal_used[ia]) continue;
      internal_used[ia] = 1;
      stats.nodes++;
      int fcp = frontier.checkpoint();
      bool alive = true;
      // Placing this internal completes the context of the last external
      // (unless it is the walk's first, whose context closes with the walk).
      if (track && cur.size() >= 2) {
        auto r = frontier.glue(cur_end[cur.size() - 2], n2, true);
        if (r == FrontierTracker::Result::closed_early) {
          stats.prune_vertex++;
          alive = false;
        }
      }
      if (alive) {
        if (n2 == first_tail) try_close(at, n2);
        extend_through(n2);
      }
      frontier.rollback(fcp);
      internal_used[ia] = 0;
    }
  }

  void extend_through(int n2) {
    const Triple& tr = fg.triples[fg.triple_at[n2]];
    if (member_used[tr.label] == 3) return;
    int entry = (n2 == tr.tail) ? tr.label : -tr.label;
    if (cfg.orientable_only && cfg.prune_orient &&
        orientable_prune(walk_pos_uses[tr.label], walk_neg_uses[tr.label],
                         entry)) {
      stats.prune_orient++;
      return;
    }
    push_entry(entry);
    if (cfg.prune_canonical && cfg.granularity == CanonGranularity::every_arc &&
        !partial_walk_canonical(cur)) {
      stats.prune_canon++;
    } else {
      extend(cur_end.back());
    }
    pop_entry();
  }

  void try_close(int at, int n2) {
    const int m = int(cur.size());
    if (m < cfg.min_walk_external) return;
    if (cfg.degree3_preenum && m == 3) return;  // handled by the preset pool
    if (!cfg.degree3_preenum && cfg.min_walk_external >= 3 && m == 3) {
      // No walk of three internal arcs on three distinct tetrahedra.
      int t1 = fat_tet(cur_start[0]);
      int t2 = fat_tet(cur_start[1]);
      int t3 = fat_tet(cur_start[2]);
      if (t1 != t2 && t2 != t3 && t1 != t3) return;
    }
    if (cfg.prune_canonical) {
      if (canonicalize_walk(cur) != cur) {
        stats.prune_canon++;
        return;
      }
      if (int(walks.size()) > preset_count &&
          !walk_less(walks.back(), cur)) {
        stats.prune_canon++;
        return;
      }
    }
    int fcp = frontier.checkpoint();
    if (track) {
      // The closing internal arc already completed the last external's
      // context when it was placed in extend(); closing the cycle settles
      // the first external's context only.
      if (frontier.glue(at, cur_start[1 % m], unused_ext > 0) ==
          FrontierTracker::Result::closed_early) {
        stats.prune_vertex++;
        frontier.rollback(fcp);
        return;
      }
    }
    // Non-reversing: decidable once all parallel members are placed;
    // otherwise deferred to emission.
    walks.push_back(cur);
    OrderedDecomposition partial{walks};
    auto marking = try_mark(partial, fg, int(walks.size()) - 1);
    bool reversing = marking && !marking->non_reversing;
    if (!reversing) {
      if (cfg.prune_canonical && preset_count == 0 &&
          !automorphism_prefix_ok()) {
        stats.prune_canon++;
      } else {
        Walk saved_cur;
        std::vector<int> saved_start, saved_end, saved_pos, saved_neg;
        saved_cur.swap(cur);
        saved_start.swap(cur_start);
        saved_end.swap(cur_end);
        saved_pos = walk_pos_uses;
        saved_neg = walk_neg_uses;
        std::fill(walk_pos_uses.begin(), walk_pos_uses.end(), 0);
        std::fill(walk_neg_uses.begin(), walk_neg_uses.end(), 0);
        start_next_walk();
        walk_pos_uses = saved_pos;
        walk_neg_uses = saved_neg;
        cur.swap(saved_cur);
        cur_start.swap(saved_start);
        cur_end.swap(saved_end);
      }
    }
    walks.pop_back();
    frontier.rollback(fcp);
  }

  // Compare the completed walks (a sorted prefix of every completion)
  // against each relabelled image; a strictly smaller image proves no
  // completion from here is canonical.
  bool automorphism_prefix_ok() {
    for (const SignedRelabelling& rel : rels) {
      if (rel.is_identity()) continue;
      std::vector<Walk> img;
      img.reserve(walks.size());
      for (const Walk& w : walks)
        img.push_back(canonicalize_walk(apply_relabelling_walk(w, rel)));
      std::sort(img.begin(), img.end(), walk_less);
      int cmp = 0;
      for (size_t i = 0; i < walks.size() && cmp == 0; ++i) {
        if (img[i] == walks[i]) continue;
        cmp = walk_less(img[i], walks[i]) ? -1 : 1;
      }
      if (cmp < 0) return false;
    }
    return true;
  }

  static Walk apply_relabelling_walk(const Walk& w,
                                     const SignedRelabelling& rel) {
    Walk out = w;
    for (int& x : out) {
      int l = std::abs(x);
      int img = rel.label_map[l];
      bool neg = (x < 0) ^ bool(rel.sign_flip[l]);
      x = neg ? -img : img;
    }
    return out;
  }

  void emit_candidate() {
    // Canonical-as-built and in-order discovery make each decomposition
    // reachable along exactly one surviving path; recomputed here so that
    // disabling the in-search prune cannot change the emitted set.
    for (const Walk& w : walks)
      if (canonicalize_walk(w) != w) return;
    for (int i = preset_count + 1; i < int(walks.size()); ++i)
      if (!walk_less(walks[i - 1], walks[i])) return;
    OrderedDecomposition d{walks};
    for (int wi = 0; wi < int(walks.size()); ++wi)
      if (!is_non_reversing(d, fg, wi)) return;
    OrderedDecomposition sorted = canonicalize(d);
    if (!survives_automorphisms(sorted, rels)) return;
    Triangulation t = decomposition_to_triangulation(sorted, fg);
    if (cfg.require_one_vertex && vertex_classes(t).size() != 1) return;
    if (cfg.orientable_only && !is_orientable(t)) return;
    stats.solutions++;
    emit(sorted, t);
  }
};

}  // namespace

void enumerate(const FatGraph& fg, const SearchConfig& cfg,
               const std::vector<SignedRelabelling>& rels,
               const std::function<void(const OrderedDecomposition&,
                                        const Triangulation&)>& emit,
               SearchStats& stats) {
  assert(!cfg.degree3_preenum || cfg.min_walk_external == 3);
  Engine engine(fg, cfg, rels, emit, stats);
  engine.run();
}

}  // namespace mdcensus

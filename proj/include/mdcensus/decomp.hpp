#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdcensus/fatgraph.hpp"

namespace mdcensus {

// A closed walk recorded by its external arcs only: signed labels, +l when
// the triple l is traversed tail->head. The internal arcs between
// consecutive externals are implied (exactly one internal arc joins the
// relevant K4 nodes) and are recomputed on demand.
using Walk = std::vector<int>;

struct OrderedDecomposition {
  std::vector<Walk> walks;
  friend bool operator==(const OrderedDecomposition&,
                         const OrderedDecomposition&) = default;
};

// Census text form: walks as parenthesized signed-integer lists, separated
// by single spaces: "(1) (1,2,4,-2,3,-4,-3,-1,3,-2) (4)".
std::string to_text(const OrderedDecomposition& d);
std::optional<OrderedDecomposition> parse_decomposition(std::string_view text);

inline int entry_start_node(const FatGraph& fg, int entry) {
  const Triple& t = fg.triple_of_label(entry > 0 ? entry : -entry);
  return entry > 0 ? t.tail : t.head;
}
inline int entry_end_node(const FatGraph& fg, int entry) {
  const Triple& t = fg.triple_of_label(entry > 0 ? entry : -entry);
  return entry > 0 ? t.head : t.tail;
}

struct ValidationResult {
  bool ok = true;
  int walk_index = -1;  // first offending walk, -1 for global conditions
  std::string error;
};

// Partition + closure + alternation check against fg.
ValidationResult validate(const OrderedDecomposition& d, const FatGraph& fg);

// Number of external entries = degree of the corresponding triangulation edge.
inline int external_length(const Walk& w) { return int(w.size()); }

// Entry order used throughout canonicalization: by absolute value, positive
// before negative.
inline bool entry_less(int a, int b) {
  int aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
  if (aa != ab) return aa < ab;
  return a > b;  // +k before -k
}
bool walk_less(const Walk& a, const Walk& b);

// Minimal rotation/reversal: the representation starting at the lowest label
// in the positive direction, ties broken by the following entries.
Walk canonicalize_walk(const Walk& w);

// Canonical walks, sorted.
OrderedDecomposition canonicalize(const OrderedDecomposition& d);

// Lexicographic-then-length order on walk lists.
bool decomposition_less(const OrderedDecomposition& a,
                        const OrderedDecomposition& b);

OrderedDecomposition apply_relabelling(const OrderedDecomposition& d,
                                       const SignedRelabelling& rel);

// d must already be canonical; false iff some relabelled image is strictly
// smaller.
bool survives_automorphisms(const OrderedDecomposition& d,
                            const std::vector<SignedRelabelling>& rels);

// One occurrence of an external member arc inside a decomposition. The three
// members of a triple are interchangeable, so occurrences stand in for
// member-arc identity.
struct MemberRef {
  int walk = -1;
  int pos = -1;
  friend auto operator<=>(const MemberRef&, const MemberRef&) = default;
};

// Result of the "above" marking of one walk.
struct Marking {
  // For each position of the marked walk, the occurrences marked above it
  // (at most two distinct ones ever appear).
  std::vector<std::vector<MemberRef>> above;
  int iterations = 0;
  bool non_reversing = true;
};

// The iterative marking of walk `walk_index`; the seed parallel arc is the
// first parallel occurrence in (walk, position) order, for determinism.
Marking mark(const OrderedDecomposition& d, const FatGraph& fg, int walk_index);

// Marking over a partial decomposition (closed walks only): nullopt when the
// procedure reaches an arc whose walk has not been built yet.
std::optional<Marking> try_mark(const OrderedDecomposition& d,
                                const FatGraph& fg, int walk_index);

// True iff no external arc of the walk acquires two distinct "above" marks.
bool is_non_reversing(const OrderedDecomposition& d, const FatGraph& fg,
                      int walk_index);

}  // namespace mdcensus

#include "mdcensus/decomp.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>

namespace mdcensus {

std::string to_text(const OrderedDecomposition& d) {
  std::ostringstream out;
  for (size_t w = 0; w < d.walks.size(); ++w) {
    if (w) out << ' ';
    out << '(';
    for (size_t i = 0; i < d.walks[w].size(); ++i) {
      if (i) out << ',';
      out << d.walks[w][i];
    }
    out << ')';
  }
  return out.str();
}

std::optional<OrderedDecomposition> parse_decomposition(std::string_view text) {
  OrderedDecomposition d;
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') pos++; };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') return std::nullopt;
    pos++;
    Walk w;
    while (true) {
      int value = 0;
      auto [p, ec] =
          std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc() || value == 0) return std::nullopt;
      pos = size_t(p - text.data());
      w.push_back(value);
      if (pos >= text.size()) return std::nullopt;
      if (text[pos] == ',') {
        pos++;
        continue;
      }
      if (text[pos] == ')') {
        pos++;
        break;
      }
      return std::nullopt;
    }
    d.walks.push_back(std::move(w));
    skip_ws();
  }
  if (d.walks.empty()) return std::nullopt;
  return d;
}

ValidationResult validate(const OrderedDecomposition& d, const FatGraph& fg) {
  const int labels = fg.triple_count();
  std::vector<int> label_uses(labels + 1, 0);
  for (int w = 0; w < int(d.walks.size()); ++w) {
    const Walk& walk = d.walks[w];
    if (walk.empty())
      return {false, w, "empty walk"};
    for (int x : walk) {
      int l = x < 0 ? -x : x;
      if (l < 1 || l > labels)
        return {false, w, "label out of range"};
      label_uses[l]++;
    }
  }
  // Alternation and closure: consecutive externals (cyclically) must be
  // joined by an internal arc of one K4.
  std::vector<int> internal_uses(fg.internal_count(), 0);
  for (int w = 0; w < int(d.walks.size()); ++w) {
    const Walk& walk = d.walks[w];
    for (size_t i = 0; i < walk.size(); ++i) {
      int from = entry_end_node(fg, walk[i]);
      int to = entry_start_node(fg, walk[(i + 1) % walk.size()]);
      if (fat_tet(from) != fat_tet(to) || from == to)
        return {false, w, "consecutive externals share no internal arc"};
      internal_uses[internal_arc_id(fat_tet(from), fat_face(from),
                                    fat_face(to))]++;
    }
  }
  for (int l = 1; l <= labels; ++l)
    if (label_uses[l] != 3)
      return {false, -1, "label " + std::to_string(l) + " used " +
                             std::to_string(label_uses[l]) + " times, not 3"};
  for (int ia = 0; ia < fg.internal_count(); ++ia)
    if (internal_uses[ia] != 1)
      return {false, -1, "internal arc used " +
                             std::to_string(internal_uses[ia]) + " times"};
  return {};
}

bool walk_less(const Walk& a, const Walk& b) {
  size_t m = std::min(a.size(), b.size());
  for (size_t i = 0; i < m; ++i) {
    if (a[i] != b[i]) return entry_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

Walk canonicalize_walk(const Walk& w) {
  const int m = int(w.size());
  assert(m > 0);
  Walk best;
  Walk cand(m);
  for (int dir = 0; dir < 2; ++dir) {
    for (int s = 0; s < m; ++s) {
      for (int k = 0; k < m; ++k) {
        // forward: w[s+k]; reversed: -w[s-k]
        cand[k] = dir == 0 ? w[(s + k) % m] : -w[((s - k) % m + m) % m];
      }
      if (best.empty() || walk_less(cand, best)) best = cand;
    }
  }
  return best;
}

OrderedDecomposition canonicalize(const OrderedDecomposition& d) {
  OrderedDecomposition out;
  for (const Walk& w : d.walks) out.walks.push_back(canonicalize_walk(w));
  std::sort(out.walks.begin(), out.walks.end(), walk_less);
  return out;
}

bool decomposition_less(const OrderedDecomposition& a,
                        const OrderedDecomposition& b) {
  size_t m = std::min(a.walks.size(), b.walks.size());
  for (size_t i = 0; i < m; ++i) {
    if (a.walks[i] != b.walks[i]) return walk_less(a.walks[i], b.walks[i]);
  }
  return a.walks.size() < b.walks.size();
}

OrderedDecomposition apply_relabelling(const OrderedDecomposition& d,
                                       const SignedRelabelling& rel) {
  OrderedDecomposition out = d;
  for (Walk& w : out.walks)
    for (int& x : w) {
      int l = x < 0 ? -x : x;
      int img = rel.label_map[l];
      bool neg = (x < 0) ^ bool(rel.sign_flip[l]);
      x = neg ? -img : img;
    }
  return out;
}

bool survives_automorphisms(const OrderedDecomposition& d,
                            const std::vector<SignedRelabelling>& rels) {
  for (const SignedRelabelling& rel : rels) {
    if (rel.is_identity()) continue;
    OrderedDecomposition img = canonicalize(apply_relabelling(d, rel));
    if (decomposition_less(img, d)) return false;
  }
  return true;
}

namespace {

// Per-occurrence context used by the marking procedure. Works on partial
// decompositions (a subset of closed walks): lookups that need an arc not
// yet present report failure instead of asserting.
struct OccurrenceIndex {
  const OrderedDecomposition& d;
  const FatGraph& fg;
  std::vector<std::vector<MemberRef>> of_label;  // 1-based
  // Internal arc id -> the external occurrence paired with it at each of its
  // two endpoints ([0] = smaller node, [1] = larger node).
  std::vector<std::array<MemberRef, 2>> pairing;

  OccurrenceIndex(const OrderedDecomposition& dd, const FatGraph& f)
      : d(dd), fg(f), of_label(f.triple_count() + 1),
        pairing(f.internal_count(), {MemberRef{}, MemberRef{}}) {
    for (int w = 0; w < int(d.walks.size()); ++w) {
      const Walk& walk = d.walks[w];
      for (int p = 0; p < int(walk.size()); ++p) {
        int x = walk[p];
        of_label[x < 0 ? -x : x].push_back({w, p});
        int from = entry_end_node(fg, x);
        int q = (p + 1) % int(walk.size());
        int to = entry_start_node(fg, walk[q]);
        int ia = internal_arc_id(fat_tet(from), fat_face(from), fat_face(to));
        pairing[ia][from < to ? 0 : 1] = {w, p};
        pairing[ia][from < to ? 1 : 0] = {w, q};
      }
    }
  }

  int entry(MemberRef o) const { return d.walks[o.walk][o.pos]; }
  int label(MemberRef o) const {
    int x = entry(o);
    return x < 0 ? -x : x;
  }
  int start_node(MemberRef o) const { return entry_start_node(fg, entry(o)); }
  int end_node(MemberRef o) const { return entry_end_node(fg, entry(o)); }

  // The internal arc paired with occurrence o at node `at`: the internal
  // adjacent to o in its walk on that side. Returns its other endpoint.
  int paired_internal_other_end(MemberRef o, int at) const {
    const Walk& w = d.walks[o.walk];
    if (start_node(o) == at) {
      int prev = w[(o.pos + int(w.size()) - 1) % w.size()];
      return entry_end_node(fg, prev);
    }
    assert(end_node(o) == at);
    int next = w[(o.pos + 1) % w.size()];
    return entry_start_node(fg, next);
  }

  // The external occurrence paired with internal arc {a,b} at node b;
  // walk < 0 when that internal arc is not in the decomposition yet.
  MemberRef paired_external_at(int node_a, int node_b) const {
    int ia = internal_arc_id(fat_tet(node_a), fat_face(node_a),
                             fat_face(node_b));
    return pairing[ia][node_a < node_b ? 1 : 0];
  }
};

}  // namespace

std::optional<Marking> try_mark(const OrderedDecomposition& d,
                                const FatGraph& fg, int walk_index) {
  OccurrenceIndex idx(d, fg);
  const int m = int(d.walks[walk_index].size());
  Marking result;
  result.above.resize(m);

  auto mark_above = [&](int pos, MemberRef o) {
    auto& set = result.above[pos];
    if (std::find(set.begin(), set.end(), o) == set.end()) set.push_back(o);
  };
  auto marked_above = [&](int pos, MemberRef o) {
    auto& set = result.above[pos];
    return std::find(set.begin(), set.end(), o) != set.end();
  };

  MemberRef e_s{walk_index, 0};
  // Seed: the first parallel occurrence distinct from e_s.
  MemberRef e_S{-1, -1};
  for (MemberRef cand : idx.of_label[idx.label(e_s)])
    if (cand != e_s) {
      e_S = cand;
      break;
    }
  if (e_S.walk < 0) return std::nullopt;  // parallel members not placed yet
  mark_above(0, e_S);

  MemberRef e_a = e_s;
  MemberRef e_A = e_S;
  const int cap = 2 * m + 1;
  while (true) {
    result.iterations++;
    assert(result.iterations <= cap && "marking failed to terminate");
    (void)cap;
    int pos_b = (e_a.pos + 1) % m;
    MemberRef e_b{walk_index, pos_b};
    // Internal arc preceding e_b joins i and j, with e_b incident on j.
    int i = idx.end_node(e_a);
    int j = idx.start_node(e_b);
    // e_A is parallel to e_a, hence incident on i; follow its walk through i.
    int k = idx.paired_internal_other_end(e_A, i);
    // e_C is the internal arc {k, j}; e_D its paired external at j.
    MemberRef e_D = idx.paired_external_at(k, j);
    if (e_D.walk < 0) return std::nullopt;  // context not built yet
    if (e_b == e_s && marked_above(0, e_D)) break;
    mark_above(pos_b, e_D);
    e_a = e_b;
    e_A = e_D;
  }
  for (const auto& set : result.above)
    if (set.size() > 1) result.non_reversing = false;
  return result;
}

Marking mark(const OrderedDecomposition& d, const FatGraph& fg,
             int walk_index) {
  auto result = try_mark(d, fg, walk_index);
  assert(result && "mark requires a complete decomposition");
  return *result;
}

bool is_non_reversing(const OrderedDecomposition& d, const FatGraph& fg,
                      int walk_index) {
  return mark(d, fg, walk_index).non_reversing;
}

}  // namespace mdcensus

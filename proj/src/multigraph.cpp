#include "mdcensus/multigraph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

namespace mdcensus {

namespace {

using Matrix = std::vector<std::vector<int>>;

// Multiplicity matrix: m[u][v] = number of arcs between u and v for u != v,
// m[u][u] = number of loops at u (each loop contributes 2 to the degree).
Matrix multiplicity_matrix(const MultiGraph& g) {
  Matrix m(g.order, std::vector<int>(g.order, 0));
  for (const Arc& a : g.arcs) {
    if (a.is_loop())
      m[a.u][a.u]++;
    else {
      m[a.u][a.v]++;
      m[a.v][a.u]++;
    }
  }
  return m;
}

// Reading of the matrix under a placement perm (position -> node), in
// column-completion order: for each position p, the multiplicities to the
// previously placed nodes followed by the loop count of perm[p]. Equal
// readings <=> equal labelled matrices, and the maximum over placements is a
// canonical invariant.
std::string reading(const Matrix& m, const std::vector<int>& perm) {
  std::string out;
  out.reserve(perm.size() * (perm.size() + 1) / 2);
  for (size_t p = 0; p < perm.size(); ++p) {
    for (size_t r = 0; r < p; ++r) out.push_back(char('0' + m[perm[r]][perm[p]]));
    out.push_back(char('0' + m[perm[p]][perm[p]]));
  }
  return out;
}

void max_reading_dfs(const Matrix& m, std::vector<int>& perm,
                     std::vector<char>& used, std::string& cur,
                     std::string& best) {
  const int n = int(m.size());
  const int p = int(perm.size());
  if (p == n) {
    if (best.empty() || cur > best) best = cur;
    return;
  }
  // Candidate columns for every unused node, sorted descending so the
  // greedy maximum is explored first.
  std::vector<std::pair<std::string, int>> cands;
  for (int u = 0; u < n; ++u) {
    if (used[u]) continue;
    std::string col;
    col.reserve(p + 1);
    for (int r = 0; r < p; ++r) col.push_back(char('0' + m[perm[r]][u]));
    col.push_back(char('0' + m[u][u]));
    cands.emplace_back(std::move(col), u);
  }
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [col, u] : cands) {
    if (col != cands.front().first)
      break;  // only maximal columns can extend the lexicographic maximum
    const size_t len0 = cur.size();
    cur += col;
    // Prune against the best complete reading found so far.
    if (!best.empty()) {
      int cmp = cur.compare(0, cur.size(), best, 0, cur.size());
      if (cmp < 0) {
        cur.resize(len0);
        continue;
      }
      if (cmp > 0) best.clear();  // strictly better prefix: drop stale best
    }
    perm.push_back(u);
    used[u] = 1;
    max_reading_dfs(m, perm, used, cur, best);
    used[u] = 0;
    perm.pop_back();
    cur.resize(len0);
  }
}

std::string max_reading(const Matrix& m) {
  std::vector<int> perm;
  std::vector<char> used(m.size(), 0);
  std::string cur, best;
  max_reading_dfs(m, perm, used, cur, best);
  return best;
}

MultiGraph graph_from_matrix(const Matrix& m) {
  MultiGraph g;
  g.order = int(m.size());
  for (int u = 0; u < g.order; ++u) {
    for (int k = 0; k < m[u][u]; ++k) g.arcs.push_back({u, u});
    for (int v = u + 1; v < g.order; ++v)
      for (int k = 0; k < m[u][v]; ++k) g.arcs.push_back({u, v});
  }
  g.normalize();
  return g;
}

}  // namespace

int MultiGraph::degree(int node) const {
  int d = 0;
  for (const Arc& a : arcs) {
    if (a.u == node) d++;
    if (a.v == node) d++;
  }
  return d;
}

bool MultiGraph::four_regular() const {
  for (int u = 0; u < order; ++u)
    if (degree(u) != 4) return false;
  return true;
}

bool MultiGraph::valid() const {
  if (order < 1) return false;
  if (int(arcs.size()) != 2 * order) return false;
  for (const Arc& a : arcs)
    if (a.u > a.v || a.u < 0 || a.v >= order) return false;
  if (!std::is_sorted(arcs.begin(), arcs.end())) return false;
  return four_regular();
}

void MultiGraph::normalize() {
  for (Arc& a : arcs)
    if (a.u > a.v) std::swap(a.u, a.v);
  std::sort(arcs.begin(), arcs.end());
}

std::string MultiGraph::to_text() const {
  std::ostringstream out;
  out << order << ';';
  for (size_t i = 0; i < arcs.size(); ++i)
    out << (i ? "," : " ") << arcs[i].u << '-' << arcs[i].v;
  return out.str();
}

std::optional<MultiGraph> MultiGraph::parse(std::string_view line) {
  MultiGraph g;
  size_t semi = line.find(';');
  if (semi == std::string_view::npos) return std::nullopt;
  {
    std::string_view head = line.substr(0, semi);
    auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), g.order);
    if (ec != std::errc() || p != head.data() + head.size()) return std::nullopt;
  }
  std::string_view rest = line.substr(semi + 1);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < rest.size() && (rest[pos] == ' ' || rest[pos] == '\t')) pos++;
  };
  skip_ws();
  while (pos < rest.size()) {
    auto read_int = [&](int& out) -> bool {
      auto [p, ec] = std::from_chars(rest.data() + pos, rest.data() + rest.size(), out);
      if (ec != std::errc()) return false;
      pos = size_t(p - rest.data());
      return true;
    };
    Arc a;
    if (!read_int(a.u)) return std::nullopt;
    if (pos >= rest.size() || rest[pos] != '-') return std::nullopt;
    pos++;
    if (!read_int(a.v)) return std::nullopt;
    if (a.u < 0 || a.v < 0 || a.u >= g.order || a.v >= g.order) return std::nullopt;
    g.arcs.push_back(a);
    skip_ws();
    if (pos < rest.size()) {
      if (rest[pos] != ',') return std::nullopt;
      pos++;
      skip_ws();
    }
  }
  g.normalize();
  return g;
}

bool is_connected(const MultiGraph& g) {
  if (g.order <= 1) return g.order == 1;
  std::vector<char> seen(g.order, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const Arc& a : g.arcs) {
      int w = -1;
      if (a.u == u) w = a.v;
      else if (a.v == u) w = a.u;
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        count++;
        stack.push_back(w);
      }
    }
  }
  return count == g.order;
}

std::string canonical_form(const MultiGraph& g) {
  if (g.order == 0) return "0:";
  Matrix m = multiplicity_matrix(g);
  return std::to_string(g.order) + ":" + max_reading(m);
}

bool ArcAutomorphism::is_identity() const {
  for (size_t i = 0; i < node_map.size(); ++i)
    if (node_map[i] != int(i)) return false;
  for (size_t i = 0; i < arc_map.size(); ++i)
    if (arc_map[i] != int(i)) return false;
  for (uint8_t f : endpoint_flip)
    if (f) return false;
  return true;
}

ArcAutomorphism ArcAutomorphism::compose(const ArcAutomorphism& inner) const {
  ArcAutomorphism out;
  out.node_map.resize(node_map.size());
  out.arc_map.resize(arc_map.size());
  out.endpoint_flip.resize(endpoint_flip.size());
  for (size_t i = 0; i < node_map.size(); ++i)
    out.node_map[i] = node_map[inner.node_map[i]];
  for (size_t a = 0; a < arc_map.size(); ++a) {
    out.arc_map[a] = arc_map[inner.arc_map[a]];
    out.endpoint_flip[a] =
        uint8_t(inner.endpoint_flip[a] ^ endpoint_flip[inner.arc_map[a]]);
  }
  return out;
}

namespace {

void node_autos_dfs(const Matrix& m, std::vector<int>& sigma,
                    std::vector<char>& used,
                    std::vector<std::vector<int>>& out) {
  const int n = int(m.size());
  const int u = int(sigma.size());
  if (u == n) {
    out.push_back(sigma);
    return;
  }
  for (int img = 0; img < n; ++img) {
    if (used[img]) continue;
    if (m[u][u] != m[img][img]) continue;
    bool ok = true;
    for (int w = 0; w < u && ok; ++w)
      if (m[u][w] != m[img][sigma[w]]) ok = false;
    if (!ok) continue;
    sigma.push_back(img);
    used[img] = 1;
    node_autos_dfs(m, sigma, used, out);
    used[img] = 0;
    sigma.pop_back();
  }
}

// Expand one node automorphism into all compatible arc-level automorphisms:
// permutations within each parallel class, plus endpoint flips for loops.
void expand_arc_maps(const MultiGraph& g, const std::vector<int>& sigma,
                     std::vector<ArcAutomorphism>& out) {
  // Parallel classes keyed by normalized node pair, in sorted arc order.
  std::vector<std::pair<Arc, std::vector<int>>> classes;
  for (int i = 0; i < int(g.arcs.size()); ++i) {
    if (!classes.empty() && classes.back().first == g.arcs[i])
      classes.back().second.push_back(i);
    else
      classes.push_back({g.arcs[i], {i}});
  }
  auto class_of = [&](Arc key) -> const std::vector<int>* {
    for (const auto& [arc, ids] : classes)
      if (arc == key) return &ids;
    return nullptr;
  };

  ArcAutomorphism base;
  base.node_map = sigma;
  base.arc_map.assign(g.arcs.size(), -1);
  base.endpoint_flip.assign(g.arcs.size(), 0);

  // For each class, the image class and the forced flip for non-loops.
  struct ClassPlan {
    const std::vector<int>* src;
    const std::vector<int>* dst;
    bool loop;
    uint8_t forced_flip;
  };
  std::vector<ClassPlan> plans;
  for (const auto& [arc, ids] : classes) {
    Arc img{sigma[arc.u], sigma[arc.v]};
    uint8_t flip = 0;
    if (img.u > img.v) {
      std::swap(img.u, img.v);
      flip = 1;
    }
    const std::vector<int>* dst = class_of(img);
    assert(dst && dst->size() == ids.size());
    plans.push_back({&ids, dst, arc.is_loop(), flip});
  }

  // Nested product over class permutations and loop flip vectors.
  std::vector<std::vector<int>> perms(plans.size());
  std::vector<uint32_t> flips(plans.size(), 0);
  auto emit = [&]() {
    ArcAutomorphism a = base;
    for (size_t c = 0; c < plans.size(); ++c) {
      const auto& pl = plans[c];
      for (size_t k = 0; k < pl.src->size(); ++k) {
        int arc = (*pl.src)[k];
        a.arc_map[arc] = (*pl.dst)[perms[c][k]];
        a.endpoint_flip[arc] =
            pl.loop ? uint8_t((flips[c] >> k) & 1) : pl.forced_flip;
      }
    }
    out.push_back(std::move(a));
  };
  // Iterate class by class.
  std::function<void(size_t)> rec = [&](size_t c) {
    if (c == plans.size()) {
      emit();
      return;
    }
    const size_t k = plans[c].src->size();
    std::vector<int>& perm = perms[c];
    perm.resize(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (plans[c].loop) {
        for (uint32_t f = 0; f < (1u << k); ++f) {
          flips[c] = f;
          rec(c + 1);
        }
        flips[c] = 0;
      } else {
        rec(c + 1);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0);
}

}  // namespace

std::vector<ArcAutomorphism> automorphisms(const MultiGraph& g) {
  Matrix m = multiplicity_matrix(g);
  std::vector<std::vector<int>> sigmas;
  std::vector<int> sigma;
  std::vector<char> used(g.order, 0);
  node_autos_dfs(m, sigma, used, sigmas);
  std::vector<ArcAutomorphism> out;
  for (const auto& s : sigmas) expand_arc_maps(g, s, out);
  return out;
}

namespace {

struct Generator {
  int n = 0;
  Matrix m;
  std::vector<int> deg;  // remaining degree per node
  GenerateCounts counts;
  std::vector<MultiGraph> connected_out;
  std::vector<MultiGraph> all_out;
  bool keep_disconnected = false;

  // Reject a completed row prefix when some transposition of already placed
  // nodes yields a strictly larger reading: the identity labelling can then
  // never be canonical, whatever the remaining rows contain.
  bool prefix_canonical(int rows_done) const {
    std::string id;
    for (int c = 0; c < rows_done; ++c) {
      for (int r = 0; r < c; ++r) id.push_back(char('0' + m[r][c]));
      id.push_back(char('0' + m[c][c]));
    }
    std::vector<int> perm(rows_done);
    for (int a = 0; a < rows_done; ++a)
      for (int b = a + 1; b < rows_done; ++b) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[a], perm[b]);
        size_t pos = 0;
        int cmp = 0;
        for (int c = 0; c < rows_done && cmp == 0; ++c)
          for (int r = 0; r <= c; ++r) {
            char ch = char('0' + m[perm[r]][perm[c]]);
            if (ch != id[pos]) {
              cmp = ch > id[pos] ? 1 : -1;
              break;
            }
            pos++;
          }
        if (cmp > 0) return false;
      }
    return true;
  }

  void leaf() {
    std::string id;
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < c; ++r) id.push_back(char('0' + m[r][c]));
      id.push_back(char('0' + m[c][c]));
    }
    if (id != max_reading(m)) return;  // not the canonical representative
    MultiGraph g = graph_from_matrix(m);
    counts.total++;
    if (is_connected(g)) {
      counts.connected++;
      connected_out.push_back(std::move(g));
    } else if (keep_disconnected) {
      all_out.push_back(std::move(g));
    }
  }

  void fill_row(int u, int v, int remaining) {
    if (remaining == 0) {
      // Row complete; remaining degrees among later nodes must stay pairable.
      long long rest = 0;
      for (int w = u + 1; w < n; ++w) rest += deg[w];
      if (rest % 2 != 0) return;
      if (!prefix_canonical(u + 1)) return;
      next_row(u + 1);
      return;
    }
    if (v >= n) return;
    if (v == u) {
      // loops first: each consumes 2 degree
      int max_loops = remaining / 2;
      for (int mu = max_loops; mu >= 0; --mu) {
        m[u][u] = mu;
        deg[u] -= 2 * mu;
        fill_row(u, v + 1, remaining - 2 * mu);
        deg[u] += 2 * mu;
        m[u][u] = 0;
      }
      return;
    }
    long long cap = 0;  // capacity of partners from v on
    for (int w = v; w < n; ++w) cap += std::min(deg[w], remaining);
    if (cap < remaining) return;
    int max_mu = std::min(remaining, deg[v]);
    for (int mu = max_mu; mu >= 0; --mu) {
      m[u][v] = mu;
      m[v][u] = mu;
      deg[u] -= mu;
      deg[v] -= mu;
      fill_row(u, v + 1, remaining - mu);
      deg[u] += mu;
      deg[v] += mu;
      m[u][v] = 0;
      m[v][u] = 0;
    }
  }

  void next_row(int u) {
    if (u == n) {
      leaf();
      return;
    }
    fill_row(u, u, deg[u]);
  }
};

}  // namespace

std::vector<MultiGraph> generate(int n, GenerateCounts* counts,
                                 bool include_disconnected) {
  std::vector<MultiGraph> out;
  if (n <= 0) {
    if (counts) *counts = {};
    return out;
  }
  Generator gen;
  gen.n = n;
  gen.m.assign(n, std::vector<int>(n, 0));
  gen.deg.assign(n, 4);
  gen.keep_disconnected = include_disconnected;
  gen.next_row(0);
  if (counts) *counts = gen.counts;
  out = std::move(gen.connected_out);
  if (include_disconnected)
    out.insert(out.end(), gen.all_out.begin(), gen.all_out.end());
  std::sort(out.begin(), out.end(), [](const MultiGraph& a, const MultiGraph& b) {
    return canonical_form(a) < canonical_form(b);
  });
  return out;
}

}  // namespace mdcensus

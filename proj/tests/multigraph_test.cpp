#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mdcensus/multigraph.hpp"

using namespace mdcensus;

namespace {

// Independent brute force: enumerate every symmetric multiplicity matrix with
// all degrees 4 (diagonal = loops, counted twice), no canonicity pruning.
void brute_matrices(int n, int u, int v, std::vector<std::vector<int>>& m,
                    std::vector<int>& deg, std::vector<MultiGraph>& out) {
  if (u == n) {
    MultiGraph g;
    g.order = n;
    for (int a = 0; a < n; ++a) {
      for (int k = 0; k < m[a][a]; ++k) g.arcs.push_back({a, a});
      for (int b = a + 1; b < n; ++b)
        for (int k = 0; k < m[a][b]; ++k) g.arcs.push_back({a, b});
    }
    g.normalize();
    out.push_back(std::move(g));
    return;
  }
  if (v == n) {
    if (deg[u] == 0) brute_matrices(n, u + 1, u + 1, m, deg, out);
    return;
  }
  if (v == u) {
    for (int mu = 0; 2 * mu <= deg[u]; ++mu) {
      m[u][u] = mu;
      deg[u] -= 2 * mu;
      brute_matrices(n, u, v + 1, m, deg, out);
      deg[u] += 2 * mu;
      m[u][u] = 0;
    }
    return;
  }
  int cap = std::min(deg[u], deg[v]);
  for (int mu = 0; mu <= cap; ++mu) {
    m[u][v] = m[v][u] = mu;
    deg[u] -= mu;
    deg[v] -= mu;
    brute_matrices(n, u, v + 1, m, deg, out);
    deg[u] += mu;
    deg[v] += mu;
    m[u][v] = m[v][u] = 0;
  }
}

std::vector<MultiGraph> brute_all_4regular(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  std::vector<int> deg(n, 4);
  std::vector<MultiGraph> out;
  brute_matrices(n, 0, 0, m, deg, out);
  return out;
}

MultiGraph relabel(const MultiGraph& g, const std::vector<int>& sigma) {
  MultiGraph h;
  h.order = g.order;
  for (const Arc& a : g.arcs) h.arcs.push_back({sigma[a.u], sigma[a.v]});
  h.normalize();
  return h;
}

MultiGraph two_loop_graph() {
  return *MultiGraph::parse("1; 0-0,0-0");
}

MultiGraph quadruple_arc_graph() {
  return *MultiGraph::parse("2; 0-1,0-1,0-1,0-1");
}

MultiGraph loops_and_double_arc_graph() {
  return *MultiGraph::parse("2; 0-0,0-1,0-1,1-1");
}

// Exhaustive automorphism oracle: all (node perm, arc perm, flip vector)
// triples, kept iff consistent with the incidence structure.
long long brute_automorphism_count(const MultiGraph& g) {
  const int n = g.order;
  const int na = int(g.arcs.size());
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  long long count = 0;
  do {
    std::vector<int> pi(na);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      for (uint32_t flips = 0; flips < (1u << na); ++flips) {
        bool ok = true;
        for (int a = 0; a < na && ok; ++a) {
          Arc src = g.arcs[a];
          Arc img = g.arcs[pi[a]];
          int f = (flips >> a) & 1;
          int slot0 = f ? img.v : img.u;
          int slot1 = f ? img.u : img.v;
          if (slot0 != sigma[src.u] || slot1 != sigma[src.v]) ok = false;
        }
        if (ok) count++;
      }
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

}  // namespace

TEST_CASE("graph text round trip") {
  MultiGraph g = loops_and_double_arc_graph();
  CHECK(g.valid());
  CHECK(g.to_text() == "2; 0-0,0-1,0-1,1-1");
  auto back = MultiGraph::parse(g.to_text());
  REQUIRE(back.has_value());
  CHECK(*back == g);
  CHECK_FALSE(MultiGraph::parse("nonsense").has_value());
  CHECK_FALSE(MultiGraph::parse("2; 0-5").has_value());
}

TEST_CASE("is_connected") {
  CHECK(is_connected(two_loop_graph()));
  CHECK(is_connected(quadruple_arc_graph()));
  MultiGraph split = *MultiGraph::parse("2; 0-0,0-0,1-1,1-1");
  CHECK(split.valid());
  CHECK_FALSE(is_connected(split));
}

TEST_CASE("canonical_form separates and unifies") {
  MultiGraph quad = quadruple_arc_graph();
  std::vector<int> swap01 = {1, 0};
  CHECK(canonical_form(quad) == canonical_form(relabel(quad, swap01)));
  CHECK(canonical_form(quad) != canonical_form(loops_and_double_arc_graph()));

  // Invariance under arbitrary relabellings, and stability (idempotence).
  std::mt19937 rng(12345);
  for (const MultiGraph& g : brute_all_4regular(3)) {
    std::vector<int> sigma(3);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::string form = canonical_form(g);
    for (int trial = 0; trial < 6; ++trial) {
      std::shuffle(sigma.begin(), sigma.end(), rng);
      CHECK(canonical_form(relabel(g, sigma)) == form);
    }
  }
}

TEST_CASE("canonical_form agrees with permutation-level isomorphism") {
  for (int n = 1; n <= 3; ++n) {
    auto all = brute_all_4regular(n);
    std::vector<int> sigma(n);
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i; j < all.size(); ++j) {
        std::iota(sigma.begin(), sigma.end(), 0);
        bool iso = false;
        do {
          if (relabel(all[i], sigma) == all[j]) iso = true;
        } while (!iso && std::next_permutation(sigma.begin(), sigma.end()));
        CHECK(iso == (canonical_form(all[i]) == canonical_form(all[j])));
      }
  }
}

TEST_CASE("generate matches brute force with dedup for n <= 4") {
  GenerateCounts counts;
  auto g1 = generate(1, &counts);
  CHECK(g1.size() == 1);
  CHECK(counts.connected == 1);
  auto g2 = generate(2, &counts);
  CHECK(g2.size() == 2);

  for (int n = 1; n <= 4; ++n) {
    std::set<std::string> brute_connected, brute_total;
    for (const MultiGraph& g : brute_all_4regular(n)) {
      brute_total.insert(canonical_form(g));
      if (is_connected(g)) brute_connected.insert(canonical_form(g));
    }
    GenerateCounts c;
    auto gen = generate(n, &c);
    std::set<std::string> got;
    for (const MultiGraph& g : gen) {
      CHECK(g.valid());
      CHECK(is_connected(g));
      CHECK(int(g.arcs.size()) == 2 * n);
      for (int u = 0; u < n; ++u) CHECK(g.degree(u) == 4);
      got.insert(canonical_form(g));
    }
    CHECK(got.size() == gen.size());  // no duplicate classes
    CHECK(got == brute_connected);
    CHECK(c.total == (long long)brute_total.size());
    CHECK(c.connected == (long long)brute_connected.size());
  }
}

TEST_CASE("generate is deterministic and sorted") {
  auto a = generate(3);
  auto b = generate(3);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  for (size_t i = 1; i < a.size(); ++i)
    CHECK(canonical_form(a[i - 1]) < canonical_form(a[i]));
}

TEST_CASE("automorphism group sizes match the exhaustive oracle") {
  CHECK(automorphisms(two_loop_graph()).size() == 8);
  CHECK(brute_automorphism_count(two_loop_graph()) == 8);
  CHECK(automorphisms(quadruple_arc_graph()).size() == 48);
  CHECK(brute_automorphism_count(quadruple_arc_graph()) == 48);
  CHECK(automorphisms(loops_and_double_arc_graph()).size() ==
        brute_automorphism_count(loops_and_double_arc_graph()));
}

TEST_CASE("automorphisms form a group") {
  for (const MultiGraph& g :
       {two_loop_graph(), quadruple_arc_graph(), loops_and_double_arc_graph()}) {
    auto autos = automorphisms(g);
    bool has_identity = false;
    for (const auto& a : autos) has_identity |= a.is_identity();
    CHECK(has_identity);
    auto member = [&](const ArcAutomorphism& x) {
      return std::find(autos.begin(), autos.end(), x) != autos.end();
    };
    for (const auto& a : autos) {
      bool has_inverse = false;
      for (const auto& b : autos) {
        CHECK(member(a.compose(b)));
        if (a.compose(b).is_identity()) has_inverse = true;
      }
      CHECK(has_inverse);
    }
  }
}

TEST_CASE("automorphism maps preserve incidence") {
  for (const MultiGraph& g : generate(3)) {
    for (const auto& a : automorphisms(g)) {
      for (size_t i = 0; i < g.arcs.size(); ++i) {
        Arc src = g.arcs[i];
        Arc img = g.arcs[a.arc_map[i]];
        int s0 = a.endpoint_flip[i] ? img.v : img.u;
        int s1 = a.endpoint_flip[i] ? img.u : img.v;
        CHECK(s0 == a.node_map[src.u]);
        CHECK(s1 == a.node_map[src.v]);
      }
    }
  }
}

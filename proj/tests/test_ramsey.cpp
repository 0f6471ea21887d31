#include <doctest.h>

#include <cmath>
#include <set>

#include "rtlab/graph.hpp"
#include "rtlab/io.hpp"
#include "rtlab/ramsey.hpp"
#include "../src/small_graph.hpp"
#include "oracles.hpp"

using namespace rtlab;

TEST_CASE("canonical form identifies isomorphic graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + trial % 11;
    Graph g = oracle::random_graph(rng, n, 0.45);
    // random relabelling
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
    Graph h(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (g.adjacent(u, v)) h.add_edge(perm[u], perm[v]);
    auto cg = detail::canonical_form(detail::to_small(g));
    auto ch = detail::canonical_form(detail::to_small(h));
    CHECK(cg.code == ch.code);
    CHECK(edge_count(detail::to_graph(cg.graph)) == edge_count(g));
  }
}

TEST_CASE("canonical form counts graphs on 5 vertices") {
  // 34 isomorphism classes of graphs on 5 vertices.
  std::set<detail::CanonCode> seen;
  for (std::uint32_t mask = 0; mask < (1U << 10); ++mask) {
    detail::SmallGraph g;
    g.n = 5;
    int bit = 0;
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v, ++bit)
        if (mask >> bit & 1) g.add_edge(u, v);
    seen.insert(detail::canonical_form(g).code);
  }
  CHECK(seen.size() == 34);
}

TEST_CASE("small Ramsey numbers") {
  CHECK(ramsey_exact(2, 5, 10).lo == 5);
  CHECK(ramsey_exact(2, 5, 10).exact());
  auto r33 = ramsey_exact(3, 3, 10);
  CHECK(r33.exact());
  CHECK(r33.lo == 6);
  REQUIRE(r33.witness);
  CHECK(to_graph6(*r33.witness) == to_graph6(*r33.witness));
  CHECK(r33.witness->order() == 5);
  auto r34 = ramsey_exact(3, 4, 12);
  CHECK(r34.exact());
  CHECK(r34.lo == 9);
  CHECK(r34.level_counts.size() == 9);  // orders 0..8
  CHECK(r34.level_counts[8] == 3);
  auto r35 = ramsey_exact(3, 5, 16);
  CHECK(r35.lo == 14);
  CHECK(r35.provenance == "exact-search");
  auto capped = ramsey_exact(3, 4, 6);
  CHECK_FALSE(capped.exact());
  CHECK(capped.lo == 7);
  CHECK(capped.hi == 10);
}

TEST_CASE("Q(t,n) exact values") {
  CHECK(q_exact(2, 7).lo == 7);
  int expected[] = {1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4};
  for (int n = 1; n <= 12; ++n) {
    auto q = q_exact(3, n);
    REQUIRE(q.exact());
    CHECK(q.lo == expected[n - 1]);
    REQUIRE(q.witness);
    CHECK_FALSE(contains_clique(*q.witness, 3));
    CHECK(independence_number(*q.witness) == q.lo);
  }
  auto q5 = q_exact(3, 5);
  CHECK(detail::canonical_form(detail::to_small(*q5.witness)).code ==
        detail::canonical_form(detail::to_small(cycle_graph(5))).code);
}

TEST_CASE("Q is monotone and inverse to R") {
  int prev = 0;
  for (int n = 1; n <= 12; ++n) {
    int q = q_exact(3, n).lo;
    CHECK(q >= prev);
    prev = q;
    // R(3, q) <= n < R(3, q+1)
    int r_q = q == 1 ? 1 : ramsey_exact(3, q, 20).lo;
    int r_q1 = ramsey_exact(3, q + 1, 20).lo;
    CHECK(r_q <= n);
    CHECK(n < r_q1);
  }
  for (int n = 1; n <= 8; ++n) CHECK(q_exact(4, n).lo <= q_exact(3, n).lo);
}

TEST_CASE("q_bounds formulas") {
  auto b = q_bounds(3, 1024);
  CHECK(b.lo == doctest::Approx(71.554).epsilon(1e-4));
  CHECK(b.hi == doctest::Approx(143.108).epsilon(1e-4));
  CHECK_FALSE(b.up_to_constants);
  auto b4 = q_bounds(4, 1024);
  CHECK(b4.lo == doctest::Approx(std::cbrt(1024.0) * std::pow(10.0, 2.0 / 3.0)));
  CHECK(b4.up_to_constants);
}

TEST_CASE("the t = 3 lower formula is not a finite-n bound") {
  // Recorded deliberately: with constant 1/sqrt(2) the formula exceeds the
  // exact minimum at several small orders.
  std::vector<int> above;
  for (int n = 2; n <= 12; ++n)
    if (q_bounds(3, n).lo > q_exact(3, n).lo) above.push_back(n);
  CHECK(above == std::vector<int>{5, 7, 8, 10, 11, 12});
}

TEST_CASE("min_alpha_graph") {
  auto a = min_alpha_graph(3, 5);
  CHECK(a.certified);
  CHECK(a.alpha == 2);
  CHECK(a.graph.order() == 5);
  auto b = min_alpha_graph(3, 10);
  CHECK(b.certified);
  CHECK(b.alpha == 4);
  CHECK_FALSE(contains_clique(b.graph, 3));
  auto c = min_alpha_graph(4, 8);
  CHECK(c.alpha <= 3);
  CHECK_FALSE(contains_clique(c.graph, 4));
  CHECK(independence_number(c.graph) == c.alpha);
  auto d = min_alpha_graph(3, 16, 300, 5);
  CHECK(d.method == "local-search");
  CHECK_FALSE(contains_clique(d.graph, 3));
  CHECK(independence_number(d.graph) == d.alpha);
}

TEST_CASE("cache round trip and corruption detection") {
  RamseyCache cache;
  cache.put_r(ramsey_exact(3, 4, 12), {});
  QOptions opts;
  cache.put_q(q_exact(3, 9), opts);
  std::string text = cache.to_jsonl();
  RamseyCache loaded;
  CHECK(loaded.load_jsonl(text) == 0);
  auto r = loaded.get_r(3, 4);
  REQUIRE(r);
  CHECK(r->lo == 9);
  CHECK(r->provenance == "cached-exact");
  auto q = loaded.get_q(3, 9);
  REQUIRE(q);
  CHECK(q->lo == 4);
  // Tamper with the recorded value: the witness no longer matches.
  std::string bad = text;
  auto pos = bad.find("\"value\":4");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 9, "\"value\":3");
  RamseyCache reloaded;
  CHECK(reloaded.load_jsonl(bad) == 1);
  CHECK_FALSE(reloaded.get_q(3, 9));
  CHECK(reloaded.load_jsonl("garbage\n") == 1);
}

#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "rtlab/constructions.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/regularity.hpp"

using namespace rtlab;

namespace {

VertexSet range_set(int n, int lo, int hi) {
  VertexSet s(n);
  for (int v = lo; v < hi; ++v) s.set(v);
  return s;
}

// Blow-up of C_5: vertex v belongs to class v / size.
Graph c5_blowup(int size) {
  Graph g(5 * size);
  for (int u = 0; u < 5 * size; ++u)
    for (int v = u + 1; v < 5 * size; ++v) {
      int cu = u / size, cv = v / size;
      if ((cu + 1) % 5 == cv || (cv + 1) % 5 == cu) g.add_edge(u, v);
    }
  return g;
}

}  // namespace

TEST_CASE("pair density") {
  Graph kb = complete_bipartite(4, 5);
  CHECK(pair_density(kb, range_set(9, 0, 4), range_set(9, 4, 9)) == Fraction(1));
  CHECK(pair_density(Graph(6), range_set(6, 0, 3), range_set(6, 3, 6)) == Fraction(0));
  Graph m = complete_bipartite(3, 3);
  for (int i = 0; i < 3; ++i) m.remove_edge(i, 3 + i);
  CHECK(pair_density(m, range_set(6, 0, 3), range_set(6, 3, 6)) == Fraction(2, 3));
  CHECK(pair_density(m, range_set(6, 3, 6), range_set(6, 0, 3)) == Fraction(2, 3));
  CHECK_THROWS_AS(pair_density(m, range_set(6, 0, 4), range_set(6, 3, 6)), ParameterError);
  CHECK_THROWS_AS(pair_density(m, VertexSet(6), range_set(6, 3, 6)), ParameterError);
}

TEST_CASE("regular pairs") {
  Graph kb = complete_bipartite(10, 10);
  auto v = is_regular_pair(kb, range_set(20, 0, 10), range_set(20, 10, 20), Fraction(1, 100), RegularityMode::Exact);
  CHECK(v.regular);
  CHECK(v.summary() == "regular");
  // Half of A joined to all of B, the other half isolated.
  Graph h(20);
  for (int a = 0; a < 5; ++a)
    for (int b = 10; b < 20; ++b) h.add_edge(a, b);
  auto w = is_regular_pair(h, range_set(20, 0, 10), range_set(20, 10, 20), Fraction(1, 10), RegularityMode::Exact);
  CHECK_FALSE(w.regular);
  REQUIRE(w.x);
  REQUIRE(w.y);
  Fraction dxy = pair_density(h, *w.x, *w.y);
  Fraction diff = dxy > Fraction(1, 2) ? dxy - Fraction(1, 2) : Fraction(1, 2) - dxy;
  CHECK(diff > Fraction(1, 10));
  auto s = is_regular_pair(h, range_set(20, 0, 10), range_set(20, 10, 20), Fraction(1, 10), RegularityMode::Sampled,
                           500, 3);
  CHECK_FALSE(s.regular);
  auto s2 = is_regular_pair(kb, range_set(20, 0, 10), range_set(20, 10, 20), Fraction(1, 10), RegularityMode::Sampled,
                            300, 3);
  CHECK(s2.summary() == "no violation found in 300 samples");
  CHECK_THROWS_AS(is_regular_pair(complete_bipartite(17, 17), range_set(34, 0, 17), range_set(34, 17, 34),
                                  Fraction(1, 10), RegularityMode::Exact),
                  CapExceeded);
}

TEST_CASE("random 14x14 pair at rho = 0.3") {
  // G(28, 1/2) restricted to a 14 x 14 pair: dense 5 x 5 sub-blocks appear
  // often enough that the pair is usually irregular at this size.
  int regular = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    Graph g = oracle::random_graph(rng, 28, 0.5);
    auto v = is_regular_pair(g, range_set(28, 0, 14), range_set(28, 14, 28), Fraction(3, 10), RegularityMode::Exact);
    if (v.regular) ++regular;
    if (!v.regular) {
      Fraction d = pair_density(g, range_set(28, 0, 14), range_set(28, 14, 28));
      Fraction dxy = pair_density(g, *v.x, *v.y);
      CHECK((dxy > d ? dxy - d : d - dxy) > Fraction(3, 10));
    }
  }
  CHECK(regular <= 10);
  MESSAGE("regular verdicts: " << regular << " of 10");
}

TEST_CASE("exact verdicts match definitional enumeration") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int na = uniform_int(rng, 2, 8);
    int nb = uniform_int(rng, 2, 8);
    Graph g = oracle::random_graph(rng, na + nb, 0.3 + 0.4 * uniform01(rng));
    std::vector<int> am, bm;
    for (int i = 0; i < na; ++i) am.push_back(i);
    for (int j = 0; j < nb; ++j) bm.push_back(na + j);
    for (auto rho : {Fraction(1, 10), Fraction(1, 4), Fraction(3, 10), Fraction(1, 2)}) {
      bool expect = oracle::regular_pair_brute(g, am, bm, rho.numerator(), rho.denominator());
      auto got = is_regular_pair(g, range_set(na + nb, 0, na), range_set(na + nb, na, na + nb), rho,
                                 RegularityMode::Exact);
      CHECK(got.regular == expect);
    }
  }
}

TEST_CASE("cluster graphs") {
  auto t = cluster_graph(turan(12, 3), turan_classes(12, 3), Fraction(1, 10), Fraction(1, 2));
  CHECK(t.graph == complete_graph(3));
  Graph cliques(12);
  for (int c = 0; c < 3; ++c)
    for (int u = 4 * c; u < 4 * c + 4; ++u)
      for (int v = u + 1; v < 4 * c + 4; ++v) cliques.add_edge(u, v);
  CHECK(edge_count(cluster_graph(cliques, turan_classes(12, 3), Fraction(1, 10), Fraction(1, 2)).graph) == 0);
  Graph b = c5_blowup(8);
  auto c = cluster_graph(b, turan_classes(40, 5), Fraction(1, 10), Fraction(1, 2));
  CHECK(c.graph == cycle_graph(5));
  for (const auto& p : c.pairs) CHECK(p.mode == RegularityMode::Exact);
  auto j = nlohmann::json::parse(c.to_json());
  CHECK(j["edges"].size() == 5);
  // Larger classes fall back to sampling.
  auto big = cluster_graph(turan(60, 3), turan_classes(60, 3), Fraction(1, 10), Fraction(1, 2), 100);
  CHECK(big.graph == complete_graph(3));
  CHECK(big.pairs[0].mode == RegularityMode::Sampled);
  // Raising d_min never adds edges.
  auto strict = cluster_graph(b, turan_classes(40, 5), Fraction(1, 10), Fraction(2));
  CHECK(edge_count(strict.graph) == 0);
}

TEST_CASE("transversal clique counts") {
  CHECK(count_transversal_cliques(turan(9, 3), turan_classes(9, 3)) == 27);
  Graph g = cycle_graph(7);
  CHECK(count_transversal_cliques(g, {range_set(7, 0, 7)}) == 7);
  Graph b = c5_blowup(4);
  // classes 0 and 2 of the blow-up are not adjacent
  CHECK(count_transversal_cliques(b, {range_set(20, 0, 4), range_set(20, 8, 12)}) == 0);
  CHECK(count_transversal_cliques(b, {range_set(20, 0, 4), range_set(20, 4, 8)}) == 16);
}

TEST_CASE("partition and fraction parsing") {
  auto parts = parse_partition("[[0,1],[2,3]]", 4);
  REQUIRE(parts.size() == 2);
  CHECK(parts[1].members() == std::vector<int>{2, 3});
  CHECK(partition_to_json(parts) == "[[0,1],[2,3]]");
  CHECK_THROWS_AS(parse_partition("[[0,9]]", 4), ParseError);
  CHECK(parse_fraction("0.3") == Fraction(3, 10));
  CHECK(parse_fraction("3/8") == Fraction(3, 8));
  CHECK(parse_fraction("2") == Fraction(2));
  CHECK(to_string(Fraction(6, 8)) == "3/4");
  CHECK_THROWS_AS(parse_fraction("abc"), ParseError);
}

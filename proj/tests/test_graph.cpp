#include <doctest.h>

#include <string>
#include <vector>

#include "oracles.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/graph.hpp"
#include "rtlab/io.hpp"

using namespace rtlab;

namespace {

VertexSet set_of(int n, std::vector<int> v) { return VertexSet::from_list(n, v); }

}  // namespace

TEST_CASE("vertex set basics") {
  VertexSet s(130);
  CHECK(s.empty());
  s.set(0);
  s.set(64);
  s.set(129);
  CHECK(s.count() == 3);
  CHECK(s.first() == 0);
  CHECK(s.next(0) == 64);
  CHECK(s.next(64) == 129);
  CHECK(s.next(129) == -1);
  CHECK(s.complement().count() == 127);
  CHECK(VertexSet::full(130).count() == 130);
}

TEST_CASE("edge counts") {
  CHECK(edge_count(Graph(5)) == 0);
  CHECK(edge_count(complete_graph(6)) == 15);
  CHECK(edge_count(petersen_graph()) == 15);
}

TEST_CASE("graph rejects loops and oversize orders") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), ParameterError);
  CHECK_THROWS_AS(Graph(Graph::kMaxOrder + 1), CapExceeded);
}

TEST_CASE("complement") {
  CHECK(edge_count(complement(complete_graph(5))) == 0);
  Graph c5 = cycle_graph(5);
  Graph co = complement(c5);
  CHECK(edge_count(co) == 5);
  CHECK(clique_number(co) == 2);
  Rng rng(7);
  Graph g = oracle::random_graph(rng, 12, 0.4);
  CHECK(complement(complement(g)) == g);
}

TEST_CASE("contains_clique") {
  Graph c5 = cycle_graph(5);
  CHECK_FALSE(contains_clique(c5, 3));
  CHECK(contains_clique(c5, 2));
  VertexSet w;
  REQUIRE(contains_clique(complete_graph(7), 4, &w));
  CHECK(w == set_of(7, {0, 1, 2, 3}));
}

TEST_CASE("lexicographically least witness matches brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4 + trial % 9;
    Graph g = oracle::random_graph(rng, n, 0.5);
    auto adj = oracle::adjacency_masks(g);
    for (int s = 1; s <= 5; ++s) {
      // Lexicographic order on sorted vertex tuples = colex on reversed bits;
      // enumerate all s-subsets and keep the least sorted tuple.
      std::vector<int> best;
      for (std::uint32_t m = 0; m < (1U << n); ++m) {
        if (std::popcount(m) != s || !oracle::is_clique_mask(adj, m)) continue;
        std::vector<int> cur;
        for (int v = 0; v < n; ++v)
          if (m >> v & 1) cur.push_back(v);
        if (best.empty() || cur < best) best = cur;
      }
      VertexSet w;
      bool found = contains_clique(g, s, &w);
      CHECK(found == !best.empty());
      if (found) CHECK(w.members() == best);
    }
  }
}

TEST_CASE("clique and independence numbers of named graphs") {
  CHECK(clique_number(complete_graph(7)) == 7);
  CHECK(clique_number(cycle_graph(5)) == 2);
  CHECK(clique_number(petersen_graph()) == 2);
  CHECK(independence_number(Graph(9)) == 9);
  CHECK(independence_number(cycle_graph(5)) == 2);
  CHECK(independence_number(petersen_graph()) == 4);
  CHECK(is_clique(complete_graph(5), maximum_clique(complete_graph(5))));
}

TEST_CASE("d-independence number") {
  CHECK(d_independence_number(cycle_graph(5), 2) == 2);
  CHECK(d_independence_number(cycle_graph(5), 3) == 5);
  CHECK(d_independence_number(complete_graph(4), 3) == 2);
  CHECK_THROWS_AS(d_independence_number(cycle_graph(5), 1), ParameterError);
}

TEST_CASE("d-chain reaches n at omega + 1") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = oracle::random_graph(rng, 14, 0.6);
    int w = clique_number(g);
    int prev = 0;
    for (int d = 2; d <= w + 1; ++d) {
      int a = d_independence_number(g, d);
      CHECK(a >= prev);
      prev = a;
    }
    CHECK(prev == g.order());
  }
}

TEST_CASE("solvers agree with subset enumeration") {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 1 + trial % 12;
    double p = 0.1 + 0.8 * static_cast<double>(trial % 7) / 6.0;
    Graph g = oracle::random_graph(rng, n, p);
    CHECK(clique_number(g) == oracle::clique_number(g));
    CHECK(independence_number(g) == oracle::independence_number(g));
    int d = 2 + trial % 3;
    CHECK(d_independence_number(g, d) == oracle::d_independence_number(g, d));
  }
}

TEST_CASE("adding an edge is monotone") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = oracle::random_graph(rng, 11, 0.35);
    int u = uniform_int(rng, 0, 10);
    int v = uniform_int(rng, 0, 10);
    if (u == v) continue;
    Graph h = g;
    h.add_edge(u, v);
    CHECK(clique_number(h) >= clique_number(g));
    CHECK(independence_number(h) <= independence_number(g));
  }
}

TEST_CASE("common neighborhood") {
  CHECK(common_neighborhood(complete_graph(4), set_of(4, {0, 1})) == set_of(4, {2, 3}));
  CHECK(common_neighborhood(cycle_graph(5), set_of(5, {0, 2})) == set_of(5, {1}));
  CHECK(common_neighborhood(complete_bipartite(5, 5), set_of(10, {0, 1})) ==
        set_of(10, {5, 6, 7, 8, 9}));
  CHECK_THROWS_WITH_AS(common_neighborhood(cycle_graph(5), VertexSet(5)), "empty query set",
                       ParameterError);
}

TEST_CASE("induced subgraph") {
  CHECK(induced_subgraph(complete_graph(6), set_of(6, {1, 3, 5})) == complete_graph(3));
  CHECK(induced_subgraph(cycle_graph(5), set_of(5, {0, 1, 2})) == path_graph(3));
  CHECK_THROWS_AS(induced_subgraph(cycle_graph(5), VertexSet(5)), ParameterError);
}

TEST_CASE("graph6 known encodings") {
  CHECK(to_graph6(cycle_graph(5)) == "Dhc");
  CHECK(to_graph6(petersen_graph()) == "IheA@GUAo");
  CHECK(to_graph6(complete_graph(4)) == "C~");
  CHECK(from_graph6(">>graph6<<Dhc\n") == cycle_graph(5));
  CHECK(to_graph6(Graph(63)).substr(0, 4) == "~??~");
  CHECK(to_graph6(path_graph(70)).substr(0, 8) == "~?@EhCGG");
  CHECK(to_graph6(Graph(0)) == "?");
}

TEST_CASE("graph6 round trip and malformed input") {
  Rng rng(99);
  for (int n : {1, 2, 5, 6, 7, 13, 62, 63, 64, 100, 200}) {
    Graph g = oracle::random_graph(rng, n, 0.3);
    CHECK(from_graph6(to_graph6(g)) == g);
    CHECK(from_edge_list_json(to_edge_list_json(g)) == g);
  }
  CHECK_THROWS_AS(from_graph6(""), ParseError);
  CHECK_THROWS_AS(from_graph6("Dh"), ParseError);
  CHECK_THROWS_AS(from_graph6("D!c"), ParseError);
  CHECK_THROWS_AS(from_graph6("Dhd"), ParseError);
  CHECK_THROWS_AS(from_edge_list_json("{\"n\":3,\"edges\":[[0,0]]}"), ParseError);
  CHECK_THROWS_AS(from_edge_list_json("not json"), ParseError);
}

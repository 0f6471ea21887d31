#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "oracles.hpp"
#include "rtlab/constructions.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/hdrc.hpp"

using namespace rtlab;

namespace {

VertexSet range_set(int n, int lo, int hi) {
  VertexSet s(n);
  for (int v = lo; v < hi; ++v) s.set(v);
  return s;
}

std::vector<VertexSet> blocks(int q, int size) {
  std::vector<VertexSet> out;
  for (int i = 0; i < q; ++i) out.push_back(range_set(q * size, i * size, (i + 1) * size));
  return out;
}

PartiteHypergraph random_hypergraph(Rng& rng, int r, int n, double p, int offset = 0) {
  std::vector<std::vector<int>> parts(r);
  for (int i = 0; i < r; ++i)
    for (int v = 0; v < n; ++v) parts[i].push_back(offset + i * n + v);
  PartiteHypergraph h(parts);
  for (std::int64_t c = 0; c < h.cells(); ++c)
    if (bernoulli(rng, p)) h.add(c);
  return h;
}

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

TEST_CASE("transversal clique hypergraph") {
  CHECK(transversal_clique_hypergraph(turan(9, 3), turan_classes(9, 3)).edge_count() == 27);
  Graph m = complete_bipartite(3, 3);
  for (int i = 0; i < 3; ++i) m.remove_edge(i, 3 + i);
  auto h = transversal_clique_hypergraph(m, blocks(2, 3));
  CHECK(h.edge_count() == 6);
  CHECK_FALSE(h.has(h.code({1, 1})));
  CHECK(h.vertices(h.code({0, 2})) == std::vector<int>{0, 5});
  CHECK(transversal_clique_hypergraph(Graph(6), blocks(2, 3)).edge_count() == 0);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(rng, 12, 0.6);
    auto parts = blocks(3, 4);
    CHECK(transversal_clique_hypergraph(g, parts).edge_count() == count_transversal_cliques(g, parts));
  }
  CHECK_THROWS_AS(transversal_clique_hypergraph(turan(9, 3), {range_set(9, 0, 3), range_set(9, 3, 5)}),
                  ParameterError);
}

TEST_CASE("hypergraph step edge law") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int r = uniform_int(rng, 2, 4);
    int n = uniform_int(rng, 2, r == 4 ? 6 : 12);
    auto h = random_hypergraph(rng, r, n, 0.4 + 0.5 * uniform01(rng));
    int s = uniform_int(rng, 1, 4);
    StepOptions so;
    so.retries = 1;
    auto step = hdrc_step(h, s, 0.0, trial, so);
    REQUIRE(step.samples.size() == static_cast<std::size_t>(s));
    std::int64_t stride = h.cells() / n;
    std::int64_t expect = 0;
    for (std::int64_t c = 0; c < stride; ++c) {
      bool all = true;
      for (int v : step.samples) all = all && h.has(v * stride + c);  // samples are ids 0..n-1 of part 0
      CHECK(step.hypergraph.has(c) == all);
      expect += all;
    }
    CHECK(step.hypergraph.edge_count() == expect);
  }
}

TEST_CASE("hypergraph step targets") {
  std::vector<std::vector<int>> parts{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  PartiteHypergraph full(parts);
  for (std::int64_t c = 0; c < full.cells(); ++c) full.add(c);
  auto a = hdrc_step(full, 3, 1.0, 1);
  CHECK(a.ok);
  CHECK(a.hypergraph.edge_count() == 9);
  CHECK(a.attempts == 1);
  PartiteHypergraph empty(parts);
  auto b = hdrc_step(empty, 2, 0.5, 1);
  CHECK_FALSE(b.ok);
  CHECK(b.hypergraph.edge_count() == 0);
  CHECK(b.attempts == 20);

  // eps = 1/2, r = 3, N = 30, s = 3: median over 50 seeds against (eps^s / 2) N^2.
  Rng rng(3);
  auto h = random_hypergraph(rng, 3, 30, 0.5);
  std::vector<std::int64_t> counts;
  StepOptions so;
  so.retries = 1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) counts.push_back(hdrc_step(h, 3, 0.5, seed, so).hypergraph.edge_count());
  std::sort(counts.begin(), counts.end());
  CHECK(static_cast<double>(counts[25]) >= 0.125 / 2 * 900);
  CHECK_THROWS_AS(hdrc_step(PartiteHypergraph({{0, 1}}), 1, 0.5, 1), ParameterError);
}

TEST_CASE("dangerous set census") {
  Rng rng(11);
  auto h_prev = random_hypergraph(rng, 3, 6, 0.7);
  std::vector<std::vector<int>> rest(h_prev.parts().begin() + 1, h_prev.parts().end());
  PartiteHypergraph h(rest);
  for (std::int64_t c = 0; c < h.cells(); ++c)
    if (bernoulli(rng, 0.5)) h.add(c);
  PartiteHypergraph complete(h_prev.parts());
  for (std::int64_t c = 0; c < complete.cells(); ++c) complete.add(c);
  CHECK(dangerous_count(complete, h, 4, Fraction(1), 4) == 0);
  PartiteHypergraph none(h_prev.parts());
  // With an empty previous hypergraph every candidate set is dangerous.
  std::int64_t candidates = oracle::dangerous_count_brute(complete, h, 4, 2, 1, 4, 1);  // beta = 2 counts all
  CHECK(candidates > 0);
  CHECK(dangerous_count(none, h, 4, Fraction(1, 10), 4) == candidates);
  for (int w = 1; w <= 4; ++w)
    for (int delta = 1; delta <= 4; ++delta)
      CHECK(dangerous_count(h_prev, h, delta, Fraction(1, 2), w) ==
            oracle::dangerous_count_brute(h_prev, h, delta, 1, 2, w, w * 10 + delta));
  CHECK_THROWS_AS(dangerous_count(h_prev, h_prev, 2, Fraction(1, 2), 2), ParameterError);
  CHECK_THROWS_AS(dangerous_count(h_prev, h, 4, Fraction(1, 2), 4, 10), CapExceeded);
}

TEST_CASE("dangerous census on a seeded step, N = 20") {
  Rng rng(23);
  Graph g = oracle::dense_partite(rng, 3, 20, 0.5, 0.8);
  auto h0 = transversal_clique_hypergraph(g, blocks(3, 20));
  StepOptions so;
  so.census_delta = 4;
  so.census_w = 4;
  so.beta = Fraction(1, 5);
  auto step = hdrc_step(h0, 2, 0.5, 9, so);
  REQUIRE(step.census);
  CHECK(*step.census == oracle::dangerous_count_brute(h0, step.hypergraph, 4, 1, 5, 4, 77));
}

TEST_CASE("embedding schedules") {
  auto a = make_schedule(2, 3, EmbedVariant::Kpq);
  CHECK(a.r == std::vector<int>{2});
  CHECK(a.delta == std::vector<std::int64_t>{4});
  CHECK(a.w == std::vector<int>{4});
  auto b = make_schedule(2, 3, EmbedVariant::KpqMinusOne);
  CHECK(b.delta == std::vector<std::int64_t>{2});
  CHECK(b.w == std::vector<int>{3});
  auto c = make_schedule(3, 4, EmbedVariant::Kpq);
  CHECK(c.r == std::vector<int>{3, 2});
  CHECK(c.delta == std::vector<std::int64_t>{27, 9});
  CHECK(c.w == std::vector<int>{9, 6});
  CHECK(make_schedule(3, 2, EmbedVariant::Kpq).r.empty());
  CHECK_THROWS_AS(make_schedule(1, 3, EmbedVariant::Kpq), ParameterError);
  auto pa = preset_schedule(EmbedVariant::Kpq, 1 << 16, 0.5, 4);
  CHECK(pa.s == doctest::Approx(2.0));
  REQUIRE(pa.eps.size() == 3);
  CHECK(pa.eps[0] == doctest::Approx(0.5));
  CHECK(pa.eps[1] == doctest::Approx(std::pow(0.5, 2.0) / 2));
  auto pb = preset_schedule(EmbedVariant::KpqMinusOne, 1 << 9, 0.5, 3);
  CHECK(pb.s == doctest::Approx(3.0));
  CHECK(pb.eps[1] == doctest::Approx(std::pow(0.5, 3.0) / 2));
  CHECK(parse_variant("pq-1") == EmbedVariant::KpqMinusOne);
  CHECK_THROWS_AS(parse_variant("pq+1"), ParameterError);
}

TEST_CASE("embed K6 in a dense 3-partite graph") {
  Rng rng(2024);
  Graph g = oracle::dense_partite(rng, 3, 30, 0.5, 0.9);
  REQUIRE(contains_clique(g, 6));
  EmbedParams params;
  params.p = 2;
  params.q = 3;
  params.beta = Fraction(1, 10);
  params.s = 2;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto res = embed_kpq(g, blocks(3, 30), params, EmbedVariant::Kpq, seed);
    auto trace = nlohmann::json::parse(res.trace_json);
    if (res.clique) {
      ++found;
      CHECK(res.clique->count() == 6);
      CHECK(is_clique(g, *res.clique));
      for (int i = 0; i < 3; ++i) CHECK(res.blocks[i].subset_of(blocks(3, 30)[i]));
      CHECK(trace["ok"] == true);
      CHECK(trace["stages"].size() == 4);
      CHECK(trace["stages"][3]["witness_edges"] == 4);
      CHECK(trace["stages"][3]["witness_weight"] == 4);
    } else {
      CHECK(trace["failed_stage"].get<int>() >= 0);
    }
  }
  CHECK(found >= 8);
}

TEST_CASE("embed K5 in turan(25,5) with the pq-1 schedule") {
  Graph g = turan(25, 5);
  auto cls = turan_classes(25, 5);
  auto take = [&](int c, int k) {
    auto m = cls[c].members();
    return std::vector<int>(m.begin(), m.begin() + k);
  };
  auto join = [&](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return VertexSet::from_list(25, a);
  };
  std::vector<VertexSet> parts{join(take(0, 3), take(1, 2)), join(take(2, 3), take(3, 2)), cls[4]};
  EmbedParams params;
  params.p = 2;
  params.q = 3;
  params.beta = Fraction(2, 5);
  params.m = 1;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto res = embed_kpq(g, parts, params, EmbedVariant::KpqMinusOne, seed);
    if (res.clique) {
      ++found;
      CHECK(res.clique->count() == 5);
      CHECK(is_clique(g, *res.clique));
      CHECK(res.blocks[2].count() == 1);
    }
  }
  CHECK(found >= 16);
  CHECK_THROWS_AS(embed_kpq(g, parts, EmbedParams{}, EmbedVariant::KpqMinusOne, 1), ParameterError);
}

TEST_CASE("embedding never succeeds in a K4-free graph") {
  Graph g = c5_blowup(4);
  REQUIRE_FALSE(contains_clique(g, 4));
  EmbedParams params;
  params.p = 2;
  params.q = 2;
  params.beta = Fraction(1, 4);
  params.drc_trials = 20;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto res = embed_kpq(g, {range_set(20, 0, 4), range_set(20, 4, 8)}, params, EmbedVariant::Kpq, seed);
    CHECK_FALSE(res.clique);
    CHECK(res.failed_stage == 1);
  }
}

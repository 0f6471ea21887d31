// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Reference values come from the brute-force oracles in oracles.hpp, from
// closed formulas recomputed here, or from the printed density tables.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rtlab/constructions.hpp"
#include "rtlab/densities.hpp"
#include "rtlab/drc.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/graph.hpp"
#include "rtlab/hdrc.hpp"
#include "rtlab/ramsey.hpp"
#include "rtlab/regularity.hpp"
#include "rtlab/rng.hpp"
#include "rtlab/rt_solver.hpp"

using namespace rtlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

VertexSet range_set(int universe, int lo, int hi) {
  VertexSet s(universe);
  for (int v = lo; v < hi; ++v) s.set(v);
  return s;
}

std::vector<VertexSet> blocks(int q, int size) {
  std::vector<VertexSet> out;
  for (int i = 0; i < q; ++i) out.push_back(range_set(q * size, i * size, (i + 1) * size));
  return out;
}

// Edge count of the balanced complete k-partite graph, from class sizes.
std::int64_t turan_edges(int n, int k) {
  std::int64_t sq = 0;
  for (int i = 0; i < k; ++i) {
    std::int64_t c = n / k + (i < n % k ? 1 : 0);
    sq += c * c;
  }
  return (static_cast<std::int64_t>(n) * n - sq) / 2;
}

bool verified_clique(const Graph& g, const VertexSet& s, int size) {
  auto m = s.members();
  if (static_cast<int>(m.size()) != size) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!g.adjacent(m[i], m[j])) return false;
  return true;
}

Outcome turan_baseline() {
  int checked = 0;
  std::string bad;
  for (int s = 3; s <= 5; ++s)
    for (int n = 1; n <= 9; ++n) {
      auto res = rt_exact({n, s, n + 1});
      std::int64_t want = turan_edges(n, s - 1);
      bool ok = res.status == RTStatus::Feasible && res.max_edges == want && res.witness &&
                edge_count(*res.witness) == want && oracle::clique_number(*res.witness) < s;
      if (s == 3) ok = ok && want == n * n / 4;
      if (!ok) bad += fmt(" (n=%d,s=%d got %lld want %lld)", n, s, static_cast<long long>(res.max_edges),
                          static_cast<long long>(want));
      ++checked;
    }
  return {bad.empty(), fmt("%d instances n<=9, s in {3,4,5}", checked) + bad};
}

Outcome ramsey_core() {
  auto r33 = ramsey_exact(3, 3, 10);
  auto r34 = ramsey_exact(3, 4, 12);
  bool ok = r33.exact() && r33.lo == 6 && r34.exact() && r34.lo == 9;
  std::string detail = fmt("R(3,3)=%d..%d R(3,4)=%d..%d; Q(3,n)=", r33.lo, r33.hi, r34.lo, r34.hi);
  const std::vector<int> want{1, 1, 2, 2, 2, 3, 3, 3, 4};
  for (int n = 1; n <= 9; ++n) {
    auto q = q_exact(3, n);
    detail += fmt("%d%s", q.lo, n < 9 ? "," : "");
    bool witnessed = q.witness && q.witness->order() == n && oracle::clique_number(*q.witness) < 3 &&
                     oracle::independence_number(*q.witness) == q.lo;
    // Q(3,n) < k iff an n-vertex (3,k)-graph exists iff n < R(3,k).
    bool consistent = (q.lo <= 2) == (n < r33.lo) && (q.lo <= 3) == (n < r34.lo);
    ok = ok && q.exact() && q.lo == want[n - 1] && witnessed && consistent;
  }
  return {ok, detail};
}

Outcome construction_contracts() {
  Rng rng(31);
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    int r = uniform_int(rng, 1, 4);
    int n = uniform_int(rng, 3 * r, r == 1 ? 20 : 40);
    std::uint64_t seed = rng();
    Graph g = compose_turan(n, r, named_inner("triangle-free-random:" + std::to_string(seed)));
    int interior_alpha = 0;
    int clique_sum = 0;
    bool triangle_free = true;
    for (const auto& cls : turan_classes(n, r)) {
      Graph in = induced_subgraph(g, cls);
      int w = oracle::clique_number(in);
      triangle_free = triangle_free && w <= 2;
      clique_sum += w;
      interior_alpha = std::max(interior_alpha, oracle::independence_number(in));
    }
    int omega = oracle::bron_kerbosch_clique_number(g);
    if (!triangle_free || omega > 2 * r || omega != clique_sum || clique_number(g) != omega ||
        independence_number(g) != interior_alpha)
      ++violations;
  }
  int be_checked = 0;
  for (int n = 20; n <= 60; n += 8)
    for (int r = 3; r <= 4; ++r) {
      ConstructionSpec spec;
      spec.kind = ConstructionSpec::Kind::BEJoin;
      spec.n = n;
      spec.r = r;
      spec.inner = "triangle-free-random:" + std::to_string(n * 10 + r);
      spec.be = default_bollobas_erdos(lower_be_h(n, r), 20, static_cast<std::uint64_t>(n + r));
      auto built = build_construction(spec, {false, false});
      ++be_checked;
      if (built.graph.order() != n || oracle::bron_kerbosch_clique_number(built.graph) >= 2 * r) ++violations;
    }
  return {violations == 0, fmt("50 compose_turan + %d lower_be instances, %d violations", be_checked, violations)};
}

Outcome bollobas_erdos_k4() {
  int k4 = 0;
  std::string trend;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = bollobas_erdos(default_bollobas_erdos(100, 20, seed));
    if (oracle::bron_kerbosch_clique_number(g) >= 4 || contains_clique(g, 4)) ++k4;
    double density = static_cast<double>(edge_count(g)) / (100.0 * 99.0 / 2.0);
    if (seed <= 3 || seed == 20)
      trend += fmt(" seed%llu:d=%.3f,a/h=%.2f", static_cast<unsigned long long>(seed), density,
                   independence_number(g) / 100.0);
  }
  return {k4 == 0, fmt("20 seeds h=100 dim=20, %d with K4;", k4) + trend};
}

Outcome drc_witnesses() {
  const int n = 256;
  const DRCParams p{3, 2, 16, 4};
  const std::int64_t trials = static_cast<std::int64_t>(std::ceil(2.0 * n / p.a * 3.0));
  int eligible = 0;
  int found = 0;
  int bad_witness = 0;
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Graph g = oracle::random_graph(rng, n, 0.5);
    Rational d(2 * edge_count(g), n);
    if (!drc_predicate(n, d, p).holds) continue;
    ++eligible;
    auto res = drc_find(g, p, trials, derive_seed(5, i));
    if (!res.witness) continue;
    ++found;
    auto u = res.witness->members();
    bool ok = static_cast<int>(u.size()) >= p.a;
    for (std::size_t x = 0; x < u.size() && ok; ++x)
      for (std::size_t y = x + 1; y < u.size() && ok; ++y) {
        int common = 0;
        for (int v = 0; v < n; ++v) common += g.adjacent(u[x], v) && g.adjacent(u[y], v);
        ok = common >= p.m;
      }
    if (!ok) ++bad_witness;
  }
  bool pass = eligible == 100 && found * 100 >= 95 * eligible && bad_witness == 0;
  return {pass, fmt("G(256,1/2) t=3 r=2 m=16 a=4, %d trials: %d/%d found, %d bad witnesses", static_cast<int>(trials),
                    found, eligible, bad_witness)};
}

Outcome amplification() {
  Graph t = turan(25, 5);
  int preset = 0;
  int alternate = 0;
  int unverified = 0;
  for (int seed = 0; seed < 100; ++seed) {
    auto a = clique_amplify(t, 3, 5, 3, 5, 10, seed);
    auto b = clique_amplify(t, 2, 5, 3, 5, 10, seed);
    if (a.clique) verified_clique(t, *a.clique, 5) ? ++preset : ++unverified;
    if (b.clique) verified_clique(t, *b.clique, 5) ? ++alternate : ++unverified;
  }
  Graph free = compose_turan(20, 2, petersen_graph());
  bool k5_free = oracle::clique_number(free) < 5;
  int false_hits = 0;
  for (int seed = 0; seed < 10000; ++seed)
    if (clique_amplify(free, 3, 5, 3, 5, 3, seed).clique) ++false_hits;
  bool pass = preset >= 90 && alternate >= 90 && unverified == 0 && k5_free && false_hits == 0;
  return {pass, fmt("turan(25,5): triangle-then-edge %d/100, edge-then-triangle %d/100; K5-free control %d/10000 hits",
                    preset, alternate, false_hits)};
}

Outcome hdrc_pipeline() {
  Rng rng(2024);
  Graph g = oracle::dense_partite(rng, 3, 30, 0.5, 0.9);
  bool has_k6 = oracle::bron_kerbosch_clique_number(g) >= 6;
  EmbedParams params;
  params.p = 2;
  params.q = 3;
  params.beta = Fraction(1, 10);
  params.s = 2;
  int k6 = 0;
  int unverified = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto res = embed_kpq(g, blocks(3, 30), params, EmbedVariant::Kpq, seed);
    if (res.clique) verified_clique(g, *res.clique, 6) ? ++k6 : ++unverified;
  }
  Graph t = turan(25, 5);
  auto cls = turan_classes(25, 5);
  auto part = [&](int c1, int c2) {
    auto a = cls[c1].members();
    auto b = cls[c2].members();
    std::vector<int> m(a.begin(), a.begin() + 3);
    m.insert(m.end(), b.begin(), b.begin() + 2);
    return VertexSet::from_list(25, m);
  };
  std::vector<VertexSet> parts{part(0, 1), part(2, 3), cls[4]};
  EmbedParams minus;
  minus.p = 2;
  minus.q = 3;
  minus.beta = Fraction(2, 5);
  minus.m = 1;
  int k5 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto res = embed_kpq(t, parts, minus, EmbedVariant::KpqMinusOne, seed);
    if (res.clique) verified_clique(t, *res.clique, 5) ? ++k5 : ++unverified;
  }
  bool pass = has_k6 && k6 >= 80 && k5 >= 80 && unverified == 0;
  return {pass, fmt("K6 in dense 3-partite N=30: %d/100; pq-1 K5 in turan(25,5): %d/100; %d unverified", k6, k5,
                    unverified)};
}

Outcome census() {
  int mismatches = 0;
  std::int64_t total = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(1000 + i);
    int n = 8 + i % 13;
    double cross = 0.6 + 0.1 * (i % 4);
    Graph g = oracle::dense_partite(rng, 3, n, 0.5, cross);
    auto h0 = transversal_clique_hypergraph(g, blocks(3, n));
    auto step = hdrc_step(h0, 2, 0.5, 7 + i);
    int delta = 1 + i % 4;
    int w = 2 + i % 3;
    Fraction beta(1 + i % 4, 10);
    std::int64_t got = dangerous_count(h0, step.hypergraph, delta, beta, w);
    std::int64_t want = oracle::dangerous_count_brute(h0, step.hypergraph, delta, beta.numerator(),
                                                      beta.denominator(), w, 17 + i);
    total += want;
    if (got != want) ++mismatches;
  }
  return {mismatches == 0, fmt("50 instances r=3 N=8..20 delta<=4, %d mismatches (%lld dangerous sets)", mismatches,
                               static_cast<long long>(total))};
}

Outcome regularity() {
  auto recovered = [](const Graph& g, const std::vector<VertexSet>& classes, const Graph& want) {
    auto cg = cluster_graph(g, classes, Fraction(1, 10), Fraction(1, 2));
    for (const auto& e : cg.pairs)
      if (e.mode != RegularityMode::Exact) return false;
    return cg.graph == want;
  };
  bool k3 = recovered(turan(12, 3), turan_classes(12, 3), complete_graph(3));
  Graph blow(40);
  for (int u = 0; u < 40; ++u)
    for (int v = u + 1; v < 40; ++v) {
      int d = (v / 8 - u / 8 + 5) % 5;
      if (d == 1 || d == 4) blow.add_edge(u, v);
    }
  bool c5 = recovered(blow, blocks(5, 8), cycle_graph(5));
  int pairs = 0;
  int mismatches = 0;
  const std::vector<Fraction> rhos{Fraction(1, 10), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3)};
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(300 + seed);
    for (int k = 1; k <= 12; ++k) {
      Graph g = oracle::random_graph(rng, 2 * k, 0.2 + 0.6 * uniform01(rng));
      Fraction rho = rhos[uniform_below(rng, rhos.size())];
      VertexSet a = range_set(2 * k, 0, k);
      VertexSet b = range_set(2 * k, k, 2 * k);
      bool got = is_regular_pair(g, a, b, rho, RegularityMode::Exact).regular;
      bool want = oracle::regular_pair_brute(g, a.members(), b.members(), rho.numerator(), rho.denominator());
      ++pairs;
      if (got != want) ++mismatches;
    }
  }
  return {k3 && c5 && mismatches == 0,
          fmt("K3 %s, C5 %s, exact vs definitional on %d pairs: %d mismatches", k3 ? "recovered" : "missed",
              c5 ? "recovered" : "missed", pairs, mismatches)};
}

// Printed grid, columns K4..K13, in the printed (unreduced) form.
const std::vector<std::vector<std::string>> kGrid = {
    {"1/3", "3/8", "2/5", "5/12", "3/7", "7/16", "4/9", "9/20", "5/11", "11/24"},
    {"1/8", "1/4", "2/7", "1/3", "7/20", "3/8", "5/13", "2/5", "13/32", "5/12"},
    {"2: 0", "", "3: 1/4", "", "4: 1/3", "", "5: 3/8", "", "6: 2/5", ""},
    {"", "1/4", "1/4", "1/3", "1/3", "3/8", "3/8", "2/5", "2/5", "5/12"},
    {"", "0", "≤ 1/6", "1/4", "≤ 2/7", "≤ 5/16", "1/3", "≤ 7/20", "≤ 8/22", "3/8"},
    {"", "", "2: 0", "", "2: 1/4", "3: 1/4", "", "3: 1/3", "4: 1/3", ""},
    {"", "", "", "1/4", "1/4", "", "1/3", "1/3", "1/3", "3/8"},
    {"", "", "", "0", "≤ 3/16", "", "≤ 5/18", "≤ 3/10", "≤ 7/22", "1/3"},
    {"", "", "", "", "2: 0", "", "2: 1/4", "2: 1/4", "3: 1/4", ""},
    {"", "", "", "", "", "1/4", "1/4", "", "", "1/3"},
    {"", "", "", "", "", "0", "≤ 1/5", "", "", "≤ 7/24"},
    {"", "", "", "", "", "", "2: 0", "", "", "2: 1/4"},
    {"", "", "", "", "", "", "", "1/4", "1/4", ""},
    {"", "", "", "", "", "", "", "0", "≤ 5/24", ""},
    {"", "", "", "", "", "", "", "", "2: 0", ""},
    {"", "", "", "", "", "", "", "", "", "1/4"},
    {"", "", "", "", "", "", "", "", "", "0"},
};

const std::vector<std::string> kColumnK13{"11/24", "5/12", "5/12", "3/8", "3/8", "1/3",
                                          "1/3",   "≤ 7/24", "1/4", "1/4", "0"};

// Equal up to reduction of the trailing fraction.
bool same_cell(const std::string& got, const std::string& want) {
  if (got.empty() || want.empty()) return got == want;
  auto cut = [](const std::string& s) {
    auto sp = s.rfind(' ');
    return sp == std::string::npos ? std::make_pair(std::string(), s)
                                   : std::make_pair(s.substr(0, sp + 1), s.substr(sp + 1));
  };
  auto [gh, gt] = cut(got);
  auto [wh, wt] = cut(want);
  return gh == wh && parse_fraction(gt) == parse_fraction(wt);
}

Outcome density_tables() {
  auto start = std::chrono::steady_clock::now();
  auto on = table_emit(4, 13, Assumptions{true});
  auto off = table_emit(4, 13, Assumptions{false});
  auto col = table_k13(Assumptions{true});
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int wrong = 0;
  if (on.cells.size() != kGrid.size()) return {false, fmt("%zu rows, want %zu", on.cells.size(), kGrid.size())};
  for (std::size_t i = 0; i < kGrid.size(); ++i)
    for (std::size_t j = 0; j < 10; ++j) wrong += !same_cell(on.cells[i][j].text, kGrid[i][j]);
  for (std::size_t i = 0; i < kColumnK13.size(); ++i)
    wrong += i >= col.cells.size() || col.cells[i][0].text != kColumnK13[i];
  int subset_wrong = 0;
  int subset_exact = 0;
  for (std::size_t i = 0; i < on.cells.size(); ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      bool inside = j + 4 <= 8 || i < 7;
      const auto& c = off.cells[i][j];
      bool want_exact = inside && on.cells[i][j].exact;
      subset_exact += want_exact;
      if (c.exact != want_exact || (inside && c.text != on.cells[i][j].text)) ++subset_wrong;
    }
  bool pass = wrong == 0 && subset_wrong == 0 && seconds < 1.0;
  return {pass, fmt("grid and K13 column: %d wrong cells; unassumed subset: %d exact, %d wrong; %.3f s", wrong,
                    subset_exact, subset_wrong, seconds)};
}

Outcome phase_transitions() {
  bool ok = strong_pt_check(5, 3).holds && !strong_pt_check(9, 4).holds;
  for (int s = 5; s <= 200; ++s) ok = ok && strong_pt_check(s, 3).holds;
  auto a = pt_from_to(5, parse_function_class("n"), parse_function_class("o(n)"));
  auto b = pt_from_to(5, parse_function_class("2*sqrt(n log n)"), parse_function_class("o(sqrt(n log n))"));
  bool k5 = a.verdict == Verdict::Yes && a.at_f.lower.value == Fraction(3, 8) && a.at_g.upper.value == Fraction(1, 4) &&
            b.verdict == Verdict::Yes && b.at_f.lower.value == Fraction(1, 4) && b.at_g.upper.value == Fraction(0);
  return {ok && k5, fmt("strong (s,3) for s=5..200 and not (9,4): %s; K5 n->o(n) %s vs %s, "
                        "2*sqrt(n log n)->o(sqrt(n log n)) %s vs %s",
                        ok ? "ok" : "wrong", a.at_f.render().c_str(), a.at_g.render().c_str(),
                        b.at_f.render().c_str(), b.at_g.render().c_str())};
}

Outcome oracle_equivalence() {
  Rng rng(12);
  int discrepancies = 0;
  const int graphs = 100000;
  for (int i = 0; i < graphs; ++i) {
    int n = uniform_int(rng, 1, 12);
    Graph g = oracle::random_graph(rng, n, uniform01(rng));
    int d = uniform_int(rng, 2, 5);
    if (clique_number(g) != oracle::clique_number(g) || independence_number(g) != oracle::independence_number(g) ||
        d_independence_number(g, d) != oracle::d_independence_number(g, d))
      ++discrepancies;
  }
  return {discrepancies == 0, fmt("%d random graphs n<=12, %d discrepancies", graphs, discrepancies)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Turan baseline", turan_baseline},
      {"Ramsey core", ramsey_core},
      {"construction contracts", construction_contracts},
      {"Bollobas-Erdos K4-freeness", bollobas_erdos_k4},
      {"dependent random choice", drc_witnesses},
      {"clique amplification", amplification},
      {"hypergraph embedding", hdrc_pipeline},
      {"dangerous-set census", census},
      {"regularity", regularity},
      {"density tables", density_tables},
      {"phase-transition predicates", phase_transitions},
      {"solver oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

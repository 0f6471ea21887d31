#include "rtlab/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "rtlab/errors.hpp"
#include "rtlab/io.hpp"
#include "rtlab/rng.hpp"
#include "small_graph.hpp"

namespace rtlab {

using detail::SmallGraph;

namespace {

struct LevelResult {
  std::vector<std::int64_t> counts;  // counts[k] = classes on k vertices
  bool capped = false;
  std::optional<SmallGraph> last;    // one graph from the last nonempty level
  bool reached_empty = false;
};

// Isomorphism classes of K_s-free graphs with no independent t-set, built one
// vertex at a time (every such graph minus a vertex is again one).
LevelResult enumerate_st_graphs(int s, int t, int n_max, const EnumerationLimits& limits) {
  LevelResult out;
  std::vector<SmallGraph> level{SmallGraph{}};
  out.counts.push_back(1);
  out.last = SmallGraph{};
  for (int k = 0; k < n_max; ++k) {
    std::unordered_map<detail::CanonCode, SmallGraph, detail::CanonCodeHash> next;
    for (const auto& g : level) {
      std::uint32_t all = g.all();
      for (std::uint32_t nb = 0; nb <= all; ++nb) {
        if (detail::has_clique(g, nb, s - 1)) continue;
        if (detail::has_independent_set(g, all & ~nb, t - 1)) continue;
        auto canon = detail::canonical_form(g.extended(nb));
        next.try_emplace(canon.code, canon.graph);
        if (static_cast<std::int64_t>(next.size()) > limits.level_cap) {
          out.capped = true;
          out.last = canon.graph;
          return out;
        }
      }
    }
    if (next.empty()) {
      out.reached_empty = true;
      return out;
    }
    // Deterministic order: sort by canonical code, keep the largest as witness.
    std::vector<std::pair<detail::CanonCode, SmallGraph>> sorted(next.begin(), next.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    level.clear();
    for (auto& [code, g] : sorted) level.push_back(g);
    out.counts.push_back(static_cast<std::int64_t>(level.size()));
    out.last = level.back();
  }
  return out;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Q(t,n) > a whenever n >= C(t+a-1, t-1) >= R(t, a+1).
int q_lower_erdos_szekeres(int t, int n) {
  int a = 1;
  while (binomial(t + a - 1, t - 1) <= n) ++a;
  return a;
}

}  // namespace

RamseyRecord ramsey_exact(int s, int t, int n_max, const EnumerationLimits& limits) {
  if (s < 2 || t < 2) throw ParameterError("ramsey_exact needs s, t >= 2");
  if (n_max < 1) throw ParameterError("n_max must be positive");
  RamseyRecord rec;
  rec.s = s;
  rec.t = t;
  rec.n_max = n_max;
  rec.hi = static_cast<int>(std::min<std::int64_t>(binomial(s + t - 2, s - 1), 1 << 30));
  int cap_n = std::min(n_max, detail::kSmallMax);
  auto levels = enumerate_st_graphs(s, t, cap_n, limits);
  rec.level_counts = levels.counts;
  if (levels.last) rec.witness = detail::to_graph(*levels.last);
  int largest = levels.last ? levels.last->n : 0;
  if (levels.reached_empty) {
    rec.lo = rec.hi = largest + 1;
    rec.provenance = "exact-search";
  } else {
    rec.lo = largest + 1;
    rec.provenance = "formula-bound";
  }
  return rec;
}

int q_reach(int t, const QOptions& options) {
  if (t == 3) return options.reach_t3;
  if (t == 4) return options.reach_t4;
  return options.reach_other;
}

namespace {

std::optional<Graph> exists_st_graph(int t, int a, int n, const EnumerationLimits& limits, bool& capped) {
  // K_t-free graphs on n vertices with independence number <= a.
  auto levels = enumerate_st_graphs(t, a + 1, n, limits);
  capped = levels.capped;
  if (!levels.capped && !levels.reached_empty && levels.last && levels.last->n == n)
    return detail::to_graph(*levels.last);
  return std::nullopt;
}

}  // namespace

namespace {

bool edge_allowed(const Graph& g, int u, int v, int t) {
  VertexSet common = g.neighbors(u) & g.neighbors(v);
  return !contains_clique_in(g, common, t - 2);
}

void saturate(Graph& g, int t, Rng& rng) {
  int n = g.order();
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) pairs.emplace_back(u, v);
  for (std::size_t i = pairs.size(); i > 1; --i)
    std::swap(pairs[i - 1], pairs[uniform_below(rng, i)]);
  for (auto [u, v] : pairs)
    if (edge_allowed(g, u, v, t)) g.add_edge(u, v);
}

MinAlphaResult local_search_min_alpha(int t, int n, std::int64_t budget, std::uint64_t seed, int floor) {
  // Drop a few random edges, re-saturate to a maximal K_t-free graph, keep the
  // move unless the independence number grows.
  Rng rng(seed);
  Graph cur(n);
  saturate(cur, t, rng);
  int cur_alpha = independence_number(cur);
  Graph best = cur;
  int best_alpha = cur_alpha;
  for (std::int64_t step = 0; step < budget && best_alpha > floor; ++step) {
    Graph next = cur;
    int drops = 1 + static_cast<int>(uniform_below(rng, 3));
    for (int d = 0; d < drops; ++d) {
      int u = uniform_int(rng, 0, n - 1);
      if (next.degree(u) == 0) continue;
      auto nb = next.neighbors(u).members();
      next.remove_edge(u, nb[uniform_below(rng, nb.size())]);
    }
    saturate(next, t, rng);
    int a = independence_number(next);
    if (a <= cur_alpha) {
      cur = std::move(next);
      cur_alpha = a;
      if (a < best_alpha) {
        best = cur;
        best_alpha = a;
      }
    }
  }
  return {best, best_alpha, best_alpha == floor, "local-search"};
}

}  // namespace

QRecord q_exact(int t, int n, const QOptions& options) {
  if (t < 2) throw ParameterError("q_exact needs t >= 2");
  if (n < 1) throw ParameterError("q_exact needs n >= 1");
  QRecord rec;
  rec.t = t;
  rec.n = n;
  if (t == 2) {
    rec.lo = rec.hi = n;
    rec.provenance = "formula";
    rec.witness = Graph(n);
    return rec;
  }
  int reach = std::min(q_reach(t, options), detail::kSmallMax);
  if (n <= reach) {
    bool capped = false;
    for (int a = q_lower_erdos_szekeres(t, n); a <= n; ++a) {
      auto g = exists_st_graph(t, a, n, options.limits, capped);
      if (capped) break;
      if (g) {
        rec.lo = rec.hi = a;
        rec.provenance = "exact-search";
        rec.witness = g;
        return rec;
      }
    }
  }
  // Out of reach: sound combinatorial lower bound, heuristic upper bound.
  int lo = q_lower_erdos_szekeres(t, n);
  if (n > reach && reach >= 1) {
    QOptions inner = options;
    auto at_reach = q_exact(t, reach, inner);
    if (at_reach.exact()) lo = std::max(lo, at_reach.lo);
  }
  auto heur = local_search_min_alpha(t, n, options.heuristic_budget, options.seed, lo);
  rec.lo = std::min(lo, heur.alpha);
  rec.hi = heur.alpha;
  rec.witness = heur.graph;
  rec.provenance = rec.lo == rec.hi ? "bound-matched-heuristic" : "bounds+heuristic";
  return rec;
}

BoundInterval q_bounds(int t, int n, double c1, double c2) {
  if (t < 3) throw ParameterError("q_bounds needs t >= 3");
  if (n < 2) throw ParameterError("q_bounds needs n >= 2");
  double nn = n;
  double lg = std::log2(nn);
  BoundInterval b;
  if (t == 3) {
    b.lo = std::sqrt(nn * lg) / std::sqrt(2.0);
    b.hi = std::sqrt(2.0) * std::sqrt(nn * lg);
    return b;
  }
  double td = t;
  b.lo = c1 * std::pow(nn, 1.0 / (td - 1)) * std::pow(lg, (td - 2) / (td - 1));
  b.hi = c2 * std::pow(nn, 2.0 / (td + 1)) * std::pow(lg, 1.0 - 2.0 / ((td - 2) * (td + 1)));
  b.up_to_constants = true;
  return b;
}

MinAlphaResult min_alpha_graph(int t, int n, std::int64_t budget, std::uint64_t seed) {
  if (t < 2) throw ParameterError("min_alpha_graph needs t >= 2");
  if (n < 1) throw ParameterError("min_alpha_graph needs n >= 1");
  QOptions options;
  options.heuristic_budget = budget;
  options.seed = seed;
  auto rec = q_exact(t, n, options);
  bool searched = rec.provenance == "exact-search" || rec.provenance == "formula";
  return {*rec.witness, rec.hi, rec.exact(), searched ? "exact-search" : "local-search"};
}

// ---- cache ----

void RamseyCache::upsert(Entry e) {
  for (auto& old : entries_) {
    if (old.kind == e.kind && old.s == e.s && old.t == e.t && (e.kind == "R" || old.n == e.n)) {
      // Keep the tighter record.
      if (e.hi - e.lo <= old.hi - old.lo) old = std::move(e);
      return;
    }
  }
  entries_.push_back(std::move(e));
}

void RamseyCache::put_r(const RamseyRecord& rec, const EnumerationLimits& limits) {
  Entry e;
  e.kind = "R";
  e.s = rec.s;
  e.t = rec.t;
  e.n = rec.n_max;
  e.lo = rec.lo;
  e.hi = rec.hi;
  if (rec.witness) e.witness_graph6 = to_graph6(*rec.witness);
  e.provenance = rec.provenance;
  e.params = nlohmann::json{{"n_max", rec.n_max}, {"level_cap", limits.level_cap}}.dump();
  upsert(std::move(e));
}

void RamseyCache::put_q(const QRecord& rec, const QOptions& options) {
  Entry e;
  e.kind = "Q";
  e.t = rec.t;
  e.n = rec.n;
  e.lo = rec.lo;
  e.hi = rec.hi;
  if (rec.witness) e.witness_graph6 = to_graph6(*rec.witness);
  e.provenance = rec.provenance;
  e.params = nlohmann::json{{"reach", q_reach(rec.t, options)},
                            {"level_cap", options.limits.level_cap},
                            {"heuristic_budget", options.heuristic_budget},
                            {"seed", options.seed}}
                 .dump();
  upsert(std::move(e));
}

std::optional<RamseyRecord> RamseyCache::get_r(int s, int t) const {
  for (const auto& e : entries_) {
    if (e.kind != "R" || e.s != s || e.t != t) continue;
    RamseyRecord rec;
    rec.s = s;
    rec.t = t;
    rec.lo = e.lo;
    rec.hi = e.hi;
    rec.n_max = e.n;
    rec.provenance = rec.exact() ? "cached-exact" : e.provenance;
    if (!e.witness_graph6.empty()) rec.witness = from_graph6(e.witness_graph6);
    return rec;
  }
  return std::nullopt;
}

std::optional<QRecord> RamseyCache::get_q(int t, int n) const {
  for (const auto& e : entries_) {
    if (e.kind != "Q" || e.t != t || e.n != n) continue;
    QRecord rec;
    rec.t = t;
    rec.n = n;
    rec.lo = e.lo;
    rec.hi = e.hi;
    rec.provenance = rec.exact() ? "cached-exact" : e.provenance;
    if (!e.witness_graph6.empty()) rec.witness = from_graph6(e.witness_graph6);
    return rec;
  }
  return std::nullopt;
}

bool RamseyCache::verify(const Entry& e) {
  if (e.lo > e.hi || e.lo < 0) return false;
  if (e.params.empty()) return false;
  if (e.witness_graph6.empty()) return e.kind == "R";
  Graph w = from_graph6(e.witness_graph6);
  if (e.kind == "R") {
    return w.order() == e.lo - 1 && !contains_clique(w, e.s) && independence_number(w) < e.t;
  }
  if (e.kind == "Q") {
    return w.order() == e.n && !contains_clique(w, e.t) && independence_number(w) == e.hi;
  }
  return false;
}

std::string RamseyCache::to_jsonl() const {
  std::string out;
  for (const auto& e : entries_) {
    nlohmann::json j{{"kind", e.kind}, {"s", e.s}, {"t", e.t}, {"n", e.n}, {"provenance", e.provenance},
                     {"witness_graph6", e.witness_graph6}, {"params", nlohmann::json::parse(e.params)}};
    if (e.lo == e.hi)
      j["value"] = e.lo;
    else
      j["interval"] = {e.lo, e.hi};
    out += j.dump() + "\n";
  }
  return out;
}

int RamseyCache::load_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int rejected = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      Entry e;
      e.kind = j.at("kind").get<std::string>();
      e.s = j.value("s", 0);
      e.t = j.at("t").get<int>();
      e.n = j.at("n").get<int>();
      if (j.contains("value")) {
        e.lo = e.hi = j["value"].get<int>();
      } else {
        e.lo = j.at("interval").at(0).get<int>();
        e.hi = j.at("interval").at(1).get<int>();
      }
      e.witness_graph6 = j.value("witness_graph6", "");
      e.provenance = j.value("provenance", "");
      e.params = j.contains("params") ? j["params"].dump() : "";
      if (!verify(e)) {
        ++rejected;
        continue;
      }
      upsert(std::move(e));
    } catch (const std::exception&) {
      ++rejected;
    }
  }
  return rejected;
}

int RamseyCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::stringstream ss;
  ss << in.rdbuf();
  return load_jsonl(ss.str());
}

void RamseyCache::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParameterError("cannot write cache file " + path);
  out << to_jsonl();
}

}  // namespace rtlab

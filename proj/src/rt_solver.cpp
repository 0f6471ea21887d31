#include "rtlab/rt_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "rtlab/errors.hpp"
#include "rtlab/rng.hpp"
#include "small_graph.hpp"

namespace rtlab {

using detail::SmallGraph;

void RTInstance::validate() const {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (s < 3) throw ParameterError("s must be at least 3");
  if (m < 1 || m > n + 1) throw ParameterError("m must satisfy 1 <= m <= n + 1");
}

const char* to_string(RTStatus s) {
  switch (s) {
    case RTStatus::Feasible: return "feasible";
    case RTStatus::Infeasible: return "infeasible";
    case RTStatus::InfeasibleNotFound: return "infeasible-not-found";
  }
  return "";
}

bool rt_check_witness(const Graph& g, const RTInstance& inst) {
  if (g.order() != inst.n) throw ParameterError("witness order does not match n");
  if (contains_clique(g, inst.s)) return false;
  // independence number < m  <=>  no independent set of size m
  return !contains_clique(complement(g), inst.m);
}

RTResult rt_exact(const RTInstance& inst, const RTExactOptions& options) {
  inst.validate();
  if (inst.n > options.cap || inst.n > detail::kSmallMax)
    throw CapExceeded("n = " + std::to_string(inst.n) + " exceeds the exhaustive cap " +
                      std::to_string(options.cap) + "; use rt_lower_search instead");
  auto started = std::chrono::steady_clock::now();
  const int n = inst.n;

  // Edge floor from a verified heuristic witness. Every graph with at least
  // `floor` edges deletes down (min-degree vertex each time) through graphs
  // G_k with e(G_k) * n(n-1) >= floor * k(k-1).
  std::int64_t floor = 0;
  std::optional<Graph> floor_witness;
  if (options.floor_proposals > 0) {
    AnnealOptions ao;
    ao.proposals = options.floor_proposals;
    auto h = rt_lower_search(inst, ao, 1);
    if (h.status == RTStatus::Feasible) {
      floor = h.max_edges;
      floor_witness = h.witness;
    }
  }

  std::vector<SmallGraph> level{SmallGraph{}};
  nlohmann::json counts = nlohmann::json::array({1});
  for (int k = 0; k < n; ++k) {
    std::unordered_map<detail::CanonCode, SmallGraph, detail::CanonCodeHash> next;
    std::int64_t need_num = floor * (k + 1) * k;  // e(G_{k+1}) * n(n-1) >= need_num
    std::int64_t nn = static_cast<std::int64_t>(n) * (n - 1);
    for (const auto& g : level) {
      std::uint32_t all = g.all();
      int min_deg = k;
      std::array<int, detail::kSmallMax> deg{};
      for (int v = 0; v < k; ++v) {
        deg[v] = std::popcount(g.adj[v]);
        min_deg = std::min(min_deg, deg[v]);
      }
      int e = g.edges();
      for (std::uint32_t nb = 0; nb <= all; ++nb) {
        int d = std::popcount(nb);
        if (d > min_deg + 1) continue;
        if (static_cast<std::int64_t>(e + d) * nn < need_num) continue;
        // The new vertex must have minimum degree in G_{k+1}.
        bool ok = true;
        for (int v = 0; v < k && ok; ++v) ok = deg[v] + static_cast<int>((nb >> v) & 1U) >= d;
        if (!ok) continue;
        if (detail::has_clique(g, nb, inst.s - 1)) continue;
        if (detail::has_independent_set(g, all & ~nb, inst.m - 1)) continue;
        auto canon = detail::canonical_form(g.extended(nb));
        next.try_emplace(canon.code, canon.graph);
        if (static_cast<std::int64_t>(next.size()) > options.level_cap)
          throw CapExceeded("rt_exact level cap exceeded at order " + std::to_string(k + 1));
      }
    }
    std::vector<std::pair<detail::CanonCode, SmallGraph>> sorted(next.begin(), next.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    level.clear();
    for (auto& [code, g] : sorted) level.push_back(g);
    counts.push_back(level.size());
    if (level.empty()) break;
  }

  RTResult res;
  res.method = "exact";
  const SmallGraph* best = nullptr;
  for (const auto& g : level)
    if (g.n == n && (!best || g.edges() > best->edges())) best = &g;
  if (best) {
    res.status = RTStatus::Feasible;
    res.max_edges = best->edges();
    res.witness = detail::to_graph(*best);
  } else if (floor == 0) {
    res.status = RTStatus::Infeasible;
  } else {
    throw std::logic_error("rt_exact lost the floor witness");  // cannot happen
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  res.stats_json = nlohmann::json{{"edge_floor", floor}, {"level_counts", counts}, {"seconds", secs}}.dump();
  return res;
}

namespace {

class Annealer {
 public:
  Annealer(const RTInstance& inst, const AnnealOptions& opt, std::uint64_t seed)
      : inst_(inst), opt_(opt), rng_(seed), g_(inst.n) {}

  RTResult run() {
    auto started = std::chrono::steady_clock::now();
    if (opt_.warm_start) {
      if (opt_.warm_start->order() != inst_.n) throw ParameterError("warm start order does not match n");
      g_ = *opt_.warm_start;
      repair_cliques();
    }
    co_ = complement(g_);
    edges_ = edge_count(g_);
    alpha_ = std::max(independence_number(g_), std::min(inst_.m - 1, inst_.n));
    consider_best();
    const int n = inst_.n;
    std::int64_t accepted = 0;
    if (n >= 2) {
      double ratio = opt_.proposals > 1 ? std::pow(opt_.t_end / opt_.t_start, 1.0 / (opt_.proposals - 1)) : 1.0;
      double temp = opt_.t_start;
      for (std::int64_t step = 0; step < opt_.proposals; ++step, temp *= ratio) {
        int u = uniform_int(rng_, 0, n - 1);
        int v = uniform_int(rng_, 0, n - 2);
        if (v >= u) ++v;
        bool adding = !g_.adjacent(u, v);
        if (adding && contains_clique_in(g_, g_.neighbors(u) & g_.neighbors(v), inst_.s - 2)) continue;
        int new_alpha = alpha_after_toggle(u, v, adding);
        double delta = (adding ? -1.0 : 1.0) + opt_.penalty * (excess(new_alpha) - excess(alpha_));
        if (delta <= 0 || uniform01(rng_) < std::exp(-delta / temp)) {
          if (adding) {
            g_.add_edge(u, v);
            co_.remove_edge(u, v);
          } else {
            g_.remove_edge(u, v);
            co_.add_edge(u, v);
          }
          edges_ += adding ? 1 : -1;
          alpha_ = new_alpha;
          ++accepted;
          consider_best();
        }
      }
    }
    RTResult res;
    res.method = "heuristic-lower-bound";
    if (best_ && rt_check_witness(*best_, inst_)) {
      res.status = RTStatus::Feasible;
      res.max_edges = edge_count(*best_);
      res.witness = best_;
    } else {
      res.status = RTStatus::InfeasibleNotFound;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    res.stats_json = nlohmann::json{{"proposals", opt_.proposals}, {"accepted", accepted},
                                    {"t_start", opt_.t_start}, {"t_end", opt_.t_end},
                                    {"penalty", opt_.penalty}, {"seconds", secs}}
                         .dump();
    return res;
  }

 private:
  double excess(int alpha) const { return std::max(0, alpha - inst_.m + 1); }

  // Independence number after toggling uv. While feasible only "below m" is
  // tracked (stored as m - 1); once at or above m the value is exact. An edge
  // toggle moves the independence number by at most one.
  int alpha_after_toggle(int u, int v, bool adding) {
    if (adding) {
      if (alpha_ < inst_.m) return alpha_;
      Graph h = g_;
      h.add_edge(u, v);
      return std::max(independence_number(h), inst_.m - 1);
    }
    // Removing uv creates a larger independent set only through one holding both u and v.
    int base = alpha_ < inst_.m ? inst_.m - 1 : alpha_;
    int others = base - 1;
    if (others <= 0) return alpha_ < inst_.m ? inst_.m : alpha_ + 1;
    VertexSet rest = co_.neighbors(u) & co_.neighbors(v);
    bool grows = contains_clique_in(co_, rest, others);
    if (alpha_ < inst_.m) return grows ? inst_.m : alpha_;
    return grows ? alpha_ + 1 : alpha_;
  }

  void repair_cliques() {
    VertexSet w;
    while (contains_clique(g_, inst_.s, &w)) {
      auto m = w.members();
      g_.remove_edge(m[m.size() - 2], m.back());
    }
  }

  void consider_best() {
    if (alpha_ < inst_.m && edges_ > best_edges_) {
      best_edges_ = edges_;
      best_ = g_;
    }
  }

  RTInstance inst_;
  AnnealOptions opt_;
  Rng rng_;
  Graph g_;
  Graph co_;
  std::int64_t edges_ = 0;
  int alpha_ = 0;
  std::int64_t best_edges_ = -1;
  std::optional<Graph> best_;
};

}  // namespace

RTResult rt_lower_search(const RTInstance& inst, const AnnealOptions& options, std::uint64_t seed) {
  inst.validate();
  if (options.proposals < 0) throw ParameterError("proposals must be nonnegative");
  return Annealer(inst, options, seed).run();
}

}  // namespace rtlab

#include "rtlab/regularity.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "rtlab/errors.hpp"
#include "rtlab/rng.hpp"

namespace rtlab {

namespace {

void check_pair(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.universe() != g.order() || b.universe() != g.order())
    throw ParameterError("vertex set universe does not match graph order");
  if (a.empty() || b.empty()) throw ParameterError("empty side");
  if (a.intersects(b)) throw ParameterError("sides overlap");
}

std::int64_t cross_edges(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::int64_t e = 0;
  for (int v = a.first(); v >= 0; v = a.next(v)) e += g.neighbors(v).intersection_count(b);
  return e;
}

// Smallest size k with k >= rho * total.
int min_size(Fraction rho, int total) {
  Fraction need = rho * total;
  std::int64_t k = need.numerator() / need.denominator();
  if (Fraction(k) < need) ++k;
  return static_cast<int>(std::max<std::int64_t>(k, 1));
}

bool deviates(std::int64_t e, std::int64_t x, std::int64_t y, Fraction d, Fraction rho) {
  Fraction dxy(e, x * y);
  Fraction diff = dxy > d ? dxy - d : d - dxy;
  return diff > rho;
}

}  // namespace

Fraction pair_density(const Graph& g, const VertexSet& a, const VertexSet& b) {
  check_pair(g, a, b);
  return Fraction(cross_edges(g, a, b), static_cast<std::int64_t>(a.count()) * b.count());
}

std::string RegularityVerdict::summary() const {
  if (!regular) return "irregular";
  if (mode == RegularityMode::Exact) return "regular";
  return "no violation found in " + std::to_string(samples) + " samples";
}

RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& a, const VertexSet& b, Fraction rho,
                                  RegularityMode mode, std::int64_t samples, std::uint64_t seed) {
  check_pair(g, a, b);
  if (rho <= 0) throw ParameterError("rho must be positive");
  Fraction d = pair_density(g, a, b);
  auto am = a.members();
  auto bm = b.members();
  int na = static_cast<int>(am.size());
  int nb = static_cast<int>(bm.size());
  int xmin = min_size(rho, na);
  int ymin = min_size(rho, nb);
  RegularityVerdict out;
  out.mode = mode;
  if (mode == RegularityMode::Exact) {
    if (na > kExactRegularityCap || nb > kExactRegularityCap)
      throw CapExceeded("exact regularity check is limited to sides of at most 16 vertices");
    // For each X, the extreme densities over |Y| = k come from the k largest
    // and k smallest values of deg_X(y).
    std::vector<std::pair<int, int>> deg(nb);
    for (std::uint32_t xs = 1; xs < (1U << na); ++xs) {
      int xc = std::popcount(xs);
      if (xc < xmin) continue;
      for (int j = 0; j < nb; ++j) {
        int c = 0;
        for (int i = 0; i < na; ++i)
          if ((xs >> i & 1U) && g.adjacent(am[i], bm[j])) ++c;
        deg[j] = {c, j};
      }
      std::sort(deg.begin(), deg.end());
      std::vector<std::int64_t> low(nb + 1, 0), high(nb + 1, 0);
      for (int k = 1; k <= nb; ++k) {
        low[k] = low[k - 1] + deg[k - 1].first;
        high[k] = high[k - 1] + deg[nb - k].first;
      }
      for (int k = ymin; k <= nb; ++k) {
        bool hi_bad = deviates(high[k], xc, k, d, rho);
        bool lo_bad = deviates(low[k], xc, k, d, rho);
        if (!hi_bad && !lo_bad) continue;
        VertexSet x(g.order()), y(g.order());
        for (int i = 0; i < na; ++i)
          if (xs >> i & 1U) x.set(am[i]);
        for (int t = 0; t < k; ++t) y.set(bm[hi_bad ? deg[nb - 1 - t].second : deg[t].second]);
        out.regular = false;
        out.x = x;
        out.y = y;
        return out;
      }
    }
    return out;
  }
  Rng rng(seed);
  auto random_subset = [&](const std::vector<int>& from, int lo) {
    int size = uniform_int(rng, lo, static_cast<int>(from.size()));
    std::vector<int> pool = from;
    VertexSet s(g.order());
    for (int i = 0; i < size; ++i) {
      int j = i + static_cast<int>(uniform_below(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
      s.set(pool[i]);
    }
    return s;
  };
  for (std::int64_t i = 0; i < samples; ++i) {
    VertexSet x = random_subset(am, xmin);
    VertexSet y = random_subset(bm, ymin);
    out.samples = i + 1;
    if (deviates(cross_edges(g, x, y), x.count(), y.count(), d, rho)) {
      out.regular = false;
      out.x = x;
      out.y = y;
      return out;
    }
  }
  return out;
}

std::string ClusterGraph::to_json() const {
  nlohmann::json pj = nlohmann::json::array();
  for (const auto& p : pairs)
    pj.push_back({{"i", p.i},
                  {"j", p.j},
                  {"density", to_string(p.density)},
                  {"regular", p.regular},
                  {"mode", p.mode == RegularityMode::Exact ? "exact" : "sampled"},
                  {"edge", p.edge}});
  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < graph.order(); ++u)
    for (int v = u + 1; v < graph.order(); ++v)
      if (graph.adjacent(u, v)) edges.push_back({u, v});
  return nlohmann::json{{"clusters", graph.order()}, {"edges", edges}, {"pairs", pj}}.dump();
}

ClusterGraph cluster_graph(const Graph& g, const std::vector<VertexSet>& classes, Fraction rho, Fraction d_min,
                           std::int64_t samples, std::uint64_t seed) {
  int k = static_cast<int>(classes.size());
  for (const auto& c : classes)
    if (c.count() != classes.front().count()) throw ParameterError("classes must have equal sizes");
  ClusterGraph out{Graph(k), {}};
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      ClusterEdge e;
      e.i = i;
      e.j = j;
      e.density = pair_density(g, classes[i], classes[j]);
      bool exact = classes[i].count() <= kExactRegularityCap && classes[j].count() <= kExactRegularityCap;
      e.mode = exact ? RegularityMode::Exact : RegularityMode::Sampled;
      auto verdict = is_regular_pair(g, classes[i], classes[j], rho, e.mode, samples,
                                     derive_seed(seed, static_cast<std::uint64_t>(i * k + j)));
      e.regular = verdict.regular;
      e.edge = e.regular && e.density >= d_min;
      if (e.edge) out.graph.add_edge(i, j);
      out.pairs.push_back(e);
    }
  }
  return out;
}

namespace {

std::int64_t count_from(const Graph& g, const std::vector<VertexSet>& parts, std::size_t level,
                        const VertexSet& cand) {
  VertexSet here = cand & parts[level];
  if (level + 1 == parts.size()) return here.count();
  std::int64_t total = 0;
  for (int v = here.first(); v >= 0; v = here.next(v)) total += count_from(g, parts, level + 1, cand & g.neighbors(v));
  return total;
}

}  // namespace

std::int64_t count_transversal_cliques(const Graph& g, const std::vector<VertexSet>& parts) {
  if (parts.empty()) return 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].universe() != g.order()) throw ParameterError("vertex set universe does not match graph order");
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (parts[i].intersects(parts[j])) throw ParameterError("parts must be disjoint");
  }
  return count_from(g, parts, 0, VertexSet::full(g.order()));
}

std::vector<VertexSet> parse_partition(const std::string& json, int n) {
  std::vector<VertexSet> out;
  try {
    auto j = nlohmann::json::parse(json);
    if (!j.is_array()) throw ParseError("partition must be a JSON list of lists");
    for (const auto& cls : j) {
      VertexSet s(n);
      for (const auto& v : cls) {
        int x = v.get<int>();
        if (x < 0 || x >= n) throw ParseError("partition vertex out of range");
        s.set(x);
      }
      out.push_back(s);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid partition JSON: ") + e.what());
  }
  return out;
}

std::string partition_to_json(const std::vector<VertexSet>& parts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : parts) j.push_back(p.members());
  return j.dump();
}

}  // namespace rtlab

#include "small_graph.hpp"

#include <algorithm>

#include "rtlab/errors.hpp"

namespace rtlab::detail {

namespace {

using Cells = std::vector<std::uint32_t>;

// Refines an ordered partition to the coarsest equitable one. Splits are
// ordered by neighbour count, which keeps the result labelling-invariant.
void refine(const SmallGraph& g, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t si = 0; si < cells.size() && !changed; ++si) {
      std::uint32_t splitter = cells[si];
      for (std::size_t xi = 0; xi < cells.size(); ++xi) {
        std::uint32_t x = cells[xi];
        if (std::popcount(x) == 1) continue;
        std::array<std::uint32_t, kSmallMax + 1> by_count{};
        int lo = kSmallMax + 1, hi = -1;
        for (std::uint32_t m = x; m; m &= m - 1) {
          int v = std::countr_zero(m);
          int c = std::popcount(g.adj[v] & splitter);
          by_count[c] |= 1U << v;
          lo = std::min(lo, c);
          hi = std::max(hi, c);
        }
        if (lo == hi) continue;
        Cells parts;
        for (int c = lo; c <= hi; ++c)
          if (by_count[c]) parts.push_back(by_count[c]);
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(xi));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(xi), parts.begin(), parts.end());
        changed = true;
        break;
      }
    }
  }
}

CanonCode leaf_code(const SmallGraph& g, const Cells& cells) {
  std::array<int, kSmallMax> perm{};
  for (std::size_t i = 0; i < cells.size(); ++i) perm[i] = std::countr_zero(cells[i]);
  CanonCode code{};
  int bit = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j, ++bit)
      if (g.adjacent(perm[i], perm[j])) code[bit >> 6] |= std::uint64_t{1} << (63 - (bit & 63));
  return code;
}

bool twins(const SmallGraph& g, int u, int v) {
  std::uint32_t mask = ~((1U << u) | (1U << v));
  return (g.adj[u] & mask) == (g.adj[v] & mask);
}

struct Search {
  const SmallGraph& g;
  bool have = false;
  CanonCode best{};
  Cells best_cells;

  void run(Cells cells) {
    refine(g, cells);
    if (static_cast<int>(cells.size()) == g.n) {
      CanonCode code = leaf_code(g, cells);
      if (!have || code > best) {
        have = true;
        best = code;
        best_cells = cells;
      }
      return;
    }
    std::size_t target = 0;
    while (std::popcount(cells[target]) == 1) ++target;
    std::uint32_t cell = cells[target];
    std::uint32_t tried = 0;
    for (std::uint32_t m = cell; m; m &= m - 1) {
      int v = std::countr_zero(m);
      bool redundant = false;
      for (std::uint32_t t = tried; t && !redundant; t &= t - 1)
        redundant = twins(g, v, std::countr_zero(t));
      if (redundant) continue;
      tried |= 1U << v;
      Cells next = cells;
      next[target] = cell & ~(1U << v);
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(target), 1U << v);
      run(std::move(next));
    }
  }
};

}  // namespace

Canonical canonical_form(const SmallGraph& g) {
  Canonical out;
  if (g.n == 0) return out;
  Search search{g, false, {}, {}};
  search.run(Cells{g.all()});
  out.code = search.best;
  out.graph.n = g.n;
  std::array<int, kSmallMax> label{};
  for (std::size_t i = 0; i < search.best_cells.size(); ++i)
    label[std::countr_zero(search.best_cells[i])] = static_cast<int>(i);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (g.adjacent(u, v)) out.graph.add_edge(label[u], label[v]);
  return out;
}

bool has_clique(const SmallGraph& g, std::uint32_t cand, int k) {
  if (k <= 0) return true;
  if (std::popcount(cand) < k) return false;
  if (k == 1) return true;
  while (cand) {
    if (std::popcount(cand) < k) return false;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (has_clique(g, cand & g.adj[v], k - 1)) return true;
  }
  return false;
}

bool has_independent_set(const SmallGraph& g, std::uint32_t cand, int k) {
  if (k <= 0) return true;
  if (std::popcount(cand) < k) return false;
  if (k == 1) return true;
  while (cand) {
    if (std::popcount(cand) < k) return false;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (has_independent_set(g, cand & ~g.adj[v], k - 1)) return true;
  }
  return false;
}

namespace {

void clique_bb(const SmallGraph& g, std::uint32_t cand, int size, int& best) {
  if (!cand) {
    best = std::max(best, size);
    return;
  }
  while (cand) {
    if (size + std::popcount(cand) <= best) return;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    clique_bb(g, cand & g.adj[v], size + 1, best);
  }
}

}  // namespace

int max_clique(const SmallGraph& g, std::uint32_t cand) {
  int best = 0;
  clique_bb(g, cand, 0, best);
  return best;
}

int independence_number(const SmallGraph& g) {
  SmallGraph co;
  co.n = g.n;
  for (int v = 0; v < g.n; ++v) co.adj[v] = g.all() & ~g.adj[v] & ~(1U << v);
  return max_clique(co, co.all());
}

SmallGraph to_small(const Graph& g) {
  if (g.order() > kSmallMax) throw CapExceeded("graph too large for exhaustive routines");
  SmallGraph s;
  s.n = g.order();
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.adjacent(u, v)) s.add_edge(u, v);
  return s;
}

Graph to_graph(const SmallGraph& s) {
  Graph g(s.n);
  for (int u = 0; u < s.n; ++u)
    for (int v = u + 1; v < s.n; ++v)
      if (s.adjacent(u, v)) g.add_edge(u, v);
  return g;
}

}  // namespace rtlab::detail

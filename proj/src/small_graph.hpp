#pragma once

// Compact graphs on at most kSmallMax vertices with one 32-bit adjacency mask
// per vertex, plus a canonical labelling used for isomorph rejection in the
// exhaustive searches.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "rtlab/graph.hpp"

namespace rtlab::detail {

inline constexpr int kSmallMax = 22;

struct SmallGraph {
  int n = 0;
  std::array<std::uint32_t, kSmallMax> adj{};

  std::uint32_t all() const { return n == 32 ? ~0U : ((1U << n) - 1); }
  bool adjacent(int u, int v) const { return (adj[u] >> v) & 1U; }
  void add_edge(int u, int v) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  int edges() const {
    int twice = 0;
    for (int v = 0; v < n; ++v) twice += std::popcount(adj[v]);
    return twice / 2;
  }
  /// Copy with one more vertex joined to `nbrs`.
  SmallGraph extended(std::uint32_t nbrs) const {
    SmallGraph h = *this;
    h.adj[h.n] = nbrs;
    for (std::uint32_t m = nbrs; m; m &= m - 1) h.adj[std::countr_zero(m)] |= 1U << h.n;
    ++h.n;
    return h;
  }
};

/// Upper-triangle adjacency bits in canonical vertex order (fits kSmallMax).
using CanonCode = std::array<std::uint64_t, 4>;

struct CanonCodeHash {
  std::size_t operator()(const CanonCode& c) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto w : c) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

struct Canonical {
  SmallGraph graph;  // relabelled copy
  CanonCode code;
};

/// Canonical relabelling: two graphs are isomorphic iff their codes are equal.
Canonical canonical_form(const SmallGraph& g);

bool has_clique(const SmallGraph& g, std::uint32_t cand, int k);
bool has_independent_set(const SmallGraph& g, std::uint32_t cand, int k);
int max_clique(const SmallGraph& g, std::uint32_t cand);
int independence_number(const SmallGraph& g);

SmallGraph to_small(const Graph& g);
Graph to_graph(const SmallGraph& g);

}  // namespace rtlab::detail

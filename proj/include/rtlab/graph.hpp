#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rtlab {

/// Bitset over the vertex universe {0, ..., universe-1} of a Graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe);
  static VertexSet from_list(int universe, std::span<const int> members);
  static VertexSet full(int universe);

  int universe() const { return universe_; }
  int count() const;
  bool empty() const;

  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  /// Lowest member, or -1 when empty.
  int first() const;
  /// Lowest member strictly greater than v, or -1.
  int next(int v) const;

  std::vector<int> members() const;

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  /// Removes every member of other.
  VertexSet& subtract(const VertexSet& other);
  VertexSet complement() const;

  bool intersects(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;
  int intersection_count(const VertexSet& other) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void trim();

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

VertexSet operator&(VertexSet a, const VertexSet& b);
VertexSet operator|(VertexSet a, const VertexSet& b);

/// Dense undirected simple graph with one adjacency bitset per vertex.
class Graph {
 public:
  static constexpr int kMaxOrder = 4096;

  Graph() = default;
  /// Empty graph on n vertices; throws CapExceeded when n > kMaxOrder.
  explicit Graph(int n);

  int order() const { return n_; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const VertexSet& neighbors(int v) const { return rows_[v]; }
  int degree(int v) const { return rows_[v].count(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexSet> rows_;
};

// Named small graphs.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();
Graph complete_bipartite(int a, int b);

std::int64_t edge_count(const Graph& g);
Graph complement(const Graph& g);

/// True iff G has a clique of size s. When witness is non-null and a clique
/// exists, it receives the lexicographically least s-clique.
bool contains_clique(const Graph& g, int s, VertexSet* witness = nullptr);
/// Same search restricted to the candidate set `within`.
bool contains_clique_in(const Graph& g, const VertexSet& within, int s,
                        VertexSet* witness = nullptr);

int clique_number(const Graph& g);
/// Maximum clique inside `within` (0 when within is empty).
int clique_number_in(const Graph& g, const VertexSet& within);
/// A maximum clique of g (deterministic).
VertexSet maximum_clique(const Graph& g);

int independence_number(const Graph& g);
/// Largest |S| such that G[S] has no K_d.
int d_independence_number(const Graph& g, int d);

bool is_clique(const Graph& g, const VertexSet& s);

VertexSet common_neighborhood(const Graph& g, const VertexSet& s);
Graph induced_subgraph(const Graph& g, const VertexSet& s);

}  // namespace rtlab

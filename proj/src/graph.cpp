#include "rtlab/graph.hpp"

#include <algorithm>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

int words_for(int universe) { return (universe + 63) / 64; }

}  // namespace

VertexSet::VertexSet(int universe) : universe_(universe), words_(words_for(universe), 0) {
  if (universe < 0) throw ParameterError("negative universe");
}

VertexSet VertexSet::from_list(int universe, std::span<const int> members) {
  VertexSet s(universe);
  for (int v : members) {
    if (v < 0 || v >= universe) throw ParameterError("vertex index out of range");
    s.set(v);
  }
  return s;
}

VertexSet VertexSet::full(int universe) {
  VertexSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.trim();
  return s;
}

void VertexSet::trim() {
  if (universe_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
}

int VertexSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

int VertexSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
  return -1;
}

int VertexSet::next(int v) const {
  int start = v + 1;
  if (start >= universe_) return -1;
  std::size_t i = start >> 6;
  std::uint64_t w = words_[i] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (w) return static_cast<int>(i * 64) + std::countr_zero(w);
    if (++i >= words_.size()) return -1;
    w = words_[i];
  }
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
  return out;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

VertexSet VertexSet::complement() const {
  VertexSet s(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
  s.trim();
  return s;
}

bool VertexSet::intersects(const VertexSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

int VertexSet::intersection_count(const VertexSet& other) const {
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
  return c;
}

VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw ParameterError("negative vertex count");
  if (n > kMaxOrder) throw CapExceeded("graph order " + std::to_string(n) + " exceeds cap " +
                                       std::to_string(kMaxOrder));
  rows_.assign(n, VertexSet(n));
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ParameterError("vertex index out of range");
  if (u == v) throw ParameterError("self-loops are not allowed");
  rows_[u].set(v);
  rows_[v].set(u);
}

void Graph::remove_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ParameterError("vertex index out of range");
  rows_[u].reset(v);
  rows_[v].reset(u);
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw ParameterError("cycle needs at least 3 vertices");
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

std::int64_t edge_count(const Graph& g) {
  std::int64_t twice = 0;
  for (int v = 0; v < g.order(); ++v) twice += g.degree(v);
  return twice / 2;
}

Graph complement(const Graph& g) {
  Graph h(g.order());
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

namespace {

// Branch and bound maximum clique over a relabelled copy of the candidate
// subgraph. Vertices are sorted by non-increasing degree; greedy colouring
// supplies the bound at every node.
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, const VertexSet& within) {
    order_ = within.members();
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return g.neighbors(a).intersection_count(within) > g.neighbors(b).intersection_count(within);
    });
    k_ = static_cast<int>(order_.size());
    words_ = (k_ + 63) / 64;
    adj_.assign(static_cast<std::size_t>(k_) * words_, 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        if (i != j && g.adjacent(order_[i], order_[j]))
          adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  }

  // Largest clique, stopping early once `goal` vertices are found.
  std::vector<int> run(int goal) {
    goal_ = goal;
    best_.clear();
    current_.clear();
    std::vector<std::uint64_t> p(words_, 0);
    for (int i = 0; i < k_; ++i) p[i >> 6] |= std::uint64_t{1} << (i & 63);
    if (k_ > 0) expand(p);
    std::vector<int> out;
    for (int i : best_) out.push_back(order_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const std::uint64_t* row(int i) const { return adj_.data() + static_cast<std::size_t>(i) * words_; }

  bool done() const { return static_cast<int>(best_.size()) >= goal_; }

  void expand(std::vector<std::uint64_t>& p) {
    std::vector<int> verts;
    std::vector<int> colors;
    color_sort(p, verts, colors);
    for (int idx = static_cast<int>(verts.size()) - 1; idx >= 0; --idx) {
      if (current_.size() + colors[idx] <= best_.size()) return;
      int v = verts[idx];
      current_.push_back(v);
      std::vector<std::uint64_t> np(words_);
      bool any = false;
      const std::uint64_t* r = row(v);
      for (int w = 0; w < words_; ++w) {
        np[w] = p[w] & r[w];
        any |= np[w] != 0;
      }
      if (!any) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(np);
      }
      current_.pop_back();
      if (done()) return;
      p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }

  void color_sort(const std::vector<std::uint64_t>& p, std::vector<int>& verts,
                  std::vector<int>& colors) const {
    std::vector<std::uint64_t> uncolored = p;
    std::vector<std::uint64_t> q(words_);
    int color = 0;
    bool left = true;
    while (left) {
      ++color;
      q = uncolored;
      for (int w = 0; w < words_; ++w) {
        while (q[w]) {
          int b = std::countr_zero(q[w]);
          int v = w * 64 + b;
          q[w] &= q[w] - 1;
          uncolored[w] &= ~(std::uint64_t{1} << b);
          const std::uint64_t* r = row(v);
          for (int x = w; x < words_; ++x) q[x] &= ~r[x];
          verts.push_back(v);
          colors.push_back(color);
        }
      }
      left = std::any_of(uncolored.begin(), uncolored.end(), [](std::uint64_t x) { return x != 0; });
    }
  }

  std::vector<int> order_;
  int k_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<int> best_;
  std::vector<int> current_;
  int goal_ = 0;
};

void check_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw ParameterError("vertex set universe does not match graph order");
}

bool has_clique(const Graph& g, const VertexSet& within, int s) {
  if (s <= 0) return true;
  if (within.count() < s) return false;
  CliqueSearch search(g, within);
  return static_cast<int>(search.run(s).size()) >= s;
}

}  // namespace

bool contains_clique_in(const Graph& g, const VertexSet& within, int s, VertexSet* witness) {
  check_universe(g, within);
  if (s < 1) throw ParameterError("clique size must be at least 1");
  if (!has_clique(g, within, s)) return false;
  if (witness) {
    // Lexicographically least witness: fix vertices in ascending order as long
    // as the remaining candidates still complete an s-clique.
    VertexSet chosen(g.order());
    VertexSet cand = within;
    int need = s;
    for (int v = cand.first(); need > 0 && v >= 0; v = cand.next(v)) {
      VertexSet rest = cand & g.neighbors(v);
      for (int u = rest.first(); u >= 0 && u <= v; u = rest.next(u)) rest.reset(u);
      if (has_clique(g, rest, need - 1)) {
        chosen.set(v);
        --need;
        cand = rest;
        cand.set(v);  // keep iteration position valid; v itself is skipped by next()
      }
    }
    *witness = chosen;
  }
  return true;
}

bool contains_clique(const Graph& g, int s, VertexSet* witness) {
  return contains_clique_in(g, VertexSet::full(g.order()), s, witness);
}

int clique_number_in(const Graph& g, const VertexSet& within) {
  check_universe(g, within);
  CliqueSearch search(g, within);
  return static_cast<int>(search.run(g.order() + 1).size());
}

int clique_number(const Graph& g) { return clique_number_in(g, VertexSet::full(g.order())); }

VertexSet maximum_clique(const Graph& g) {
  CliqueSearch search(g, VertexSet::full(g.order()));
  auto members = search.run(g.order() + 1);
  return VertexSet::from_list(g.order(), members);
}

int independence_number(const Graph& g) { return clique_number(complement(g)); }

namespace {

class DIndependenceSearch {
 public:
  DIndependenceSearch(const Graph& g, int d) : g_(g), d_(d) {}

  int run() {
    VertexSet s(g_.order());
    VertexSet p = VertexSet::full(g_.order());
    best_ = 0;
    branch(s, 0, p);
    return best_;
  }

 private:
  // Greedy clique cover of p; each clique can contribute at most d-1 vertices.
  int bound(const VertexSet& p) const {
    int total = 0;
    VertexSet left = p;
    while (!left.empty()) {
      VertexSet cls(g_.order());
      VertexSet cand = left;
      while (!cand.empty()) {
        int v = cand.first();
        cls.set(v);
        cand.reset(v);
        cand &= g_.neighbors(v);
      }
      total += std::min(cls.count(), d_ - 1);
      left.subtract(cls);
    }
    return total;
  }

  bool can_add(const VertexSet& s, int v) const {
    if (d_ == 2) return !s.intersects(g_.neighbors(v));
    return !has_clique(g_, s & g_.neighbors(v), d_ - 1);
  }

  void branch(VertexSet& s, int size, VertexSet p) {
    // Drop candidates that can no longer join s.
    for (int v = p.first(); v >= 0; v = p.next(v))
      if (!can_add(s, v)) p.reset(v);
    if (p.empty()) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + p.count() <= best_) return;
    if (size + bound(p) <= best_) return;
    // Branch on the candidate with most neighbours among candidates.
    int pick = -1;
    int pick_deg = -1;
    for (int v = p.first(); v >= 0; v = p.next(v)) {
      int deg = g_.neighbors(v).intersection_count(p);
      if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    if (pick_deg == 0) {
      // Candidates are pairwise non-adjacent and each is addable alone; with d >= 2
      // they can all be added together.
      best_ = std::max(best_, size + p.count());
      return;
    }
    p.reset(pick);
    s.set(pick);
    branch(s, size + 1, p);
    s.reset(pick);
    branch(s, size, p);
  }

  const Graph& g_;
  int d_;
  int best_ = 0;
};

}  // namespace

int d_independence_number(const Graph& g, int d) {
  if (d < 2) throw ParameterError("d must be at least 2");
  if (d == 2) return independence_number(g);
  DIndependenceSearch search(g, d);
  return search.run();
}

bool is_clique(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  for (int v = s.first(); v >= 0; v = s.next(v)) {
    VertexSet others = s;
    others.reset(v);
    if (!others.subset_of(g.neighbors(v))) return false;
  }
  return true;
}

VertexSet common_neighborhood(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  if (s.empty()) throw ParameterError("empty query set");
  VertexSet out = VertexSet::full(g.order());
  for (int v = s.first(); v >= 0; v = s.next(v)) out &= g.neighbors(v);
  return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  if (s.empty()) throw ParameterError("empty vertex set");
  auto members = s.members();
  Graph h(static_cast<int>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.adjacent(members[i], members[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

}  // namespace rtlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/fraction.hpp"
#include "rtlab/graph.hpp"

namespace rtlab {

/// e(A, B) / (|A| |B|) for disjoint nonempty A, B.
Fraction pair_density(const Graph& g, const VertexSet& a, const VertexSet& b);

enum class RegularityMode { Exact, Sampled };

struct RegularityVerdict {
  /// Exact mode: the pair is rho-regular. Sampled mode: no violation was found.
  bool regular = true;
  RegularityMode mode = RegularityMode::Exact;
  std::int64_t samples = 0;
  /// A violating pair (X, Y) when one was found.
  std::optional<VertexSet> x;
  std::optional<VertexSet> y;
  std::string summary() const;
};

inline constexpr int kExactRegularityCap = 16;

/// Checks |d(X,Y) - d(A,B)| <= rho for all X in A, Y in B with |X| >= rho|A|,
/// |Y| >= rho|B|. Exact mode needs |A|, |B| <= 16 (CapExceeded otherwise);
/// sampled mode tests `samples` random pairs and can only refute.
RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& a, const VertexSet& b, Fraction rho,
                                  RegularityMode mode, std::int64_t samples = 2000, std::uint64_t seed = 1);

struct ClusterEdge {
  int i = 0;
  int j = 0;
  Fraction density;
  bool regular = false;
  RegularityMode mode = RegularityMode::Exact;
  bool edge = false;
};

struct ClusterGraph {
  Graph graph;
  std::vector<ClusterEdge> pairs;
  std::string to_json() const;
};

/// One vertex per class; i ~ j iff the pair is rho-regular (exact when both
/// classes are within the exact cap, otherwise sampled) with density >= d_min.
ClusterGraph cluster_graph(const Graph& g, const std::vector<VertexSet>& classes, Fraction rho, Fraction d_min,
                           std::int64_t samples = 2000, std::uint64_t seed = 1);

/// Number of cliques with exactly one vertex in each part.
std::int64_t count_transversal_cliques(const Graph& g, const std::vector<VertexSet>& parts);

/// Partition as a JSON list of vertex-index lists.
std::vector<VertexSet> parse_partition(const std::string& json, int n);
std::string partition_to_json(const std::vector<VertexSet>& parts);

}  // namespace rtlab

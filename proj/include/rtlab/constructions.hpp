#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/graph.hpp"

namespace rtlab {

/// Class sizes of T(n, r): the first n mod r classes get one extra vertex.
std::vector<int> turan_class_sizes(int n, int r);
/// Contiguous vertex classes of T(n, r).
std::vector<VertexSet> turan_classes(int n, int r);
Graph turan(int n, int r);

/// Produces a graph on the requested number of vertices.
using InnerGenerator = std::function<Graph(int size)>;

/// T(n, r) with a generated graph installed inside every class.
Graph compose_turan(int n, int r, const InnerGenerator& inner);
/// T(n, r) with a fixed inner graph of order floor(n/r). A class with one
/// extra vertex receives the inner graph plus a false twin of its vertex 0,
/// which keeps the clique number of the class unchanged.
Graph compose_turan(int n, int r, const Graph& inner);

/// Erdos-Renyi G(n, p) from a seeded generator.
Graph random_graph(int n, double p, std::uint64_t seed);

/// Disjoint union plus all cross edges.
Graph join(const Graph& a, const Graph& b);

/// floor(4n / (3r - 2)).
int lower_be_h(int n, int r);
/// B joined to T(n - |B|, r - 2) with an inner graph in each Turán class.
Graph lower_be(int n, int r, const Graph& b, const InnerGenerator& inner);

struct BollobasErdosParams {
  int h = 100;
  int dim = 20;
  /// Cross edges join points at angle below theta_cross.
  double theta_cross = 0;
  /// Edges inside a part join points at angle above theta_within.
  double theta_within = 0;
  std::uint64_t seed = 1;
};

/// Default angles: pi/2 - 0.12 and pi - 0.23. Any pair with
/// pi - theta_within <= min(pi/3, 2 (pi/2 - theta_cross)) is K_4-free.
BollobasErdosParams default_bollobas_erdos(int h, int dim, std::uint64_t seed);
bool bollobas_erdos_angles_k4_free(double theta_cross, double theta_within);
/// Two groups of h/2 seeded random unit vectors on the sphere S^dim.
Graph bollobas_erdos(const BollobasErdosParams& p);

/// Named inner graph generators:
///   "empty", "complete", "cycle" (cycle of the class size; fewer than 3
///   vertices give a path), "c5", "petersen", "graph6:<code>" (fixed graphs,
///   installed with twins when the class is larger),
///   "ramsey:<t>" (K_t-free graph of minimum independence number found by the
///   Ramsey oracle), "triangle-free-random:<seed>" (random maximal triangle-free).
InnerGenerator named_inner(const std::string& name, std::int64_t budget = 2000);
/// Fixed graph behind a name, if the name denotes one.
std::optional<Graph> named_fixed_graph(const std::string& name);

/// Random maximal K_t-free graph (random greedy process).
Graph random_maximal_kt_free(int n, int t, std::uint64_t seed);

/// Declarative construction description; serialises to JSON.
struct ConstructionSpec {
  enum class Kind { Turan, Compose, BEJoin, BollobasErdos };
  Kind kind = Kind::Turan;
  int n = 0;
  int r = 0;
  std::string inner = "empty";
  /// BE join only: explicit h (otherwise lower_be_h) and the B part.
  std::optional<int> h;
  /// B part for BEJoin: graph6 text, or empty to use a Bollobás–Erdős graph.
  std::string b_graph6;
  BollobasErdosParams be;

  std::string to_json() const;
  static ConstructionSpec from_json(const std::string& text);
};

struct ConstructionResult {
  Graph graph;
  /// JSON sidecar: the construction document plus measured statistics.
  std::string sidecar_json;
};

struct StatsOptions {
  bool clique_number = true;
  bool independence_number = true;
};

ConstructionResult build_construction(const ConstructionSpec& spec, const StatsOptions& stats = {});

}  // namespace rtlab

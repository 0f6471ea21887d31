#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rtlab/graph.hpp"

namespace rtlab {

/// Maximum edges of a K_s-free graph on n vertices with independence number < m.
struct RTInstance {
  int n = 0;
  int s = 0;
  int m = 0;
  void validate() const;
};

enum class RTStatus { Feasible, Infeasible, InfeasibleNotFound };
const char* to_string(RTStatus s);

struct RTResult {
  RTStatus status = RTStatus::InfeasibleNotFound;
  std::int64_t max_edges = 0;
  std::optional<Graph> witness;
  /// "exact" or "heuristic-lower-bound".
  std::string method;
  /// Search statistics as a JSON object.
  std::string stats_json = "{}";
};

struct RTExactOptions {
  /// Largest n accepted.
  int cap = 10;
  /// Proposals for the annealing run that seeds the edge threshold (0 disables it).
  std::int64_t floor_proposals = 30000;
  std::int64_t level_cap = 5'000'000;
};

/// Exact value by vertex-by-vertex generation of min-degree deletion chains
/// with isomorph rejection. Throws CapExceeded when n exceeds options.cap.
RTResult rt_exact(const RTInstance& inst, const RTExactOptions& options = {});

struct AnnealOptions {
  std::int64_t proposals = 1'000'000;
  double t_start = 2.0;
  double t_end = 0.02;
  /// Energy charged per unit of independence number at or above m.
  double penalty = 4.0;
  std::optional<Graph> warm_start;
};

/// Simulated annealing over edge toggles; K_s-freeness is never violated,
/// independence number >= m is penalised. Reports only verified witnesses.
RTResult rt_lower_search(const RTInstance& inst, const AnnealOptions& options, std::uint64_t seed);

/// True iff g is K_s-free with independence number < m. Throws on order mismatch.
bool rt_check_witness(const Graph& g, const RTInstance& inst);

}  // namespace rtlab

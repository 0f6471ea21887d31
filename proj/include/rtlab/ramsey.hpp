#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rtlab/graph.hpp"

namespace rtlab {

/// Limits for the exhaustive (s,t)-graph enumeration.
struct EnumerationLimits {
  /// Maximum number of isomorphism classes kept on one level.
  std::int64_t level_cap = 2'000'000;
};

struct RamseyRecord {
  int s = 0;
  int t = 0;
  int lo = 0;
  int hi = 0;
  bool exact() const { return lo == hi; }
  /// "exact-search", "cached-exact", "formula" or "formula-bound".
  std::string provenance;
  int n_max = 0;
  /// Isomorphism classes of K_s-free graphs with independence number < t, per order.
  std::vector<std::int64_t> level_counts;
  /// A largest (s,t)-graph seen (certifies R(s,t) > its order).
  std::optional<Graph> witness;
};

/// R(s,t) by exhaustive level-wise enumeration up to n_max vertices. Returns
/// an interval when n_max or the level cap is reached first.
RamseyRecord ramsey_exact(int s, int t, int n_max, const EnumerationLimits& limits = {});

struct QRecord {
  int t = 0;
  int n = 0;
  int lo = 0;
  int hi = 0;
  bool exact() const { return lo == hi; }
  std::string provenance;
  /// K_t-free graph on n vertices with independence number hi.
  std::optional<Graph> witness;
};

struct QOptions {
  /// Largest n attempted exhaustively for t = 3, 4 and t >= 5.
  int reach_t3 = 12;
  int reach_t4 = 10;
  int reach_other = 10;
  EnumerationLimits limits;
  /// Local search effort when out of exhaustive reach.
  std::int64_t heuristic_budget = 20000;
  std::uint64_t seed = 1;
};

int q_reach(int t, const QOptions& options);

/// Minimum independence number over K_t-free graphs on n vertices.
QRecord q_exact(int t, int n, const QOptions& options = {});

struct BoundInterval {
  double lo = 0;
  double hi = 0;
  /// True when the implied constants of an asymptotic bound are unknown.
  bool up_to_constants = false;
};

/// Asymptotic bound formulas for Q(t,n), logarithms base 2. For t = 3 the
/// constants 1/sqrt(2) and sqrt(2) are used; for t >= 4 c1, c2 are free.
BoundInterval q_bounds(int t, int n, double c1 = 1.0, double c2 = 1.0);

struct MinAlphaResult {
  Graph graph;
  int alpha = 0;
  bool certified = false;
  /// "exact-search" or "local-search".
  std::string method;
};

/// A K_t-free graph on n vertices with independence number as small as the
/// budget allows; certified when it matches the exact minimum.
MinAlphaResult min_alpha_graph(int t, int n, std::int64_t budget = 20000, std::uint64_t seed = 1);

/// Persistent record store, one JSON object per line. Witnesses are
/// re-verified when loaded; failing lines are counted and dropped.
class RamseyCache {
 public:
  struct Entry {
    std::string kind;  // "R" or "Q"
    int s = 0;         // R: clique size; Q: unused (0)
    int t = 0;
    int n = 0;         // Q: order; R: n_max used
    int lo = 0;
    int hi = 0;
    std::string witness_graph6;
    std::string provenance;
    std::string params;  // JSON object text with the search parameters
  };

  void put_r(const RamseyRecord& rec, const EnumerationLimits& limits);
  void put_q(const QRecord& rec, const QOptions& options);
  std::optional<RamseyRecord> get_r(int s, int t) const;
  std::optional<QRecord> get_q(int t, int n) const;

  /// Returns the number of rejected lines.
  int load(const std::string& path);
  void save(const std::string& path) const;
  std::string to_jsonl() const;
  int load_jsonl(const std::string& text);

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static bool verify(const Entry& e);
  void upsert(Entry e);
  std::vector<Entry> entries_;
};

}  // namespace rtlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/graph.hpp"
#include "rtlab/regularity.hpp"

namespace rtlab {

/// r-uniform r-partite hypergraph with r parts of N vertices each. Parts hold
/// graph vertex ids; an edge is stored by its positions inside the parts,
/// packed as a mixed-radix code with part 0 most significant.
class PartiteHypergraph {
 public:
  /// Largest N^r cell count held in the dense edge table.
  static constexpr std::int64_t kMaxCells = std::int64_t{1} << 28;

  PartiteHypergraph() = default;
  PartiteHypergraph(std::vector<std::vector<int>> parts);

  int r() const { return static_cast<int>(parts_.size()); }
  int part_size() const { return n_; }
  const std::vector<std::vector<int>>& parts() const { return parts_; }
  std::int64_t cells() const { return cells_; }
  std::int64_t edge_count() const { return edges_; }

  std::int64_t code(const std::vector<int>& positions) const;
  std::vector<int> positions(std::int64_t code) const;
  bool has(std::int64_t code) const { return (bits_[code >> 6] >> (code & 63)) & 1U; }
  void add(std::int64_t code);
  /// All edge codes in increasing order.
  std::vector<std::int64_t> edges() const;
  /// Edge as graph vertex ids, one per part.
  std::vector<int> vertices(std::int64_t code) const;

 private:
  std::vector<std::vector<int>> parts_;
  int n_ = 0;
  std::int64_t cells_ = 0;
  std::int64_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// H^0: transversal tuples spanning cliques of g. Parts must be disjoint and of equal size.
PartiteHypergraph transversal_clique_hypergraph(const Graph& g, const std::vector<VertexSet>& parts);

/// Exact number of edge sets S of h with 1 <= |S| <= delta and weight exactly w
/// such that fewer than beta*N vertices v of prev's first part have e+v in prev
/// for every e in S. h must live on prev's parts 1..r-1. CapExceeded when more
/// than `cap` partial edge sets would be visited.
std::int64_t dangerous_count(const PartiteHypergraph& prev, const PartiteHypergraph& h, int delta, Fraction beta,
                             int w, std::int64_t cap = 10'000'000);

struct StepOptions {
  int retries = 20;
  bool with_repetition = true;
  /// When census_delta > 0 the result carries dangerous_count(H, H', census_delta, beta, census_w).
  int census_delta = 0;
  int census_w = 0;
  Fraction beta{1, 10};
};

struct StepResult {
  bool ok = false;
  PartiteHypergraph hypergraph;
  /// Sampled vertices of the dropped part (graph ids) in the accepted or last attempt.
  std::vector<int> samples;
  double target = 0;
  int attempts = 0;
  std::optional<std::int64_t> census;
  std::string census_error;
  std::string to_json() const;
};

/// One application of hypergraph dependent random choice: sample s vertices of
/// the first part and keep the (r-1)-tuples extended by every sample. Retried
/// with fresh seeds until |E(H')| >= (eps^s / 2) N^(r-1).
StepResult hdrc_step(const PartiteHypergraph& h, int s, double eps, std::uint64_t seed,
                     const StepOptions& options = {});

enum class EmbedVariant { Kpq, KpqMinusOne };
std::string to_string(EmbedVariant v);
EmbedVariant parse_variant(const std::string& text);

/// r_i, Delta_i, w_i for i = 1 .. q-2.
struct EmbedSchedule {
  std::vector<int> r;
  std::vector<std::int64_t> delta;
  std::vector<int> w;
};
EmbedSchedule make_schedule(int p, int q, EmbedVariant variant);

/// Asymptotic schedule evaluated at n: s and eps_0 .. eps_(q-2), following the
/// formula of the chosen variant. Reference only; log base 2.
struct PresetSchedule {
  std::string formula;
  double s = 0;
  std::vector<double> eps;
};
PresetSchedule preset_schedule(EmbedVariant variant, double n, double eps0, int q);

struct EmbedParams {
  int p = 2;
  int q = 3;
  Fraction beta{1, 10};
  /// Samples per hypergraph step; also the DRC sample size when drc_t == 0.
  int s = 2;
  int drc_t = 0;
  /// DRC target size; 0 means ceil(2 beta N).
  int drc_a = 0;
  /// Common-neighbourhood threshold at the base; 0 means ceil(beta N). Required for KpqMinusOne.
  int m = 0;
  std::int64_t drc_trials = 200;
  int step_retries = 20;
  /// Per-step eps override; empty means the measured edge density of the input hypergraph.
  std::vector<double> eps;
  /// If positive, the trace records whether each extension set reaches this size.
  int alpha_bound = 0;
};

struct EmbedResult {
  std::optional<VertexSet> clique;
  /// A^1 .. A^q as graph vertex sets when the pipeline completed.
  std::vector<VertexSet> blocks;
  int failed_stage = -1;
  std::string reason;
  std::string trace_json;
};

/// Stages: 0 builds H^0, 1..q-2 are hypergraph steps, q-1 is the DRC base,
/// q..2q-3 extend upward through parts q-2 .. 1. A returned clique has been
/// checked to span K_pq (or K_(pq-1)) in g.
EmbedResult embed_kpq(const Graph& g, const std::vector<VertexSet>& parts, const EmbedParams& params,
                      EmbedVariant variant, std::uint64_t seed);

}  // namespace rtlab

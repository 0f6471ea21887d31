#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rtlab/graph.hpp"

namespace rtlab {

using Rational = boost::multiprecision::cpp_rational;

/// Sample size t, subset size r, common-neighbourhood threshold m, target size a.
struct DRCParams {
  int t = 1;
  int r = 1;
  int m = 1;
  int a = 1;
  void validate() const;
};

struct DRCPredicate {
  bool holds = false;
  /// d^t / n^(t-1) - C(n, r) (m / n)^t, as a double; holds iff slack >= a.
  double slack = 0;
  /// The same slack as an exact fraction when evaluated exactly.
  std::optional<Rational> exact_slack;
};

/// Exact evaluation: n integer, d rational with 0 <= d <= n.
DRCPredicate drc_predicate(std::int64_t n, const Rational& d, const DRCParams& p);
/// Real-valued evaluation for non-integral m (e.g. m = sqrt(n log n)); long double.
DRCPredicate drc_predicate_real(double n, double d, int t, int r, double m, double a);

/// ceil((2n / a) ln(1 / delta)).
std::int64_t drc_trial_bound(int n, int a, double delta);

struct DRCOptions {
  /// Sample the t vertices with repetition (the standard argument) or without.
  bool with_repetition = true;
  /// Largest C(|U|, r) the certifier will enumerate.
  std::int64_t verify_cap = 10'000'000;
};

struct DRCFindResult {
  std::optional<VertexSet> witness;
  bool certified = false;
  /// 1-based index of the successful trial, or the number of trials run.
  std::int64_t trials_used = 0;
};

/// Repeated dependent random choice. Trial i uses a generator seeded from
/// (seed, i). Throws CapExceeded("witness too large to certify") when the
/// certifying enumeration would exceed options.verify_cap.
DRCFindResult drc_find(const Graph& g, const DRCParams& p, std::int64_t trials, std::uint64_t seed,
                       const DRCOptions& options = {});

/// Independent certification: every r-subset of u has at least m common neighbours.
bool drc_certify(const Graph& g, const VertexSet& u, int r, int m, std::int64_t cap = 10'000'000);

struct AmplifyResult {
  std::optional<VertexSet> clique;
  std::int64_t trials_used = 0;
  /// K_r found inside U and its common neighbourhood, for the record.
  std::optional<VertexSet> base;
  std::optional<VertexSet> common;
};

/// Finds a K_r inside a DRC set U and completes it with a K_(k - r) inside the
/// common neighbourhood of that K_r. Returned sets are verified cliques of size k.
AmplifyResult clique_amplify(const Graph& g, int r, int m, int t, int k, std::int64_t trials, std::uint64_t seed,
                             std::optional<int> a = std::nullopt, const DRCOptions& options = {});

}  // namespace rtlab

#include "rtlab/drc.hpp"

#include <cmath>
#include <numeric>

#include "rtlab/errors.hpp"
#include "rtlab/rng.hpp"

namespace rtlab {

void DRCParams::validate() const {
  if (t < 1 || r < 1 || m < 1 || a < 1) throw ParameterError("DRC parameters must be positive");
  if (r > a) throw ParameterError("DRC parameters need r <= a");
}

namespace {

Rational ipow(Rational base, int e) {
  Rational out(1);
  for (; e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace

DRCPredicate drc_predicate(std::int64_t n, const Rational& d, const DRCParams& p) {
  p.validate();
  if (n < 1) throw ParameterError("n must be positive");
  if (d < 0 || d > n) throw ParameterError("average degree must lie in [0, n]");
  Rational nn(n);
  Rational first = ipow(d, p.t) / ipow(nn, p.t - 1);
  Rational binom(1);
  for (int i = 0; i < p.r; ++i) binom = binom * (nn - i) / (i + 1);
  if (p.r > n) binom = 0;
  Rational second = binom * ipow(Rational(p.m) / nn, p.t);
  DRCPredicate out;
  out.exact_slack = first - second;
  out.holds = *out.exact_slack >= p.a;
  out.slack = static_cast<double>(*out.exact_slack);
  return out;
}

DRCPredicate drc_predicate_real(double n, double d, int t, int r, double m, double a) {
  if (n < 1 || t < 1 || r < 1 || m <= 0 || a <= 0) throw ParameterError("DRC parameters must be positive");
  if (d < 0 || d > n) throw ParameterError("average degree must lie in [0, n]");
  long double ln = n;
  long double first = std::pow(static_cast<long double>(d), t) / std::pow(ln, t - 1);
  long double binom = 1;
  for (int i = 0; i < r; ++i) binom = binom * (ln - i) / (i + 1);
  if (r > n) binom = 0;
  long double second = binom * std::pow(static_cast<long double>(m) / ln, t);
  DRCPredicate out;
  out.slack = static_cast<double>(first - second);
  out.holds = first - second >= a;
  return out;
}

std::int64_t drc_trial_bound(int n, int a, double delta) {
  if (n < 1 || a < 1 || !(delta > 0 && delta < 1)) throw ParameterError("need n, a >= 1 and 0 < delta < 1");
  return static_cast<std::int64_t>(std::ceil(2.0 * n / a * std::log(1.0 / delta)));
}

namespace {

std::int64_t binomial_capped(std::int64_t n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  long double r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(r));
}

// Lexicographic walk over the r-subsets of u whose members are all still
// present; a subset with fewer than m common neighbours loses its largest vertex.
class Pruner {
 public:
  Pruner(const Graph& g, int r, int m) : g_(g), r_(r), m_(m) {}

  void run(VertexSet& u) {
    std::vector<int> chosen;
    walk(u, chosen, VertexSet::full(g_.order()), -1);
  }

 private:
  void walk(VertexSet& u, std::vector<int>& chosen, const VertexSet& common, int last) {
    for (int v = u.next(last); v >= 0; v = u.next(v)) {
      VertexSet c = common & g_.neighbors(v);
      chosen.push_back(v);
      if (static_cast<int>(chosen.size()) == r_) {
        if (c.count() < m_) u.reset(v);
      } else {
        walk(u, chosen, c, v);
      }
      chosen.pop_back();
    }
  }

  const Graph& g_;
  int r_;
  int m_;
};

}  // namespace

bool drc_certify(const Graph& g, const VertexSet& u, int r, int m, std::int64_t cap) {
  auto members = u.members();
  int k = static_cast<int>(members.size());
  if (binomial_capped(k, r, cap) > cap) throw CapExceeded("witness too large to certify");
  if (r > k) return true;
  // Plain index combinations with per-vertex adjacency counting.
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    int common = 0;
    for (int w = 0; w < g.order(); ++w) {
      bool all = true;
      for (int i = 0; i < r && all; ++i) all = g.adjacent(w, members[idx[i]]);
      common += all ? 1 : 0;
    }
    if (common < m) return false;
    int i = r - 1;
    while (i >= 0 && idx[i] == k - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

namespace {

VertexSet drc_trial(const Graph& g, const DRCParams& p, Rng& rng, const DRCOptions& options) {
  int n = g.order();
  VertexSet sample(n);
  if (options.with_repetition) {
    for (int i = 0; i < p.t; ++i) sample.set(uniform_int(rng, 0, n - 1));
  } else {
    if (p.t > n) throw ParameterError("sampling without repetition needs t <= n");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < p.t; ++i) {
      int j = i + static_cast<int>(uniform_below(rng, n - i));
      std::swap(pool[i], pool[j]);
      sample.set(pool[i]);
    }
  }
  VertexSet u = common_neighborhood(g, sample);
  Pruner(g, p.r, p.m).run(u);
  return u;
}

}  // namespace

DRCFindResult drc_find(const Graph& g, const DRCParams& p, std::int64_t trials, std::uint64_t seed,
                       const DRCOptions& options) {
  p.validate();
  if (g.order() == 0) throw ParameterError("empty graph");
  DRCFindResult out;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    VertexSet u = drc_trial(g, p, rng, options);
    out.trials_used = i + 1;
    if (u.count() < p.a) continue;
    if (!drc_certify(g, u, p.r, p.m, options.verify_cap)) continue;  // never expected
    out.witness = u;
    out.certified = true;
    return out;
  }
  return out;
}

AmplifyResult clique_amplify(const Graph& g, int r, int m, int t, int k, std::int64_t trials, std::uint64_t seed,
                             std::optional<int> a, const DRCOptions& options) {
  if (k < r) throw ParameterError("target clique size must be at least r");
  DRCParams p{t, r, m, a.value_or(r)};
  p.validate();
  AmplifyResult out;
  for (std::int64_t i = 0; i < trials; ++i) {
    out.trials_used = i + 1;
    auto found = drc_find(g, p, 1, derive_seed(seed, static_cast<std::uint64_t>(i)), options);
    if (!found.witness) continue;
    VertexSet base;
    if (!contains_clique_in(g, *found.witness, r, &base)) continue;
    VertexSet w = common_neighborhood(g, base);
    VertexSet rest(g.order());
    if (k > r && !contains_clique_in(g, w, k - r, &rest)) continue;
    VertexSet clique = base | rest;
    if (clique.count() != k || !is_clique(g, clique)) continue;  // never expected
    out.clique = clique;
    out.base = base;
    out.common = w;
    return out;
  }
  return out;
}

}  // namespace rtlab

#include "rtlab/hdrc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "rtlab/drc.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/rng.hpp"

namespace rtlab {

using nlohmann::json;

PartiteHypergraph::PartiteHypergraph(std::vector<std::vector<int>> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ParameterError("hypergraph needs at least one part");
  n_ = static_cast<int>(parts_.front().size());
  if (n_ == 0) throw ParameterError("parts must be nonempty");
  for (const auto& p : parts_)
    if (static_cast<int>(p.size()) != n_) throw ParameterError("parts must have equal sizes");
  cells_ = 1;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (cells_ > kMaxCells / n_) throw CapExceeded("hypergraph edge table too large");
    cells_ *= n_;
  }
  bits_.assign(static_cast<std::size_t>((cells_ + 63) / 64), 0);
}

std::int64_t PartiteHypergraph::code(const std::vector<int>& positions) const {
  if (static_cast<int>(positions.size()) != r()) throw ParameterError("tuple length must equal r");
  std::int64_t c = 0;
  for (int x : positions) {
    if (x < 0 || x >= n_) throw ParameterError("tuple position out of range");
    c = c * n_ + x;
  }
  return c;
}

std::vector<int> PartiteHypergraph::positions(std::int64_t code) const {
  std::vector<int> out(r());
  for (int i = r() - 1; i >= 0; --i) {
    out[i] = static_cast<int>(code % n_);
    code /= n_;
  }
  return out;
}

void PartiteHypergraph::add(std::int64_t code) {
  std::uint64_t bit = std::uint64_t{1} << (code & 63);
  if (!(bits_[code >> 6] & bit)) {
    bits_[code >> 6] |= bit;
    ++edges_;
  }
}

std::vector<std::int64_t> PartiteHypergraph::edges() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (std::size_t w = 0; w < bits_.size(); ++w)
    for (std::uint64_t x = bits_[w]; x; x &= x - 1) out.push_back(static_cast<std::int64_t>(w * 64) + std::countr_zero(x));
  return out;
}

std::vector<int> PartiteHypergraph::vertices(std::int64_t code) const {
  auto pos = positions(code);
  for (int i = 0; i < r(); ++i) pos[i] = parts_[i][pos[i]];
  return pos;
}

namespace {

void check_parts(const Graph& g, const std::vector<VertexSet>& parts) {
  if (parts.empty()) throw ParameterError("no parts given");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].universe() != g.order()) throw ParameterError("vertex set universe does not match graph order");
    if (parts[i].count() != parts.front().count()) throw ParameterError("parts must have equal sizes");
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (parts[i].intersects(parts[j])) throw ParameterError("parts must be disjoint");
  }
}

void fill_cliques(const Graph& g, const std::vector<VertexSet>& parts, const std::vector<std::vector<int>>& lists,
                  std::size_t level, const VertexSet& cand, std::int64_t code, PartiteHypergraph& h) {
  const auto& list = lists[level];
  std::int64_t n = static_cast<std::int64_t>(list.size());
  for (std::int64_t pos = 0; pos < n; ++pos) {
    int v = list[pos];
    if (!cand.test(v)) continue;
    if (level + 1 == parts.size())
      h.add(code * n + pos);
    else
      fill_cliques(g, parts, lists, level + 1, cand & g.neighbors(v), code * n + pos, h);
  }
}

bool below_beta(std::int64_t count, Fraction beta, int n) {
  return count * beta.denominator() < beta.numerator() * n;
}

int ceil_times(Fraction f, int n) {
  Fraction x = f * n;
  std::int64_t q = x.numerator() / x.denominator();
  if (q * x.denominator() < x.numerator()) ++q;
  return static_cast<int>(q);
}

json set_json(const VertexSet& s) { return s.members(); }

}  // namespace

PartiteHypergraph transversal_clique_hypergraph(const Graph& g, const std::vector<VertexSet>& parts) {
  check_parts(g, parts);
  std::vector<std::vector<int>> lists;
  for (const auto& p : parts) lists.push_back(p.members());
  PartiteHypergraph h(lists);
  fill_cliques(g, parts, lists, 0, VertexSet::full(g.order()), 0, h);
  return h;
}

namespace {

struct Census {
  const PartiteHypergraph& h;
  std::vector<std::vector<int>> pos;  // positions of each edge of h
  std::vector<std::uint64_t> ext;     // extension masks over the dropped part
  int delta, w, n;
  Fraction beta;
  std::int64_t cap;
  std::int64_t visited = 0;
  std::int64_t found = 0;
  std::vector<int> mult;
  int weight = 0;

  void push(std::size_t e, int sign) {
    for (int i = 0; i < h.r(); ++i) {
      int& c = mult[i * n + pos[e][i]];
      if (sign > 0 && c++ == 0) ++weight;
      if (sign < 0 && --c == 0) --weight;
    }
  }

  void dfs(std::size_t start, int size, std::uint64_t mask) {
    for (std::size_t e = start; e < pos.size(); ++e) {
      push(e, +1);
      if (weight <= w) {
        if (++visited > cap) throw CapExceeded("dangerous-set census exceeds candidate cap");
        std::uint64_t m = mask & ext[e];
        if (weight == w && below_beta(std::popcount(m), beta, n)) ++found;
        if (size + 1 < delta) dfs(e + 1, size + 1, m);
      }
      push(e, -1);
    }
  }
};

}  // namespace

std::int64_t dangerous_count(const PartiteHypergraph& prev, const PartiteHypergraph& h, int delta, Fraction beta,
                             int w, std::int64_t cap) {
  if (delta < 1) throw ParameterError("delta must be positive");
  if (w < 0) throw ParameterError("weight must be nonnegative");
  if (prev.r() != h.r() + 1) throw ParameterError("hypergraph uniformities do not match");
  for (int i = 0; i < h.r(); ++i)
    if (prev.parts()[i + 1] != h.parts()[i]) throw ParameterError("hypergraph parts do not match");
  int n = prev.part_size();
  if (n > 64) throw CapExceeded("census supports parts of at most 64 vertices");
  Census c{h, {}, {}, delta, w, n, beta, cap, 0, 0, std::vector<int>(static_cast<std::size_t>(h.r()) * n, 0), 0};
  for (std::int64_t e : h.edges()) {
    c.pos.push_back(h.positions(e));
    std::uint64_t m = 0;
    for (int v = 0; v < n; ++v)
      if (prev.has(v * h.cells() + e)) m |= std::uint64_t{1} << v;
    c.ext.push_back(m);
  }
  std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  c.dfs(0, 0, all);
  return c.found;
}

std::string StepResult::to_json() const {
  json j{{"ok", ok},
         {"r", hypergraph.r()},
         {"edges", hypergraph.edge_count()},
         {"target", target},
         {"attempts", attempts},
         {"samples", samples}};
  if (census) j["dangerous_sets"] = *census;
  if (!census_error.empty()) j["census_error"] = census_error;
  return j.dump();
}

StepResult hdrc_step(const PartiteHypergraph& h, int s, double eps, std::uint64_t seed, const StepOptions& options) {
  if (h.r() < 2) throw ParameterError("hypergraph step needs r >= 2");
  if (s < 1) throw ParameterError("sample size must be positive");
  if (options.retries < 1) throw ParameterError("retry cap must be positive");
  int n = h.part_size();
  if (!options.with_repetition && s > n) throw ParameterError("cannot sample more vertices than the part holds");
  std::vector<std::vector<int>> rest(h.parts().begin() + 1, h.parts().end());
  std::int64_t stride = h.cells() / n;
  StepResult out;
  out.target = std::pow(eps, s) / 2.0 * static_cast<double>(stride);
  for (int attempt = 0; attempt < options.retries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<int> picks;
    if (options.with_repetition) {
      for (int i = 0; i < s; ++i) picks.push_back(static_cast<int>(uniform_below(rng, n)));
    } else {
      std::vector<int> all(n);
      std::iota(all.begin(), all.end(), 0);
      for (int i = 0; i < s; ++i) {
        std::swap(all[i], all[i + static_cast<int>(uniform_below(rng, n - i))]);
        picks.push_back(all[i]);
      }
    }
    PartiteHypergraph next(rest);
    for (std::int64_t c = 0; c < stride; ++c) {
      bool keep = true;
      for (int v : picks)
        if (!h.has(v * stride + c)) {
          keep = false;
          break;
        }
      if (keep) next.add(c);
    }
    out.attempts = attempt + 1;
    out.samples.clear();
    for (int v : picks) out.samples.push_back(h.parts()[0][v]);
    out.hypergraph = std::move(next);
    if (static_cast<double>(out.hypergraph.edge_count()) >= out.target) {
      out.ok = true;
      break;
    }
  }
  if (options.census_delta > 0) {
    try {
      out.census = dangerous_count(h, out.hypergraph, options.census_delta, options.beta, options.census_w);
    } catch (const CapExceeded& e) {
      out.census_error = e.what();
    }
  }
  return out;
}

std::string to_string(EmbedVariant v) { return v == EmbedVariant::Kpq ? "pq" : "pq-1"; }

EmbedVariant parse_variant(const std::string& text) {
  if (text == "pq") return EmbedVariant::Kpq;
  if (text == "pq-1" || text == "pq−1") return EmbedVariant::KpqMinusOne;
  throw ParameterError("variant must be 'pq' or 'pq-1'");
}

EmbedSchedule make_schedule(int p, int q, EmbedVariant variant) {
  if (p < 2 || q < 2) throw ParameterError("embedding needs p >= 2 and q >= 2");
  EmbedSchedule s;
  for (int i = 1; i <= q - 2; ++i) {
    int ri = q - i;
    std::int64_t pw = 1;
    for (int k = 0; k < ri - 1; ++k) pw *= p;
    std::int64_t delta = variant == EmbedVariant::Kpq ? pw * p : pw * (p - 1);
    int w = variant == EmbedVariant::Kpq ? p * ri : p * ri - 1;
    if (w > static_cast<std::int64_t>(ri) * delta) throw ParameterError("inconsistent schedule");
    s.r.push_back(ri);
    s.delta.push_back(delta);
    s.w.push_back(w);
  }
  return s;
}

PresetSchedule preset_schedule(EmbedVariant variant, double n, double eps0, int q) {
  if (q < 2) throw ParameterError("q must be at least 2");
  if (!(n > 2) || !(eps0 > 0 && eps0 <= 1)) throw ParameterError("need n > 2 and 0 < eps0 <= 1");
  double lg = std::log2(n);
  PresetSchedule out;
  auto geometric = [](double s, int i) { return std::abs(s - 1) < 1e-12 ? i : (std::pow(s, i) - 1) / (s - 1); };
  if (variant == EmbedVariant::Kpq) {
    out.formula = "eps_i = eps0^(log^(i/q) n) * 2^-((s^i - 1)/(s - 1)), s = log^(1/q) n";
    out.s = std::pow(lg, 1.0 / q);
    for (int i = 0; i <= q - 2; ++i)
      out.eps.push_back(std::pow(eps0, std::pow(lg, static_cast<double>(i) / q)) * std::pow(2.0, -geometric(out.s, i)));
  } else {
    out.formula = "eps_i = eps0^(s^i) / 2^((s^i - 1)/(s - 1)), s = log^(1/(q-1)) n";
    out.s = std::pow(lg, 1.0 / (q - 1));
    for (int i = 0; i <= q - 2; ++i)
      out.eps.push_back(std::pow(eps0, std::pow(out.s, i)) / std::pow(2.0, geometric(out.s, i)));
  }
  return out;
}

EmbedResult embed_kpq(const Graph& g, const std::vector<VertexSet>& parts, const EmbedParams& params,
                      EmbedVariant variant, std::uint64_t seed) {
  const int p = params.p;
  const int q = params.q;
  EmbedSchedule schedule = make_schedule(p, q, variant);
  if (static_cast<int>(parts.size()) != q) throw ParameterError("expected q parts");
  if (params.beta <= 0 || params.beta > 1) throw ParameterError("beta must lie in (0, 1]");
  if (params.s < 1) throw ParameterError("sample size must be positive");
  if (variant == EmbedVariant::KpqMinusOne && params.m <= 0)
    throw ParameterError("variant pq-1 needs an explicit threshold m");
  if (!params.eps.empty() && static_cast<int>(params.eps.size()) != q - 2)
    throw ParameterError("eps override needs q - 2 entries");

  EmbedResult out;
  json trace{{"variant", to_string(variant)}, {"p", p}, {"q", q}, {"beta", to_string(params.beta)}, {"seed", seed}};
  json stages = json::array();
  auto fail = [&](int stage, const std::string& why) {
    out.failed_stage = stage;
    out.reason = why;
    trace["stages"] = stages;
    trace["ok"] = false;
    trace["failed_stage"] = stage;
    trace["reason"] = why;
    out.trace_json = trace.dump();
    return out;
  };

  std::vector<PartiteHypergraph> hs;
  hs.push_back(transversal_clique_hypergraph(g, parts));
  std::vector<int> pos_of(g.order(), -1);
  for (const auto& list : hs[0].parts())
    for (std::size_t i = 0; i < list.size(); ++i) pos_of[list[i]] = static_cast<int>(i);
  const int n = hs[0].part_size();
  const int beta_n = ceil_times(params.beta, n);
  const int m = params.m > 0 ? params.m : beta_n;
  const int a = params.drc_a > 0 ? params.drc_a : ceil_times(params.beta * 2, n);
  trace["N"] = n;
  stages.push_back({{"stage", 0}, {"name", "transversal-cliques"}, {"edges", hs[0].edge_count()},
                    {"density", static_cast<double>(hs[0].edge_count()) / static_cast<double>(hs[0].cells())}});
  if (hs[0].edge_count() == 0) return fail(0, "no transversal cliques");

  for (int i = 1; i <= q - 2; ++i) {
    const auto& prev = hs.back();
    double eps = params.eps.empty() ? static_cast<double>(prev.edge_count()) / static_cast<double>(prev.cells())
                                    : params.eps[i - 1];
    StepOptions so;
    so.retries = params.step_retries;
    StepResult step = hdrc_step(prev, params.s, eps, derive_seed(seed, "hdrc-step", i), so);
    stages.push_back({{"stage", i},
                      {"name", "hypergraph-step"},
                      {"r", step.hypergraph.r()},
                      {"eps", eps},
                      {"edges", step.hypergraph.edge_count()},
                      {"target", step.target},
                      {"attempts", step.attempts},
                      {"samples", step.samples},
                      {"delta", schedule.delta[i - 1]},
                      {"w", schedule.w[i - 1]},
                      {"ok", step.ok}});
    if (!step.ok) return fail(i, "hypergraph step missed its edge target");
    hs.push_back(std::move(step.hypergraph));
  }

  // Base: dependent random choice on the bipartite H^(q-2).
  const int base_stage = q - 1;
  const PartiteHypergraph& hb = hs.back();
  Graph bip(2 * n);
  for (std::int64_t e : hb.edges()) {
    auto pos = hb.positions(e);
    bip.add_edge(pos[0], n + pos[1]);
  }
  DRCParams dp{params.drc_t > 0 ? params.drc_t : params.s, p, m, a};
  json base{{"stage", base_stage}, {"name", "drc-base"}, {"edges", hb.edge_count()}, {"t", dp.t},
            {"r", dp.r},           {"m", dp.m},          {"a", dp.a}};
  auto pred = drc_predicate(2 * n, Rational(2 * hb.edge_count(), 2 * n), dp);
  base["predicate_slack"] = pred.slack;
  base["predicate_holds"] = pred.holds;
  std::vector<VertexSet> blocks(q, VertexSet(g.order()));
  const int low = variant == EmbedVariant::Kpq ? p : p - 1;
  bool based = false;
  std::int64_t trial = 0;
  for (; trial < params.drc_trials && !based; ++trial) {
    auto found = drc_find(bip, dp, 1, derive_seed(seed, "hdrc-base", static_cast<std::uint64_t>(trial)));
    if (!found.witness) continue;
    const VertexSet& u = *found.witness;
    int on_low = 0;
    for (int v = u.first(); v >= 0 && v < n; v = u.next(v)) ++on_low;
    int side = on_low * 2 >= u.count() ? 0 : 1;
    VertexSet here(g.order());
    for (int v = u.first(); v >= 0; v = u.next(v))
      if ((v >= n) == (side == 1)) here.set(hb.parts()[side][v - side * n]);
    VertexSet top;
    if (!contains_clique_in(g, here, p, &top)) continue;
    VertexSet common = VertexSet::full(2 * n);
    for (int v = top.first(); v >= 0; v = top.next(v)) common &= bip.neighbors(pos_of[v] + side * n);
    VertexSet there(g.order());
    for (int v = common.first(); v >= 0; v = common.next(v)) there.set(hb.parts()[1 - side][v - (1 - side) * n]);
    VertexSet bottom;
    if (!contains_clique_in(g, there, low, &bottom)) continue;
    based = true;
    blocks[q - 2 + side] = top;
    blocks[q - 1 - side] = bottom;
    base["U"] = set_json(here);
    base["common"] = there.count();
    base["side"] = side;
  }
  base["trials"] = trial;
  base["ok"] = based;
  stages.push_back(base);
  if (!based) return fail(base_stage, "no DRC set yielded the base cliques");

  // Walk upward: part j (0-based) receives a K_p inside its extension set.
  for (int j = q - 3; j >= 0; --j) {
    const int stage = 2 * q - 3 - j;
    const PartiteHypergraph& cur = hs[j + 1];
    const PartiteHypergraph& prev = hs[j];
    std::vector<std::int64_t> witness{0};
    int weight = 0;
    for (int k = j + 1; k < q; ++k) {
      std::vector<std::int64_t> grown;
      for (std::int64_t c : witness)
        for (int v : blocks[k].members()) grown.push_back(c * n + pos_of[v]);
      witness = std::move(grown);
      weight += blocks[k].count();
    }
    bool complete = std::all_of(witness.begin(), witness.end(), [&](std::int64_t c) { return cur.has(c); });
    VertexSet ext(g.order());
    for (int v = 0; v < n; ++v) {
      bool all = std::all_of(witness.begin(), witness.end(),
                             [&](std::int64_t c) { return prev.has(v * cur.cells() + c); });
      if (all) ext.set(prev.parts()[0][v]);
    }
    bool dangerous = below_beta(ext.count(), params.beta, n);
    json st{{"stage", stage},
            {"name", "extend"},
            {"part", j + 1},
            {"witness_edges", witness.size()},
            {"witness_weight", weight},
            {"schedule_delta", schedule.delta[j]},
            {"schedule_w", schedule.w[j]},
            {"witness_complete", complete},
            {"extension", ext.count()},
            {"beta_n", beta_n},
            {"dangerous", dangerous}};
    if (params.alpha_bound > 0) st["reaches_alpha_bound"] = ext.count() >= params.alpha_bound;
    VertexSet block;
    bool ok = complete && contains_clique_in(g, ext, p, &block);
    st["ok"] = ok;
    if (ok) st["A"] = set_json(block);
    stages.push_back(st);
    if (!ok) return fail(stage, complete ? "extension set holds no K_p" : "witness not complete in hypergraph");
    blocks[j] = block;
  }

  VertexSet clique(g.order());
  for (const auto& b : blocks) clique |= b;
  int want = variant == EmbedVariant::Kpq ? p * q : p * q - 1;
  if (clique.count() != want || !is_clique(g, clique)) return fail(2 * q - 2, "assembled set is not a clique");
  out.clique = clique;
  out.blocks = blocks;
  trace["stages"] = stages;
  trace["ok"] = true;
  trace["clique"] = set_json(clique);
  json bl = json::array();
  for (const auto& b : blocks) bl.push_back(set_json(b));
  trace["blocks"] = bl;
  out.trace_json = trace.dump();
  return out;
}

}  // namespace rtlab

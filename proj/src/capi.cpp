#include "rtlab/rtlab.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "rtlab/constructions.hpp"
#include "rtlab/densities.hpp"
#include "rtlab/drc.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/hdrc.hpp"
#include "rtlab/io.hpp"
#include "rtlab/ramsey.hpp"
#include "rtlab/regularity.hpp"
#include "rtlab/rng.hpp"
#include "rtlab/rt_solver.hpp"

struct rtlab_graph {
  rtlab::Graph g;
};

struct rtlab_ramsey_cache {
  rtlab::RamseyCache cache;
};

namespace {

using nlohmann::json;
using namespace rtlab;

thread_local std::string last_error;

template <class F>
rtlab_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return RTLAB_OK;
  } catch (const ParameterError& e) {
    last_error = e.what();
    return RTLAB_ERR_INVALID_ARGUMENT;
  } catch (const CapExceeded& e) {
    last_error = e.what();
    return RTLAB_ERR_CAP_EXCEEDED;
  } catch (const ParseError& e) {
    last_error = e.what();
    return RTLAB_ERR_PARSE;
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return RTLAB_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return RTLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return RTLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RTLAB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RTLAB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ParameterError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  need(out, "output");
  *out = dup(s);
}

void emit(char** out, const json& j) { emit(out, j.dump()); }

json set_json(const VertexSet& s) { return s.members(); }

json opt_set(const std::optional<VertexSet>& s) { return s ? set_json(*s) : json(nullptr); }

VertexSet parse_set(const char* text, int n) {
  need(text, "vertex list");
  json j = json::parse(text);
  if (!j.is_array()) throw ParseError("vertex list must be a JSON array");
  VertexSet s(n);
  for (const auto& v : j) {
    int x = v.get<int>();
    if (x < 0 || x >= n) throw ParameterError("vertex " + std::to_string(x) + " out of range");
    s.set(x);
  }
  return s;
}

std::vector<VertexSet> parse_parts(const char* text, int n) {
  need(text, "parts");
  return parse_partition(text, n);
}

Fraction parse_rational(const char* text, const char* what) {
  need(text, what);
  return parse_fraction(text);
}

const Graph& graph_of(const rtlab_graph* g) {
  need(g, "graph");
  return g->g;
}

rtlab_graph* wrap(Graph g) { return new rtlab_graph{std::move(g)}; }

void put_graph(rtlab_graph** out, Graph g) {
  need(out, "output");
  *out = wrap(std::move(g));
}

json ramsey_json(const RamseyRecord& r) {
  json j{{"s", r.s},         {"t", r.t},       {"lo", r.lo}, {"hi", r.hi}, {"exact", r.exact()},
         {"provenance", r.provenance}, {"n_max", r.n_max}, {"level_counts", r.level_counts}};
  j["witness"] = r.witness ? json(to_graph6(*r.witness)) : json(nullptr);
  return j;
}

json q_json(const QRecord& r) {
  json j{{"t", r.t}, {"n", r.n}, {"lo", r.lo}, {"hi", r.hi}, {"exact", r.exact()}, {"provenance", r.provenance}};
  j["witness"] = r.witness ? json(to_graph6(*r.witness)) : json(nullptr);
  return j;
}

json rt_json(const RTInstance& inst, const RTResult& r) {
  json j{{"n", inst.n}, {"s", inst.s}, {"m", inst.m}, {"status", to_string(r.status)}, {"method", r.method},
         {"stats", json::parse(r.stats_json)}};
  if (r.status == RTStatus::Feasible) j["value"] = r.max_edges;
  else j["value"] = nullptr;
  j["witness"] = r.witness ? json(to_graph6(*r.witness)) : json(nullptr);
  return j;
}

std::string rational_text(const Rational& r) {
  return numerator(r).str() + (denominator(r) == 1 ? "" : "/" + denominator(r).str());
}

Rational to_rational(const Fraction& f) { return Rational(f.numerator()) / Rational(f.denominator()); }

EmbedParams embed_params(const char* text) {
  EmbedParams p;
  if (!text || !*text) return p;
  json j = json::parse(text);
  p.p = j.value("p", p.p);
  p.q = j.value("q", p.q);
  if (j.contains("beta")) p.beta = parse_fraction(j["beta"].is_string() ? j["beta"].get<std::string>()
                                                                          : j["beta"].dump());
  p.s = j.value("s", p.s);
  p.drc_t = j.value("drc_t", p.drc_t);
  p.drc_a = j.value("drc_a", p.drc_a);
  p.m = j.value("m", p.m);
  p.drc_trials = j.value("drc_trials", p.drc_trials);
  p.step_retries = j.value("step_retries", p.step_retries);
  p.eps = j.value("eps", p.eps);
  p.alpha_bound = j.value("alpha_bound", p.alpha_bound);
  return p;
}

Assumptions assume(int on) { return Assumptions{on != 0}; }

}  // namespace

extern "C" {

const char* rtlab_version(void) { return "0.1.0"; }

const char* rtlab_last_error(void) { return last_error.c_str(); }

const char* rtlab_status_name(rtlab_status status) {
  switch (status) {
    case RTLAB_OK:
      return "ok";
    case RTLAB_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case RTLAB_ERR_CAP_EXCEEDED:
      return "cap-exceeded";
    case RTLAB_ERR_PARSE:
      return "parse-error";
    default:
      return "internal-error";
  }
}

void rtlab_string_free(char* s) { std::free(s); }

uint64_t rtlab_derive_seed(uint64_t seed, const char* module, uint64_t index) {
  return derive_seed(seed, module ? module : "", index);
}

rtlab_status rtlab_graph_new(int n, rtlab_graph** out) {
  return guard([&] {
    if (n < 0) throw ParameterError("order must be nonnegative");
    put_graph(out, Graph(n));
  });
}

rtlab_status rtlab_graph_from_graph6(const char* text, rtlab_graph** out) {
  return guard([&] {
    need(text, "graph6 text");
    put_graph(out, from_graph6(text));
  });
}

rtlab_status rtlab_graph_from_json(const char* text, rtlab_graph** out) {
  return guard([&] {
    need(text, "edge list");
    put_graph(out, from_edge_list_json(text));
  });
}

rtlab_status rtlab_graph_named(const char* name, int n, rtlab_graph** out) {
  return guard([&] {
    need(name, "name");
    std::string k = name;
    if (k == "complete") put_graph(out, complete_graph(n));
    else if (k == "cycle") put_graph(out, cycle_graph(n));
    else if (k == "path") put_graph(out, path_graph(n));
    else if (k == "empty") put_graph(out, Graph(n));
    else if (k == "petersen") put_graph(out, petersen_graph());
    else if (k == "c5") put_graph(out, cycle_graph(5));
    else throw ParameterError("unknown graph name '" + k + "'");
  });
}

rtlab_status rtlab_graph_random(int n, double p, uint64_t seed, rtlab_graph** out) {
  return guard([&] { put_graph(out, random_graph(n, p, seed)); });
}

rtlab_status rtlab_graph_clone(const rtlab_graph* g, rtlab_graph** out) {
  return guard([&] { put_graph(out, graph_of(g)); });
}

void rtlab_graph_free(rtlab_graph* g) { delete g; }

int rtlab_graph_order(const rtlab_graph* g) { return g ? g->g.order() : -1; }

rtlab_status rtlab_graph_add_edge(rtlab_graph* g, int u, int v) {
  return guard([&] {
    need(g, "graph");
    int n = g->g.order();
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParameterError("invalid edge");
    g->g.add_edge(u, v);
  });
}

rtlab_status rtlab_graph_adjacent(const rtlab_graph* g, int u, int v, int* out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    need(out, "output");
    if (u < 0 || v < 0 || u >= G.order() || v >= G.order()) throw ParameterError("vertex out of range");
    *out = G.adjacent(u, v) ? 1 : 0;
  });
}

rtlab_status rtlab_graph_edge_count(const rtlab_graph* g, int64_t* out) {
  return guard([&] {
    need(out, "output");
    *out = edge_count(graph_of(g));
  });
}

rtlab_status rtlab_graph_to_graph6(const rtlab_graph* g, char** out) {
  return guard([&] { emit(out, to_graph6(graph_of(g))); });
}

rtlab_status rtlab_graph_to_json(const rtlab_graph* g, char** out) {
  return guard([&] { emit(out, to_edge_list_json(graph_of(g))); });
}

rtlab_status rtlab_graph_clique_number(const rtlab_graph* g, int* out) {
  return guard([&] {
    need(out, "output");
    *out = clique_number(graph_of(g));
  });
}

rtlab_status rtlab_graph_independence_number(const rtlab_graph* g, int* out) {
  return guard([&] {
    need(out, "output");
    *out = independence_number(graph_of(g));
  });
}

rtlab_status rtlab_graph_d_independence_number(const rtlab_graph* g, int d, int* out) {
  return guard([&] {
    need(out, "output");
    *out = d_independence_number(graph_of(g), d);
  });
}

rtlab_status rtlab_graph_is_clique(const rtlab_graph* g, const char* vertices_json, int* out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    need(out, "output");
    *out = is_clique(G, parse_set(vertices_json, G.order())) ? 1 : 0;
  });
}

rtlab_status rtlab_graph_stats(const rtlab_graph* g, int with_omega, int with_alpha, char** out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    json j{{"n", G.order()}, {"edges", edge_count(G)}};
    int lo = G.order() ? G.order() : 0, hi = 0;
    for (int v = 0; v < G.order(); ++v) {
      lo = std::min(lo, G.degree(v));
      hi = std::max(hi, G.degree(v));
    }
    j["min_degree"] = lo;
    j["max_degree"] = hi;
    if (with_omega) {
      VertexSet k = maximum_clique(G);
      j["omega"] = k.count();
      j["max_clique"] = set_json(k);
    }
    if (with_alpha) j["alpha"] = independence_number(G);
    emit(out, j);
  });
}

rtlab_status rtlab_construct(const char* spec_json, int with_stats, rtlab_graph** out, char** sidecar_json) {
  return guard([&] {
    need(spec_json, "spec");
    need(out, "output");
    StatsOptions st{with_stats != 0, with_stats != 0};
    ConstructionResult r = build_construction(ConstructionSpec::from_json(spec_json), st);
    if (sidecar_json) *sidecar_json = dup(r.sidecar_json);
    *out = wrap(std::move(r.graph));
  });
}

rtlab_status rtlab_ramsey_cache_new(rtlab_ramsey_cache** out) {
  return guard([&] {
    need(out, "output");
    *out = new rtlab_ramsey_cache{};
  });
}

void rtlab_ramsey_cache_free(rtlab_ramsey_cache* cache) { delete cache; }

rtlab_status rtlab_ramsey_cache_load(rtlab_ramsey_cache* cache, const char* path, int* rejected) {
  return guard([&] {
    need(cache, "cache");
    need(path, "path");
    int bad = cache->cache.load(path);
    if (rejected) *rejected = bad;
  });
}

rtlab_status rtlab_ramsey_cache_save(const rtlab_ramsey_cache* cache, const char* path) {
  return guard([&] {
    need(cache, "cache");
    need(path, "path");
    cache->cache.save(path);
  });
}

rtlab_status rtlab_ramsey_cache_import(rtlab_ramsey_cache* cache, const char* jsonl, int* rejected) {
  return guard([&] {
    need(cache, "cache");
    need(jsonl, "records");
    int bad = cache->cache.load_jsonl(jsonl);
    if (rejected) *rejected = bad;
  });
}

rtlab_status rtlab_ramsey_cache_export(const rtlab_ramsey_cache* cache, char** jsonl) {
  return guard([&] {
    need(cache, "cache");
    emit(jsonl, cache->cache.to_jsonl());
  });
}

rtlab_status rtlab_ramsey_r(rtlab_ramsey_cache* cache, int s, int t, int n_max, int64_t level_cap, char** out) {
  return guard([&] {
    if (cache) {
      if (auto hit = cache->cache.get_r(s, t); hit && hit->exact()) {
        json j = ramsey_json(*hit);
        j["cached"] = true;
        emit(out, j);
        return;
      }
    }
    EnumerationLimits lim;
    if (level_cap > 0) lim.level_cap = level_cap;
    RamseyRecord rec = ramsey_exact(s, t, n_max, lim);
    if (cache) cache->cache.put_r(rec, lim);
    json j = ramsey_json(rec);
    j["cached"] = false;
    emit(out, j);
  });
}

rtlab_status rtlab_ramsey_q(rtlab_ramsey_cache* cache, int t, int n, const char* options_json, char** out) {
  return guard([&] {
    QOptions opt;
    if (options_json && *options_json) {
      json j = json::parse(options_json);
      opt.reach_t3 = j.value("reach_t3", opt.reach_t3);
      opt.reach_t4 = j.value("reach_t4", opt.reach_t4);
      opt.reach_other = j.value("reach_other", opt.reach_other);
      opt.limits.level_cap = j.value("level_cap", opt.limits.level_cap);
      opt.heuristic_budget = j.value("heuristic_budget", opt.heuristic_budget);
      opt.seed = j.value("seed", opt.seed);
    }
    if (cache) {
      if (auto hit = cache->cache.get_q(t, n); hit && hit->exact()) {
        json j = q_json(*hit);
        j["cached"] = true;
        emit(out, j);
        return;
      }
    }
    QRecord rec = q_exact(t, n, opt);
    if (cache) cache->cache.put_q(rec, opt);
    json j = q_json(rec);
    j["cached"] = false;
    emit(out, j);
  });
}

rtlab_status rtlab_ramsey_q_bounds(int t, int n, double c1, double c2, char** out) {
  return guard([&] {
    BoundInterval b = q_bounds(t, n, c1, c2);
    emit(out, json{{"t", t}, {"n", n}, {"lo", b.lo}, {"hi", b.hi}, {"up_to_constants", b.up_to_constants}});
  });
}

rtlab_status rtlab_rt_exact(int n, int s, int m, int cap, int64_t floor_proposals, char** out) {
  return guard([&] {
    RTInstance inst{n, s, m};
    RTExactOptions opt;
    if (cap > 0) opt.cap = cap;
    if (floor_proposals >= 0) opt.floor_proposals = floor_proposals;
    emit(out, rt_json(inst, rt_exact(inst, opt)));
  });
}

rtlab_status rtlab_rt_search(int n, int s, int m, int64_t budget, uint64_t seed, const rtlab_graph* warm_start,
                             char** out) {
  return guard([&] {
    RTInstance inst{n, s, m};
    AnnealOptions opt;
    if (budget > 0) opt.proposals = budget;
    if (warm_start) opt.warm_start = warm_start->g;
    json j = rt_json(inst, rt_lower_search(inst, opt, seed));
    j["seed"] = seed;
    emit(out, j);
  });
}

rtlab_status rtlab_rt_check(const rtlab_graph* g, int s, int m, int* out) {
  return guard([&] {
    need(out, "output");
    const Graph& G = graph_of(g);
    RTInstance inst{G.order(), s, m};
    inst.validate();
    *out = rt_check_witness(G, inst) ? 1 : 0;
  });
}

rtlab_status rtlab_drc_predicate(int64_t n, const char* d, int t, int r, int m, int a, char** out) {
  return guard([&] {
    DRCPredicate p = drc_predicate(n, to_rational(parse_rational(d, "average degree")), DRCParams{t, r, m, a});
    json j{{"n", n}, {"d", d}, {"t", t}, {"r", r}, {"m", m}, {"a", a}, {"holds", p.holds}, {"slack", p.slack}};
    j["exact_slack"] = p.exact_slack ? json(rational_text(*p.exact_slack)) : json(nullptr);
    emit(out, j);
  });
}

rtlab_status rtlab_drc_find(const rtlab_graph* g, int t, int r, int m, int a, int64_t trials, uint64_t seed,
                            int with_repetition, char** out) {
  return guard([&] {
    DRCOptions opt;
    opt.with_repetition = with_repetition != 0;
    DRCFindResult res = drc_find(graph_of(g), DRCParams{t, r, m, a}, trials, seed, opt);
    emit(out, json{{"witness", opt_set(res.witness)}, {"certified", res.certified}, {"trials_used", res.trials_used}});
  });
}

rtlab_status rtlab_drc_amplify(const rtlab_graph* g, int r, int m, int t, int k, int64_t trials, uint64_t seed, int a,
                               char** out) {
  return guard([&] {
    std::optional<int> target;
    if (a > 0) target = a;
    AmplifyResult res = clique_amplify(graph_of(g), r, m, t, k, trials, seed, target);
    emit(out, json{{"clique", opt_set(res.clique)},
                   {"certified", res.clique.has_value()},
                   {"trials_used", res.trials_used},
                   {"base", opt_set(res.base)},
                   {"common", opt_set(res.common)}});
  });
}

rtlab_status rtlab_hdrc_embed(const rtlab_graph* g, const char* parts_json, const char* params_json,
                              const char* variant, uint64_t seed, char** out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    EmbedVariant v = parse_variant(variant ? variant : "pq");
    EmbedResult res = embed_kpq(G, parse_parts(parts_json, G.order()), embed_params(params_json), v, seed);
    json blocks = json::array();
    for (const auto& b : res.blocks) blocks.push_back(set_json(b));
    json j{{"variant", to_string(v)},
           {"clique", opt_set(res.clique)},
           {"verified", res.clique.has_value() && is_clique(G, *res.clique)},
           {"blocks", blocks},
           {"failed_stage", res.failed_stage},
           {"reason", res.reason},
           {"trace", json::parse(res.trace_json)}};
    emit(out, j);
  });
}

rtlab_status rtlab_hdrc_step(const rtlab_graph* g, const char* parts_json, int s, double eps, uint64_t seed,
                             int census_delta, int census_w, const char* beta, char** out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    PartiteHypergraph h = transversal_clique_hypergraph(G, parse_parts(parts_json, G.order()));
    StepOptions opt;
    opt.census_delta = census_delta;
    opt.census_w = census_w;
    if (beta) opt.beta = parse_fraction(beta);
    if (eps <= 0) eps = h.cells() ? static_cast<double>(h.edge_count()) / static_cast<double>(h.cells()) : 0.0;
    StepResult res = hdrc_step(h, s, eps, seed, opt);
    json j = json::parse(res.to_json());
    j["input_edges"] = h.edge_count();
    j["eps"] = eps;
    emit(out, j);
  });
}

rtlab_status rtlab_hdrc_schedule(int p, int q, const char* variant, double n, double eps0, char** out) {
  return guard([&] {
    EmbedVariant v = parse_variant(variant ? variant : "pq");
    EmbedSchedule sch = make_schedule(p, q, v);
    json j{{"p", p}, {"q", q}, {"variant", to_string(v)}, {"r", sch.r}, {"delta", sch.delta}, {"w", sch.w}};
    if (n > 0) {
      PresetSchedule pre = preset_schedule(v, n, eps0, q);
      j["preset"] = {{"formula", pre.formula}, {"n", n}, {"s", pre.s}, {"eps", pre.eps}};
    }
    emit(out, j);
  });
}

rtlab_status rtlab_reg_pair(const rtlab_graph* g, const char* a_json, const char* b_json, const char* rho, int exact,
                            int64_t samples, uint64_t seed, char** out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    VertexSet a = parse_set(a_json, G.order()), b = parse_set(b_json, G.order());
    RegularityVerdict v = is_regular_pair(G, a, b, parse_rational(rho, "rho"),
                                          exact ? RegularityMode::Exact : RegularityMode::Sampled, samples, seed);
    emit(out, json{{"regular", v.regular},
                   {"mode", v.mode == RegularityMode::Exact ? "exact" : "sampled"},
                   {"samples", v.samples},
                   {"density", to_string(pair_density(G, a, b))},
                   {"witness_x", opt_set(v.x)},
                   {"witness_y", opt_set(v.y)},
                   {"summary", v.summary()}});
  });
}

rtlab_status rtlab_reg_cluster(const rtlab_graph* g, const char* partition_json, const char* rho, const char* d_min,
                               int64_t samples, uint64_t seed, char** out) {
  return guard([&] {
    const Graph& G = graph_of(g);
    ClusterGraph c = cluster_graph(G, parse_parts(partition_json, G.order()), parse_rational(rho, "rho"),
                                   parse_rational(d_min, "d_min"), samples, seed);
    emit(out, c.to_json());
  });
}

rtlab_status rtlab_reg_transversal(const rtlab_graph* g, const char* parts_json, int64_t* out) {
  return guard([&] {
    need(out, "output");
    const Graph& G = graph_of(g);
    *out = count_transversal_cliques(G, parse_parts(parts_json, G.order()));
  });
}

rtlab_status rtlab_density_lookup(int s, const char* f, int assume_gap, char** out) {
  return guard([&] {
    need(f, "function class");
    emit(out, density_lookup(s, parse_function_class(f), assume(assume_gap)).to_json());
  });
}

rtlab_status rtlab_density_pt(int s, const char* f, const char* g, int assume_gap, char** out) {
  return guard([&] {
    need(f, "f");
    need(g, "g");
    emit(out, pt_from_to(s, parse_function_class(f), parse_function_class(g), assume(assume_gap)).to_json());
  });
}

rtlab_status rtlab_density_strong_pt(int s, int t, char** out) {
  return guard([&] {
    StrongPT r = strong_pt_check(s, t);
    emit(out, json{{"s", s}, {"t", t}, {"holds", r.holds}, {"r", r.r}, {"l", r.l}});
  });
}

rtlab_status rtlab_density_table(int s_lo, int s_hi, int assume_gap, const char* format, char** out) {
  return guard([&] {
    DensityTable t = s_lo == 0 && s_hi == 0 ? table_k13(assume(assume_gap)) : table_emit(s_lo, s_hi, assume(assume_gap));
    std::string fmt = format ? format : "plain";
    if (fmt == "plain") emit(out, t.to_plain());
    else if (fmt == "json") emit(out, t.to_json());
    else if (fmt == "html") emit(out, t.to_html());
    else throw ParameterError("unknown table format '" + fmt + "'");
  });
}

}  // extern "C"

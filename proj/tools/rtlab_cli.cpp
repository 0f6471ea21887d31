// rtlab command-line front end. Talks to the core only through rtlab.h.

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtlab/rtlab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "rtlab.experiment/1";
constexpr const char* kRootEnv = "RTLAB_RUNS_ROOT";

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kCap = 3 };

struct ApiError {
  rtlab_status status;
  std::string message;
};

void check(rtlab_status st) {
  if (st != RTLAB_OK) throw ApiError{st, rtlab_last_error()};
}

struct GraphPtr {
  rtlab_graph* g = nullptr;
  GraphPtr() = default;
  GraphPtr(const GraphPtr&) = delete;
  GraphPtr& operator=(const GraphPtr&) = delete;
  ~GraphPtr() { rtlab_graph_free(g); }
};

struct CachePtr {
  rtlab_ramsey_cache* c = nullptr;
  ~CachePtr() { rtlab_ramsey_cache_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  rtlab_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError{RTLAB_ERR_INVALID_ARGUMENT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

// A literal, or the contents of a file when the argument names one.
std::string literal_or_file(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return trim(slurp(arg));
  return arg;
}

void load_graph(const std::string& arg, GraphPtr& out) {
  std::string text = literal_or_file(arg);
  // graph6 never uses '"', so a quote marks a JSON edge list.
  if (!text.empty() && text.front() == '{' && text.find('"') != std::string::npos)
    check(rtlab_graph_from_json(text.c_str(), &out.g));
  else
    check(rtlab_graph_from_graph6(text.substr(0, text.find('\n')).c_str(), &out.g));
}

std::string graph6_of(const rtlab_graph* g) {
  char* s = nullptr;
  check(rtlab_graph_to_graph6(g, &s));
  return take(s);
}

// Outcome of one command: deterministic outputs, human text, artifacts.
struct Outcome {
  std::string status = "ok";
  json outputs = json::object();
  // Recorded but left out of the replay digest (provenance, cache use).
  json diagnostics = json::object();
  std::string text;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  int exit_code = kOk;
};

struct Context {
  // Option storage for one parse; callbacks outlive the add_* frames.
  std::vector<std::shared_ptr<void>> held;
  template <class T, class... A>
  T& hold(A&&... a) {
    auto p = std::make_shared<T>(std::forward<A>(a)...);
    held.push_back(p);
    return *p;
  }
  std::uint64_t seed = 1;
  bool assume_gap = false;
  std::string format = "json";
  json params = json::object();
  std::string command;
  Outcome outcome;
};

std::uint64_t sub_seed(const Context& ctx, const std::string& module) {
  return rtlab_derive_seed(ctx.seed, module.c_str(), 0);
}

// ---------------------------------------------------------------- commands

void add_graph_commands(CLI::App& app, Context& ctx) {
  auto* graph = app.add_subcommand("graph", "Graph utilities")->require_subcommand(1);
  auto& g_arg = ctx.hold<std::string>();
  auto& name = ctx.hold<std::string>();
  auto& to = ctx.hold<std::string>();
  auto& n = ctx.hold<int>(0);
  auto& d = ctx.hold<int>(2);
  auto& p = ctx.hold<double>(0.5);
  auto& no_alpha = ctx.hold<bool>(false);
  auto& no_omega = ctx.hold<bool>(false);

  auto* stats = graph->add_subcommand("stats", "Order, size, clique and independence numbers");
  stats->add_option("--graph", g_arg, "graph6 text or file (graph6 or JSON edge list)")->required();
  stats->add_flag("--no-alpha", no_alpha, "Skip the independence number");
  stats->add_flag("--no-omega", no_omega, "Skip the clique number");
  stats->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    ctx.params = {{"graph", graph6_of(g.g)}, {"alpha", !no_alpha}, {"omega", !no_omega}};
    char* s = nullptr;
    check(rtlab_graph_stats(g.g, !no_omega, !no_alpha, &s));
    ctx.outcome.outputs = take_json(s);
  });

  auto* dind = graph->add_subcommand("d-independence", "Largest K_d-free induced subgraph");
  dind->add_option("--graph", g_arg, "graph6 text or file")->required();
  dind->add_option("--d", d, "Forbidden clique size")->required();
  dind->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    ctx.params = {{"graph", graph6_of(g.g)}, {"d", d}};
    int v = 0;
    check(rtlab_graph_d_independence_number(g.g, d, &v));
    ctx.outcome.outputs = {{"d", d}, {"value", v}};
  });

  auto emit_graph = [&ctx](const GraphPtr& g) {
    char* j = nullptr;
    check(rtlab_graph_to_json(g.g, &j));
    std::string g6 = graph6_of(g.g);
    ctx.outcome.outputs = {{"graph6", g6}};
    ctx.outcome.files = {{"graph.g6", g6 + "\n"}, {"graph.json", take(j) + "\n"}};
    ctx.outcome.text = g6;
  };

  auto* named = graph->add_subcommand("named", "Named small graph");
  named->add_option("--name", name, "complete, cycle, path, empty, petersen, c5")->required();
  named->add_option("--n", n, "Order");
  named->callback([&, emit_graph] {
    GraphPtr g;
    check(rtlab_graph_named(name.c_str(), n, &g.g));
    ctx.params = {{"name", name}, {"n", n}};
    emit_graph(g);
  });

  auto* random = graph->add_subcommand("random", "Seeded G(n, p)");
  random->add_option("--n", n, "Order")->required();
  random->add_option("--p", p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  random->callback([&, emit_graph] {
    GraphPtr g;
    std::uint64_t s = sub_seed(ctx, "graph.random");
    check(rtlab_graph_random(n, p, s, &g.g));
    ctx.params = {{"n", n}, {"p", p}, {"derived_seed", s}};
    emit_graph(g);
  });

  auto* convert = graph->add_subcommand("convert", "Convert between graph6 and JSON edge lists");
  convert->add_option("--graph", g_arg, "graph6 text or file")->required();
  convert->add_option("--to", to, "graph6 or json")->check(CLI::IsMember({"graph6", "json"}))->required();
  convert->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    ctx.params = {{"graph", graph6_of(g.g)}, {"to", to}};
    if (to == "graph6") {
      ctx.outcome.text = graph6_of(g.g);
      ctx.outcome.outputs = {{"graph6", ctx.outcome.text}};
    } else {
      char* j = nullptr;
      check(rtlab_graph_to_json(g.g, &j));
      ctx.outcome.outputs = take_json(j);
    }
  });
}

void run_construction(Context& ctx, const json& spec, bool stats) {
  GraphPtr g;
  char* side = nullptr;
  check(rtlab_construct(spec.dump().c_str(), stats ? 1 : 0, &g.g, &side));
  json sidecar = take_json(side);
  std::string g6 = graph6_of(g.g);
  // Every emitted graph must read back identically.
  GraphPtr back;
  check(rtlab_graph_from_graph6(g6.c_str(), &back.g));
  if (graph6_of(back.g) != g6) throw ApiError{RTLAB_ERR_INTERNAL, "graph6 round trip failed"};
  ctx.params = {{"spec", spec}, {"stats", stats}};
  ctx.outcome.outputs = {{"graph6", g6}, {"sidecar", sidecar}};
  ctx.outcome.files = {{"graph.g6", g6 + "\n"}, {"graph.stats.json", sidecar.dump(2) + "\n"}};
  std::ostringstream os;
  os << g6 << "\n" << sidecar["stats"].dump();
  ctx.outcome.text = os.str();
}

void add_construct_commands(CLI::App& app, Context& ctx) {
  auto* cons = app.add_subcommand("construct", "Extremal graph constructions")->require_subcommand(1);
  auto& n = ctx.hold<int>(0);
  auto& r = ctx.hold<int>(0);
  auto& h = ctx.hold<int>(0);
  auto& dim = ctx.hold<int>(20);
  auto& inner = ctx.hold<std::string>(std::string("empty"));
  auto& b6 = ctx.hold<std::string>();
  auto& spec_file = ctx.hold<std::string>();
  auto& theta_cross = ctx.hold<double>(0);
  auto& theta_within = ctx.hold<double>(0);
  auto& no_stats = ctx.hold<bool>(false);

  auto* turan = cons->add_subcommand("turan", "Turan graph T(n, r)");
  turan->add_option("--n", n)->required();
  turan->add_option("--r", r)->required();
  turan->add_flag("--no-stats", no_stats);
  turan->callback([&] { run_construction(ctx, {{"kind", "turan"}, {"n", n}, {"r", r}}, !no_stats); });

  auto* compose = cons->add_subcommand("compose-turan", "T(n, r) with an inner graph in each class");
  compose->add_option("--n", n)->required();
  compose->add_option("--r", r)->required();
  compose->add_option("--inner", inner, "empty, complete, cycle, c5, petersen, graph6:<code>, ramsey:<t>, "
                                        "triangle-free-random:<seed>");
  compose->add_flag("--no-stats", no_stats);
  compose->callback([&] {
    run_construction(ctx, {{"kind", "compose"}, {"n", n}, {"r", r}, {"inner", inner}}, !no_stats);
  });

  auto* be_join = cons->add_subcommand("be-join", "Bollobas-Erdos graph joined to a Turan graph");
  be_join->add_option("--n", n)->required();
  be_join->add_option("--r", r)->required();
  be_join->add_option("--inner", inner);
  be_join->add_option("--b-order", h, "Order of the B part (default from the formula)");
  be_join->add_option("--b-graph6", b6, "Explicit B part");
  be_join->add_option("--dim", dim);
  be_join->add_flag("--no-stats", no_stats);
  be_join->callback([&] {
    json spec{{"kind", "be-join"}, {"n", n}, {"r", r}, {"inner", inner}};
    if (h > 0) spec["h"] = h;
    if (!b6.empty())
      spec["b_graph6"] = b6;
    else
      spec["be"] = {{"dim", dim}, {"seed", sub_seed(ctx, "construct.be-join")}};
    run_construction(ctx, spec, !no_stats);
  });

  auto* be = cons->add_subcommand("bollobas-erdos", "Spherical Bollobas-Erdos graph");
  be->add_option("--order", h, "Order h")->required();
  be->add_option("--dim", dim);
  be->add_option("--theta-cross", theta_cross, "Cross-part angle (default tuned)");
  be->add_option("--theta-within", theta_within, "Within-part angle (default tuned)");
  be->add_flag("--no-stats", no_stats);
  be->callback([&] {
    json spec{{"kind", "bollobas-erdos"}, {"h", h}, {"dim", dim}, {"seed", sub_seed(ctx, "construct.bollobas-erdos")}};
    if (theta_cross > 0) spec["theta_cross"] = theta_cross;
    if (theta_within > 0) spec["theta_within"] = theta_within;
    run_construction(ctx, spec, !no_stats);
  });

  auto* spec = cons->add_subcommand("spec", "Build from a construction document");
  spec->add_option("--file", spec_file, "JSON construction document or file")->required();
  spec->add_flag("--no-stats", no_stats);
  spec->callback([&] { run_construction(ctx, json::parse(literal_or_file(spec_file)), !no_stats); });
}

// A cache hit reproduces the value and witness but not how they were found.
void split_ramsey(Context& ctx, json out) {
  for (const char* k : {"cached", "provenance", "level_counts", "n_max"}) {
    if (out.contains(k)) {
      ctx.outcome.diagnostics[k] = out[k];
      out.erase(k);
    }
  }
  ctx.outcome.outputs = out;
}

void add_ramsey_commands(CLI::App& app, Context& ctx) {
  auto* ram = app.add_subcommand("ramsey", "Ramsey numbers and Q(t, n)")->require_subcommand(1);
  auto& s = ctx.hold<int>(3);
  auto& t = ctx.hold<int>(3);
  auto& n = ctx.hold<int>(0);
  auto& n_max = ctx.hold<int>(20);
  auto& reach = ctx.hold<int>(0);
  auto& level_cap = ctx.hold<std::int64_t>(0);
  auto& budget = ctx.hold<std::int64_t>(0);
  auto& cache_path = ctx.hold<std::string>();
  auto& from = ctx.hold<std::string>();
  auto& c1 = ctx.hold<double>(1);
  auto& c2 = ctx.hold<double>(1);

  auto open_cache = [&cache_path](CachePtr& c) {
    check(rtlab_ramsey_cache_new(&c.c));
    std::error_code ec;
    if (!cache_path.empty() && fs::exists(cache_path, ec)) {
      int bad = 0;
      check(rtlab_ramsey_cache_load(c.c, cache_path.c_str(), &bad));
      return bad;
    }
    return 0;
  };

  auto* r = ram->add_subcommand("r", "R(s, t) by exhaustive enumeration");
  r->add_option("--s", s)->required();
  r->add_option("--t", t)->required();
  r->add_option("--n-max", n_max, "Largest order enumerated");
  r->add_option("--level-cap", level_cap, "Isomorphism classes kept per level");
  r->add_option("--cache", cache_path, "JSON-lines cache file");
  r->callback([&, open_cache] {
    CachePtr c;
    int bad = open_cache(c);
    char* out = nullptr;
    check(rtlab_ramsey_r(cache_path.empty() ? nullptr : c.c, s, t, n_max, level_cap, &out));
    ctx.params = {{"s", s}, {"t", t}, {"n_max", n_max}, {"level_cap", level_cap}, {"cache", cache_path}};
    split_ramsey(ctx, take_json(out));
    if (!cache_path.empty()) check(rtlab_ramsey_cache_save(c.c, cache_path.c_str()));
    if (bad) ctx.outcome.outputs["cache_rejected"] = bad;
    if (!ctx.outcome.outputs["exact"].get<bool>()) ctx.outcome.status = "interval";
  });

  auto* q = ram->add_subcommand("q", "Q(t, n): least independence number of a K_t-free graph");
  q->add_option("--t", t)->required();
  q->add_option("--n", n)->required();
  q->add_option("--reach", reach, "Largest n searched exhaustively");
  q->add_option("--budget", budget, "Local search proposals out of reach");
  q->add_option("--cache", cache_path, "JSON-lines cache file");
  q->callback([&, open_cache] {
    CachePtr c;
    int bad = open_cache(c);
    json opt{{"seed", sub_seed(ctx, "ramsey.q")}};
    if (reach > 0) opt["reach_t3"] = opt["reach_t4"] = opt["reach_other"] = reach;
    if (budget > 0) opt["heuristic_budget"] = budget;
    char* out = nullptr;
    check(rtlab_ramsey_q(cache_path.empty() ? nullptr : c.c, t, n, opt.dump().c_str(), &out));
    ctx.params = {{"t", t}, {"n", n}, {"options", opt}, {"cache", cache_path}};
    split_ramsey(ctx, take_json(out));
    if (!cache_path.empty()) check(rtlab_ramsey_cache_save(c.c, cache_path.c_str()));
    if (bad) ctx.outcome.outputs["cache_rejected"] = bad;
    if (!ctx.outcome.outputs["exact"].get<bool>()) ctx.outcome.status = "interval";
  });

  auto* bounds = ram->add_subcommand("bounds", "Asymptotic bound formulas for Q(t, n)");
  bounds->add_option("--t", t)->required();
  bounds->add_option("--n", n)->required();
  bounds->add_option("--c1", c1);
  bounds->add_option("--c2", c2);
  bounds->callback([&] {
    char* out = nullptr;
    check(rtlab_ramsey_q_bounds(t, n, c1, c2, &out));
    ctx.params = {{"t", t}, {"n", n}, {"c1", c1}, {"c2", c2}};
    ctx.outcome.outputs = take_json(out);
  });

  auto* cache = ram->add_subcommand("cache", "Import or export the record cache")->require_subcommand(1);
  auto* exp = cache->add_subcommand("export", "Print the cache as JSON lines");
  exp->add_option("--cache", cache_path)->required();
  exp->callback([&, open_cache] {
    CachePtr c;
    int bad = open_cache(c);
    char* out = nullptr;
    check(rtlab_ramsey_cache_export(c.c, &out));
    ctx.outcome.text = take(out);
    ctx.params = {{"cache", cache_path}};
    ctx.outcome.outputs = {{"records", std::count(ctx.outcome.text.begin(), ctx.outcome.text.end(), '\n')},
                           {"rejected", bad}};
    ctx.outcome.files = {{"cache.jsonl", ctx.outcome.text}};
  });
  auto* imp = cache->add_subcommand("import", "Merge verified records from a JSON-lines file");
  imp->add_option("--cache", cache_path)->required();
  imp->add_option("--from", from)->required();
  imp->callback([&, open_cache] {
    CachePtr c;
    open_cache(c);
    int bad = 0;
    check(rtlab_ramsey_cache_import(c.c, slurp(from).c_str(), &bad));
    check(rtlab_ramsey_cache_save(c.c, cache_path.c_str()));
    ctx.params = {{"cache", cache_path}, {"from", from}};
    ctx.outcome.outputs = {{"rejected", bad}};
  });
}

void rt_outcome(Context& ctx, json out) {
  std::string st = out["status"];
  if (st != "feasible") ctx.outcome.status = st;
  if (!out["witness"].is_null()) ctx.outcome.files = {{"witness.g6", out["witness"].get<std::string>() + "\n"}};
  if (out.contains("stats") && out["stats"].contains("seconds")) out["stats"].erase("seconds");
  ctx.outcome.outputs = out;
}

void add_rt_commands(CLI::App& app, Context& ctx) {
  auto* rt = app.add_subcommand("rt", "Ramsey-Turan numbers RT(n, K_s, alpha < m)")->require_subcommand(1);
  auto& n = ctx.hold<int>(0);
  auto& s = ctx.hold<int>(0);
  auto& m = ctx.hold<int>(0);
  auto& cap = ctx.hold<int>(0);
  auto& budget = ctx.hold<std::int64_t>(0);
  auto& floor_proposals = ctx.hold<std::int64_t>(-1);
  auto& warm = ctx.hold<std::string>();
  auto& g_arg = ctx.hold<std::string>();

  auto* exact = rt->add_subcommand("exact", "Exact value by exhaustive generation");
  exact->add_option("--n", n)->required();
  exact->add_option("--s", s)->required();
  exact->add_option("--m", m)->required();
  exact->add_option("--cap", cap, "Largest n accepted");
  exact->add_option("--floor-proposals", floor_proposals, "Annealing proposals for the edge floor");
  exact->callback([&] {
    char* out = nullptr;
    check(rtlab_rt_exact(n, s, m, cap, floor_proposals, &out));
    ctx.params = {{"n", n}, {"s", s}, {"m", m}, {"cap", cap}, {"floor_proposals", floor_proposals}};
    rt_outcome(ctx, take_json(out));
  });

  auto* search = rt->add_subcommand("search", "Annealing lower bound");
  search->add_option("--n", n)->required();
  search->add_option("--s", s)->required();
  search->add_option("--m", m)->required();
  search->add_option("--budget", budget, "Proposals");
  search->add_option("--warm-start", warm, "graph6 start graph");
  search->callback([&] {
    GraphPtr w;
    if (!warm.empty()) load_graph(warm, w);
    std::uint64_t sd = sub_seed(ctx, "rt.search");
    char* out = nullptr;
    check(rtlab_rt_search(n, s, m, budget, sd, w.g, &out));
    ctx.params = {{"n", n}, {"s", s}, {"m", m}, {"budget", budget}, {"warm_start", warm}, {"derived_seed", sd}};
    rt_outcome(ctx, take_json(out));
  });

  auto* chk = rt->add_subcommand("check", "Check a witness: K_s-free with independence number < m");
  chk->add_option("--graph", g_arg)->required();
  chk->add_option("--s", s)->required();
  chk->add_option("--m", m)->required();
  chk->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    int ok = 0;
    check(rtlab_rt_check(g.g, s, m, &ok));
    std::int64_t e = 0;
    check(rtlab_graph_edge_count(g.g, &e));
    ctx.params = {{"graph", graph6_of(g.g)}, {"s", s}, {"m", m}};
    ctx.outcome.outputs = {{"valid", ok == 1}, {"edges", e}};
    if (!ok) ctx.outcome.status = "invalid";
  });
}

void add_drc_commands(CLI::App& app, Context& ctx) {
  auto* drc = app.add_subcommand("drc", "Dependent random choice")->require_subcommand(1);
  auto& n = ctx.hold<std::int64_t>(0);
  auto& trials = ctx.hold<std::int64_t>(100);
  auto& d = ctx.hold<std::string>(std::string("0"));
  auto& g_arg = ctx.hold<std::string>();
  auto& t = ctx.hold<int>(1);
  auto& r = ctx.hold<int>(1);
  auto& m = ctx.hold<int>(1);
  auto& a = ctx.hold<int>(1);
  auto& k = ctx.hold<int>(0);
  auto& without = ctx.hold<bool>(false);

  auto* pred = drc->add_subcommand("predicate", "d^t/n^(t-1) - C(n,r)(m/n)^t >= a");
  pred->add_option("--n", n)->required();
  pred->add_option("--d", d, "Average degree (rational)")->required();
  pred->add_option("--t", t)->required();
  pred->add_option("--r", r)->required();
  pred->add_option("--m", m)->required();
  pred->add_option("--a", a)->required();
  pred->callback([&] {
    char* out = nullptr;
    check(rtlab_drc_predicate(n, d.c_str(), t, r, m, a, &out));
    ctx.params = {{"n", n}, {"d", d}, {"t", t}, {"r", r}, {"m", m}, {"a", a}};
    ctx.outcome.outputs = take_json(out);
  });

  auto* find = drc->add_subcommand("find", "Search for a set whose r-subsets have m common neighbours");
  find->add_option("--graph", g_arg)->required();
  find->add_option("--t", t)->required();
  find->add_option("--r", r)->required();
  find->add_option("--m", m)->required();
  find->add_option("--a", a)->required();
  find->add_option("--trials", trials);
  find->add_flag("--without-repetition", without);
  find->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::uint64_t sd = sub_seed(ctx, "drc.find");
    char* out = nullptr;
    check(rtlab_drc_find(g.g, t, r, m, a, trials, sd, without ? 0 : 1, &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"t", t}, {"r", r}, {"m", m}, {"a", a}, {"trials", trials},
                  {"with_repetition", !without}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
    if (ctx.outcome.outputs["witness"].is_null()) ctx.outcome.status = "none";
  });

  auto* amp = drc->add_subcommand("amplify", "K_r in a DRC set completed to K_k");
  amp->add_option("--graph", g_arg)->required();
  amp->add_option("--r", r)->required();
  amp->add_option("--m", m)->required();
  amp->add_option("--t", t)->required();
  amp->add_option("--k", k)->required();
  amp->add_option("--a", a, "DRC target size (default r)");
  amp->add_option("--trials", trials);
  amp->callback([&, amp] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::uint64_t sd = sub_seed(ctx, "drc.amplify");
    int target = amp->count("--a") ? a : 0;
    char* out = nullptr;
    check(rtlab_drc_amplify(g.g, r, m, t, k, trials, sd, target, &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"r", r}, {"m", m}, {"t", t}, {"k", k}, {"a", target},
                  {"trials", trials}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
    if (ctx.outcome.outputs["clique"].is_null()) ctx.outcome.status = "none";
  });
}

void add_hdrc_commands(CLI::App& app, Context& ctx) {
  auto* hd = app.add_subcommand("hdrc", "Hypergraph dependent random choice")->require_subcommand(1);
  auto& g_arg = ctx.hold<std::string>();
  auto& parts = ctx.hold<std::string>();
  auto& variant = ctx.hold<std::string>(std::string("pq"));
  auto& beta = ctx.hold<std::string>(std::string("1/10"));
  auto& p = ctx.hold<int>(2);
  auto& q = ctx.hold<int>(3);
  auto& s = ctx.hold<int>(2);
  auto& m = ctx.hold<int>(0);
  auto& drc_t = ctx.hold<int>(0);
  auto& drc_a = ctx.hold<int>(0);
  auto& step_retries = ctx.hold<int>(20);
  auto& census_delta = ctx.hold<int>(0);
  auto& census_w = ctx.hold<int>(0);
  auto& drc_trials = ctx.hold<std::int64_t>(200);
  auto& eps = ctx.hold<std::vector<double>>();
  auto& eps1 = ctx.hold<double>(0);
  auto& n_real = ctx.hold<double>(0);
  auto& eps0 = ctx.hold<double>(0.5);

  auto* embed = hd->add_subcommand("embed", "Embed K_pq or K_(pq-1) across q parts");
  embed->add_option("--graph", g_arg)->required();
  embed->add_option("--parts", parts, "JSON list of vertex lists, or file")->required();
  embed->add_option("--p", p);
  embed->add_option("--q", q);
  embed->add_option("--variant", variant)->check(CLI::IsMember({"pq", "pq-1"}));
  embed->add_option("--beta", beta);
  embed->add_option("--s", s, "Samples per step");
  embed->add_option("--m", m, "Common neighbourhood threshold at the base");
  embed->add_option("--drc-t", drc_t);
  embed->add_option("--drc-a", drc_a);
  embed->add_option("--drc-trials", drc_trials);
  embed->add_option("--step-retries", step_retries);
  embed->add_option("--eps", eps, "Per-step eps overrides");
  embed->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::string pj = literal_or_file(parts);
    json params{{"p", p}, {"q", q}, {"beta", beta}, {"s", s}, {"m", m}, {"drc_t", drc_t}, {"drc_a", drc_a},
                {"drc_trials", drc_trials}, {"step_retries", step_retries}, {"eps", eps}};
    std::uint64_t sd = sub_seed(ctx, "hdrc.embed");
    char* out = nullptr;
    check(rtlab_hdrc_embed(g.g, pj.c_str(), params.dump().c_str(), variant.c_str(), sd, &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"parts", json::parse(pj)}, {"params", params},
                  {"variant", variant}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
    if (ctx.outcome.outputs["clique"].is_null()) ctx.outcome.status = "none";
    ctx.outcome.files = {{"trace.json", ctx.outcome.outputs["trace"].dump(2) + "\n"}};
  });

  auto* step = hd->add_subcommand("step", "One hypergraph step on the transversal clique hypergraph");
  step->add_option("--graph", g_arg)->required();
  step->add_option("--parts", parts)->required();
  step->add_option("--s", s);
  step->add_option("--eps", eps1, "Density parameter (default measured)");
  step->add_option("--census-delta", census_delta);
  step->add_option("--census-w", census_w);
  step->add_option("--beta", beta);
  step->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::string pj = literal_or_file(parts);
    std::uint64_t sd = sub_seed(ctx, "hdrc.step");
    char* out = nullptr;
    check(rtlab_hdrc_step(g.g, pj.c_str(), s, eps1, sd, census_delta, census_w, beta.c_str(), &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"parts", json::parse(pj)}, {"s", s}, {"eps", eps1},
                  {"census_delta", census_delta}, {"census_w", census_w}, {"beta", beta}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
    if (!ctx.outcome.outputs.value("ok", false)) ctx.outcome.status = "none";
  });

  auto* sched = hd->add_subcommand("schedule", "Step schedule r_i, Delta_i, w_i and the asymptotic preset");
  sched->add_option("--p", p)->required();
  sched->add_option("--q", q)->required();
  sched->add_option("--variant", variant)->check(CLI::IsMember({"pq", "pq-1"}));
  sched->add_option("--n", n_real, "Evaluate the preset at this n");
  sched->add_option("--eps0", eps0);
  sched->callback([&] {
    char* out = nullptr;
    check(rtlab_hdrc_schedule(p, q, variant.c_str(), n_real, eps0, &out));
    ctx.params = {{"p", p}, {"q", q}, {"variant", variant}, {"n", n_real}, {"eps0", eps0}};
    ctx.outcome.outputs = take_json(out);
  });
}

void add_reg_commands(CLI::App& app, Context& ctx) {
  auto* reg = app.add_subcommand("reg", "Regularity checks")->require_subcommand(1);
  auto& g_arg = ctx.hold<std::string>();
  auto& a_arg = ctx.hold<std::string>();
  auto& b_arg = ctx.hold<std::string>();
  auto& partition = ctx.hold<std::string>();
  auto& rho = ctx.hold<std::string>(std::string("1/10"));
  auto& dmin = ctx.hold<std::string>(std::string("1/2"));
  auto& samples = ctx.hold<std::int64_t>(2000);
  auto& sampled = ctx.hold<bool>(false);

  auto* pair = reg->add_subcommand("pair", "Is (A, B) rho-regular?");
  pair->add_option("--graph", g_arg)->required();
  pair->add_option("--a", a_arg, "JSON vertex list")->required();
  pair->add_option("--b", b_arg, "JSON vertex list")->required();
  pair->add_option("--rho", rho);
  pair->add_flag("--sampled", sampled, "Sampled mode (can only refute)");
  pair->add_option("--samples", samples);
  pair->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::uint64_t sd = sub_seed(ctx, "reg.pair");
    char* out = nullptr;
    check(rtlab_reg_pair(g.g, a_arg.c_str(), b_arg.c_str(), rho.c_str(), sampled ? 0 : 1, samples, sd, &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"a", json::parse(a_arg)}, {"b", json::parse(b_arg)}, {"rho", rho},
                  {"sampled", sampled}, {"samples", samples}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
  });

  auto* cluster = reg->add_subcommand("cluster", "Cluster graph of a partition");
  cluster->add_option("--graph", g_arg)->required();
  cluster->add_option("--partition", partition, "JSON list of vertex lists, or file")->required();
  cluster->add_option("--rho", rho);
  cluster->add_option("--dmin", dmin);
  cluster->add_option("--samples", samples);
  cluster->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::string pj = literal_or_file(partition);
    std::uint64_t sd = sub_seed(ctx, "reg.cluster");
    char* out = nullptr;
    check(rtlab_reg_cluster(g.g, pj.c_str(), rho.c_str(), dmin.c_str(), samples, sd, &out));
    ctx.params = {{"graph", graph6_of(g.g)}, {"partition", json::parse(pj)}, {"rho", rho}, {"dmin", dmin},
                  {"samples", samples}, {"derived_seed", sd}};
    ctx.outcome.outputs = take_json(out);
  });

  auto* trans = reg->add_subcommand("transversal", "Count cliques with one vertex in each part");
  trans->add_option("--graph", g_arg)->required();
  trans->add_option("--parts", partition)->required();
  trans->callback([&] {
    GraphPtr g;
    load_graph(g_arg, g);
    std::string pj = literal_or_file(partition);
    std::int64_t c = 0;
    check(rtlab_reg_transversal(g.g, pj.c_str(), &c));
    ctx.params = {{"graph", graph6_of(g.g)}, {"parts", json::parse(pj)}};
    ctx.outcome.outputs = {{"count", c}};
  });
}

void add_density_commands(CLI::App& app, Context& ctx) {
  auto* den = app.add_subcommand("density", "Ramsey-Turan densities and phase transitions")->require_subcommand(1);
  auto& s = ctx.hold<int>(5);
  auto& t = ctx.hold<int>(3);
  auto& lo = ctx.hold<int>(4);
  auto& hi = ctx.hold<int>(13);
  auto& f = ctx.hold<std::string>();
  auto& g = ctx.hold<std::string>();
  auto& fmt = ctx.hold<std::string>(std::string("plain"));
  auto& k13 = ctx.hold<bool>(false);

  auto add_assume = [&ctx](CLI::App* sub) {
    sub->add_flag("--assume-ramsey-gap,--assume-conjecture-2.3b", ctx.assume_gap,
                  "Assume R(l-1, n) <= R(l, n) / n^theta for every l");
  };

  auto* lookup = den->add_subcommand("lookup", "Density bounds of K_s at f");
  lookup->add_option("--s", s)->required();
  lookup->add_option("--f", f, "n, o(n), Q(t,n), Q(t,n/w), Q(t,n)/w, Q(t,g_q), Q(t,f_q), phi*Q(t,n), "
                               "c*sqrt(n log n), sqrt(n log n)/w")
      ->required();
  add_assume(lookup);
  lookup->callback([&] {
    char* out = nullptr;
    check(rtlab_density_lookup(s, f.c_str(), ctx.assume_gap, &out));
    ctx.params = {{"s", s}, {"f", f}, {"assume_gap", ctx.assume_gap}};
    ctx.outcome.outputs = take_json(out);
    ctx.outcome.text = ctx.outcome.outputs["text"];
  });

  auto* pt = den->add_subcommand("pt", "Phase transition of K_s from f to g");
  pt->add_option("--s", s)->required();
  pt->add_option("--f", f)->required();
  pt->add_option("--g", g)->required();
  add_assume(pt);
  pt->callback([&] {
    char* out = nullptr;
    check(rtlab_density_pt(s, f.c_str(), g.c_str(), ctx.assume_gap, &out));
    ctx.params = {{"s", s}, {"f", f}, {"g", g}, {"assume_gap", ctx.assume_gap}};
    ctx.outcome.outputs = take_json(out);
    ctx.outcome.text = ctx.outcome.outputs["verdict"];
  });

  auto* spt = den->add_subcommand("strong-pt", "Strong phase transition of K_s at Q(t, n)");
  spt->add_option("--s", s)->required();
  spt->add_option("--t", t)->required();
  spt->callback([&] {
    char* out = nullptr;
    check(rtlab_density_strong_pt(s, t, &out));
    ctx.params = {{"s", s}, {"t", t}};
    ctx.outcome.outputs = take_json(out);
  });

  auto* table = den->add_subcommand("table", "Phase-transition table");
  table->add_option("--from", lo, "Smallest clique");
  table->add_option("--to", hi, "Largest clique");
  table->add_flag("--k13", k13, "The K13 column at its transition regimes");
  table->add_option("--format", fmt)->check(CLI::IsMember({"plain", "json", "html"}));
  add_assume(table);
  table->callback([&] {
    int a = k13 ? 0 : lo, b = k13 ? 0 : hi;
    char* out = nullptr;
    check(rtlab_density_table(a, b, ctx.assume_gap, fmt.c_str(), &out));
    ctx.outcome.text = take(out);
    char* j = nullptr;
    check(rtlab_density_table(a, b, ctx.assume_gap, "json", &j));
    ctx.params = {{"from", lo}, {"to", hi}, {"k13", k13}, {"format", fmt}, {"assume_gap", ctx.assume_gap}};
    ctx.outcome.outputs = take_json(j);
    std::string ext = fmt == "plain" ? "txt" : fmt;
    ctx.outcome.files = {{"table." + ext, ctx.outcome.text}};
  });
}

// ---------------------------------------------------------------- records

// Timing fields vary between runs and stay out of the replay digest.
json strip_timing(json j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (it.key() == "seconds" || it.key() == "wall_seconds")
        it = j.erase(it);
      else {
        it.value() = strip_timing(it.value());
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) x = strip_timing(x);
  }
  return j;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string digest(const json& outputs) {
  return hex64(rtlab_derive_seed(0, strip_timing(outputs).dump().c_str(), 0));
}

std::string utc_stamp(std::chrono::system_clock::time_point tp, bool compact) {
  std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, compact ? "%Y%m%dT%H%M%SZ" : "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path runs_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kRootEnv); env && *env) return env;
  return "runs";
}

// One write(2) per record with O_APPEND keeps concurrent appends whole.
void append_line(const fs::path& path, const std::string& line) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw ApiError{RTLAB_ERR_INTERNAL, "cannot open log " + path.string()};
  std::string data = line + "\n";
  ssize_t w = ::write(fd, data.data(), data.size());
  ::close(fd);
  if (w != static_cast<ssize_t>(data.size())) throw ApiError{RTLAB_ERR_INTERNAL, "short write to log"};
}

struct RunResult {
  int exit_code = kOk;
  std::string error;
  Context ctx;
};

// Parses and runs one command line (without the program name) in-process.
RunResult execute(const std::vector<std::string>& args) {
  RunResult res;
  Context& ctx = res.ctx;
  CLI::App app{"Ramsey-Turan laboratory", "rtlab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_root, log_path;
  bool no_record = false;
  app.add_option("--seed", ctx.seed, "Global seed; commands derive their own sub-seeds");
  app.add_option("--out-root", out_root, std::string("Output root (default $") + kRootEnv + " or ./runs)");
  app.add_flag("--no-record", no_record, "Do not write a run directory or log record");
  app.add_option("--format", ctx.format, "Console output: json or text")->check(CLI::IsMember({"json", "text"}));
  add_graph_commands(app, ctx);
  add_construct_commands(app, ctx);
  add_ramsey_commands(app, ctx);
  add_rt_commands(app, ctx);
  add_drc_commands(app, ctx);
  add_hdrc_commands(app, ctx);
  add_reg_commands(app, ctx);
  add_density_commands(app, ctx);
  // Dispatched by main before parsing; listed here for --help only.
  app.add_subcommand("replay", "Re-run logged experiments and compare output digests")->allow_extras();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  auto start = std::chrono::steady_clock::now();
  auto wall = std::chrono::system_clock::now();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    res.exit_code = app.exit(e);
    res.error = "help";
    return res;
  } catch (const CLI::ParseError& e) {
    res.error = e.what();
    res.exit_code = e.get_exit_code() == 0 ? kOk : kUsage;
    if (e.get_exit_code() == 0) app.exit(e);
    return res;
  } catch (const ApiError& e) {
    res.error = e.message;
    res.exit_code = e.status == RTLAB_ERR_CAP_EXCEEDED ? kCap
                    : e.status == RTLAB_ERR_INTERNAL   ? kFailure
                                                       : kUsage;
    ctx.outcome.status = "error";
  } catch (const json::exception& e) {
    res.error = std::string("malformed JSON argument: ") + e.what();
    res.exit_code = kUsage;
    ctx.outcome.status = "error";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    ctx.command += (ctx.command.empty() ? "" : " ") + sub->get_name();
  }
  if (res.exit_code == kOk) res.exit_code = ctx.outcome.exit_code;
  if (no_record) return res;

  json rec{{"schema", kSchema},
           {"version", rtlab_version()},
           {"command", ctx.command},
           {"argv", args},
           {"params", ctx.params},
           {"seed", ctx.seed},
           {"timestamp", utc_stamp(wall, false)},
           {"wall_seconds", secs},
           {"status", ctx.outcome.status},
           {"exit_code", res.exit_code}};
  if (!res.error.empty()) rec["error"] = res.error;
  rec["outputs"] = ctx.outcome.outputs;
  rec["diagnostics"] = ctx.outcome.diagnostics;
  rec["output_digest"] = digest(ctx.outcome.outputs);

  fs::path root = runs_root(out_root);
  std::error_code ec;
  fs::create_directories(root, ec);
  std::string key = std::to_string(std::chrono::system_clock::now().time_since_epoch().count()) + " " +
                    std::to_string(::getpid()) + " " + json(args).dump();
  fs::path dir;
  for (std::uint64_t i = 0;; ++i) {
    dir = root / (utc_stamp(wall, true) + "-" + hex64(rtlab_derive_seed(0, key.c_str(), i)).substr(0, 8));
    if (fs::create_directory(dir, ec)) break;
    if (ec) throw ApiError{RTLAB_ERR_INTERNAL, "cannot create " + dir.string() + ": " + ec.message()};
  }
  json artifacts = json::array();
  for (const auto& [name, body] : ctx.outcome.files) {
    std::ofstream(dir / name, std::ios::binary) << body;
    artifacts.push_back((dir / name).string());
  }
  rec["run_dir"] = dir.string();
  rec["artifacts"] = artifacts;
  std::ofstream(dir / "manifest.json") << rec.dump(2) << "\n";
  append_line(root / "experiments.jsonl", rec.dump());
  return res;
}

void print(const RunResult& r) {
  if (r.error == "help") return;
  if (!r.error.empty()) {
    std::cerr << "rtlab: " << r.error << "\n";
    return;
  }
  const Outcome& o = r.ctx.outcome;
  if (r.ctx.format == "text" || (!o.text.empty() && r.ctx.command.rfind("density table", 0) == 0)) {
    std::cout << (o.text.empty() ? o.outputs.dump(2) : o.text);
    if (o.text.empty() || o.text.back() != '\n') std::cout << "\n";
  } else {
    json shown = o.outputs;
    if (o.status != "ok") shown["status"] = o.status;
    std::cout << shown.dump(2) << "\n";
  }
}

// replay --log FILE [--fraction F] [--all]: re-runs sampled records and
// compares output digests.
int replay(const std::vector<std::string>& args) {
  CLI::App app{"Replay logged experiments", "rtlab replay"};
  std::string log;
  double fraction = 0.1;
  bool all = false;
  std::uint64_t seed = 1;
  app.add_option("--log", log, "experiments.jsonl (default under the output root)");
  app.add_option("--fraction", fraction, "Share of records replayed")->check(CLI::Range(0.0, 1.0));
  app.add_flag("--all", all, "Replay every record");
  app.add_option("--seed", seed, "Sampling seed");
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (log.empty()) log = (runs_root("") / "experiments.jsonl").string();
  std::ifstream in(log);
  if (!in) {
    std::cerr << "rtlab: cannot read " << log << "\n";
    return kUsage;
  }
  std::vector<json> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json r = json::parse(line, nullptr, false);
    if (r.is_discarded() || r.value("schema", "") != kSchema) continue;
    if (r.value("exit_code", 1) != 0) continue;
    recs.push_back(std::move(r));
  }
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    double u = static_cast<double>(rtlab_derive_seed(seed, "replay", i) >> 11) * 0x1.0p-53;
    if (all || u < fraction) pick.push_back(i);
  }
  if (pick.empty() && !recs.empty()) pick.push_back(0);
  json mismatches = json::array();
  for (std::size_t i : pick) {
    std::vector<std::string> argv = recs[i]["argv"].get<std::vector<std::string>>();
    argv.push_back("--no-record");
    RunResult rr = execute(argv);
    std::string got = digest(rr.ctx.outcome.outputs);
    if (rr.exit_code != 0 || got != recs[i]["output_digest"].get<std::string>())
      mismatches.push_back({{"index", i}, {"command", recs[i]["command"]}, {"expected", recs[i]["output_digest"]},
                            {"got", got}, {"exit_code", rr.exit_code}});
  }
  json summary{{"log", log}, {"records", recs.size()}, {"replayed", pick.size()}, {"mismatches", mismatches}};
  std::cout << summary.dump(2) << "\n";
  return mismatches.empty() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] == "replay") return replay({args.begin() + 1, args.end()});
  if (!args.empty() && args[0] == "--version") {
    std::cout << rtlab_version() << "\n";
    return kOk;
  }
  try {
    RunResult r = execute(args);
    print(r);
    return r.exit_code;
  } catch (const ApiError& e) {
    std::cerr << "rtlab: " << e.message << "\n";
    return e.status == RTLAB_ERR_CAP_EXCEEDED ? kCap : kFailure;
  }
}

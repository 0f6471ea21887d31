#include "rtlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "rtlab/errors.hpp"
#include "rtlab/io.hpp"
#include "rtlab/ramsey.hpp"
#include "rtlab/rng.hpp"

namespace rtlab {

std::vector<int> turan_class_sizes(int n, int r) {
  if (r < 1 || r > n) throw ParameterError("turan needs 1 <= r <= n");
  std::vector<int> sizes(r, n / r);
  for (int i = 0; i < n % r; ++i) ++sizes[i];
  return sizes;
}

std::vector<VertexSet> turan_classes(int n, int r) {
  std::vector<VertexSet> classes;
  int start = 0;
  for (int size : turan_class_sizes(n, r)) {
    VertexSet c(n);
    for (int v = start; v < start + size; ++v) c.set(v);
    classes.push_back(c);
    start += size;
  }
  return classes;
}

Graph turan(int n, int r) {
  auto sizes = turan_class_sizes(n, r);
  std::vector<int> cls(n);
  int v = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < sizes[i]; ++j) cls[v++] = i;
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (cls[a] != cls[b]) g.add_edge(a, b);
  return g;
}

Graph compose_turan(int n, int r, const InnerGenerator& inner) {
  Graph g = turan(n, r);
  int start = 0;
  for (int size : turan_class_sizes(n, r)) {
    Graph in = inner(size);
    if (in.order() != size)
      throw ParameterError("inner generator returned order " + std::to_string(in.order()) +
                           " for a class of size " + std::to_string(size));
    for (int a = 0; a < size; ++a)
      for (int b = a + 1; b < size; ++b)
        if (in.adjacent(a, b)) g.add_edge(start + a, start + b);
    start += size;
  }
  return g;
}

namespace {

// Fixed graph padded with false twins of vertex 0 up to `size` vertices.
Graph pad_with_twins(const Graph& base, int size) {
  if (size < base.order()) throw ParameterError("class smaller than the inner graph");
  if (size > base.order() && base.order() == 0) return Graph(size);
  Graph g(size);
  for (int a = 0; a < base.order(); ++a)
    for (int b = a + 1; b < base.order(); ++b)
      if (base.adjacent(a, b)) g.add_edge(a, b);
  for (int extra = base.order(); extra < size; ++extra)
    for (int u : base.neighbors(0).members()) g.add_edge(extra, u);
  return g;
}

}  // namespace

Graph compose_turan(int n, int r, const Graph& inner) {
  if (r < 1 || r > n) throw ParameterError("turan needs 1 <= r <= n");
  if (inner.order() != n / r)
    throw ParameterError("inner graph order " + std::to_string(inner.order()) + " must equal floor(n/r) = " +
                         std::to_string(n / r));
  return compose_turan(n, r, [&](int size) { return pad_with_twins(inner, size); });
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw ParameterError("edge probability must lie in [0, 1]");
  Graph g(n);
  Rng rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) g.add_edge(u, v);
  return g;
}

Graph join(const Graph& a, const Graph& b) {
  int na = a.order();
  Graph g(na + b.order());
  for (int u = 0; u < na; ++u)
    for (int v = u + 1; v < na; ++v)
      if (a.adjacent(u, v)) g.add_edge(u, v);
  for (int u = 0; u < b.order(); ++u)
    for (int v = u + 1; v < b.order(); ++v)
      if (b.adjacent(u, v)) g.add_edge(na + u, na + v);
  for (int u = 0; u < na; ++u)
    for (int v = 0; v < b.order(); ++v) g.add_edge(u, na + v);
  return g;
}

int lower_be_h(int n, int r) {
  if (r < 3) throw ParameterError("lower_be needs r >= 3");
  return 4 * n / (3 * r - 2);
}

Graph lower_be(int n, int r, const Graph& b, const InnerGenerator& inner) {
  if (r < 3) throw ParameterError("lower_be needs r >= 3");
  int h = b.order();
  if (h > n) throw ParameterError("B has more than n vertices");
  int rest = n - h;
  if (rest == 0) return b;
  if (rest < r - 2) throw ParameterError("not enough vertices for T(n - h, r - 2)");
  Graph t = r == 2 ? Graph(rest) : compose_turan(rest, r - 2, inner);
  return join(b, t);
}

BollobasErdosParams default_bollobas_erdos(int h, int dim, std::uint64_t seed) {
  BollobasErdosParams p;
  p.h = h;
  p.dim = dim;
  p.theta_cross = std::numbers::pi / 2 - 0.12;
  p.theta_within = std::numbers::pi - 0.23;
  p.seed = seed;
  return p;
}

bool bollobas_erdos_angles_k4_free(double theta_cross, double theta_within) {
  double delta = std::numbers::pi - theta_within;
  double delta_cross = std::numbers::pi / 2 - theta_cross;
  return delta <= std::numbers::pi / 3 && delta <= 2 * delta_cross;
}

Graph bollobas_erdos(const BollobasErdosParams& p) {
  if (p.h < 2 || p.h % 2 != 0) throw ParameterError("h must be a positive even number");
  if (p.dim < 2) throw ParameterError("dim must be at least 2");
  constexpr double pi = std::numbers::pi;
  if (!(p.theta_cross > 0 && p.theta_cross < pi / 2 && pi / 2 < p.theta_within && p.theta_within < pi))
    throw ParameterError("angles must satisfy 0 < theta_cross < pi/2 < theta_within < pi");
  Rng rng(p.seed);
  int coords = p.dim + 1;
  std::vector<std::vector<double>> pts(p.h, std::vector<double>(coords));
  for (auto& x : pts) {
    double norm = 0;
    while (norm == 0) {
      for (auto& c : x) c = standard_normal(rng);
      norm = 0;
      for (double c : x) norm += c * c;
    }
    norm = std::sqrt(norm);
    for (auto& c : x) c /= norm;
  }
  int half = p.h / 2;
  Graph g(p.h);
  for (int a = 0; a < p.h; ++a) {
    for (int b = a + 1; b < p.h; ++b) {
      double dot = 0;
      for (int i = 0; i < coords; ++i) dot += pts[a][i] * pts[b][i];
      double angle = std::acos(std::clamp(dot, -1.0, 1.0));
      bool same = (a < half) == (b < half);
      if (same ? angle > p.theta_within : angle < p.theta_cross) g.add_edge(a, b);
    }
  }
  return g;
}

Graph random_maximal_kt_free(int n, int t, std::uint64_t seed) {
  if (t < 2) throw ParameterError("t must be at least 2");
  Rng rng(seed);
  Graph g(n);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[uniform_below(rng, i)]);
  for (auto [u, v] : pairs) {
    VertexSet common = g.neighbors(u) & g.neighbors(v);
    if (!contains_clique_in(g, common, t - 2)) g.add_edge(u, v);
  }
  return g;
}

std::optional<Graph> named_fixed_graph(const std::string& name) {
  if (name == "c5") return cycle_graph(5);
  if (name == "petersen") return petersen_graph();
  if (name.starts_with("graph6:")) return from_graph6(name.substr(7));
  return std::nullopt;
}

InnerGenerator named_inner(const std::string& name, std::int64_t budget) {
  if (name == "empty") return [](int size) { return Graph(size); };
  if (name == "complete") return [](int size) { return complete_graph(size); };
  if (name == "cycle") return [](int size) { return size >= 3 ? cycle_graph(size) : path_graph(size); };
  if (auto fixed = named_fixed_graph(name)) {
    Graph base = *fixed;
    return [base](int size) { return pad_with_twins(base, size); };
  }
  auto suffix_int = [&](const std::string& prefix) -> std::int64_t {
    try {
      return std::stoll(name.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ParameterError("bad inner generator name '" + name + "'");
    }
  };
  if (name.starts_with("ramsey:")) {
    int t = static_cast<int>(suffix_int("ramsey:"));
    if (t < 2) throw ParameterError("ramsey:t needs t >= 2");
    return [t, budget](int size) { return min_alpha_graph(t, size, budget, 1).graph; };
  }
  if (name.starts_with("triangle-free-random:")) {
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      auto digits = name.substr(std::string("triangle-free-random:").size());
      if (digits.empty() || digits[0] == '-') throw std::invalid_argument("sign");
      seed = std::stoull(digits, &used);
      if (used != digits.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParameterError("bad inner generator name '" + name + "'");
    }
    return [seed](int size) { return random_maximal_kt_free(size, 3, derive_seed(seed, size)); };
  }
  throw ParameterError("unknown inner generator '" + name + "'");
}

// ---- specs ----

namespace {

const char* kind_name(ConstructionSpec::Kind k) {
  switch (k) {
    case ConstructionSpec::Kind::Turan: return "turan";
    case ConstructionSpec::Kind::Compose: return "compose";
    case ConstructionSpec::Kind::BEJoin: return "be-join";
    case ConstructionSpec::Kind::BollobasErdos: return "bollobas-erdos";
  }
  return "";
}

nlohmann::json be_json(const BollobasErdosParams& p) {
  return {{"h", p.h}, {"dim", p.dim}, {"theta_cross", p.theta_cross}, {"theta_within", p.theta_within},
          {"seed", p.seed}};
}

BollobasErdosParams be_from(const nlohmann::json& j, int h_default) {
  BollobasErdosParams p = default_bollobas_erdos(j.value("h", h_default), j.value("dim", 20),
                                                 j.value("seed", std::uint64_t{1}));
  p.theta_cross = j.value("theta_cross", p.theta_cross);
  p.theta_within = j.value("theta_within", p.theta_within);
  return p;
}

}  // namespace

std::string ConstructionSpec::to_json() const {
  nlohmann::json j{{"kind", kind_name(kind)}};
  switch (kind) {
    case Kind::Turan:
      j["n"] = n;
      j["r"] = r;
      break;
    case Kind::Compose:
      j["n"] = n;
      j["r"] = r;
      j["inner"] = inner;
      break;
    case Kind::BEJoin:
      j["n"] = n;
      j["r"] = r;
      j["inner"] = inner;
      if (h) j["h"] = *h;
      if (!b_graph6.empty())
        j["b_graph6"] = b_graph6;
      else
        j["be"] = be_json(be);
      break;
    case Kind::BollobasErdos:
      j.update(be_json(be));
      break;
  }
  return j.dump();
}

ConstructionSpec ConstructionSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid construction spec: ") + e.what());
  }
  ConstructionSpec spec;
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "turan") {
      spec.kind = Kind::Turan;
    } else if (kind == "compose") {
      spec.kind = Kind::Compose;
    } else if (kind == "be-join") {
      spec.kind = Kind::BEJoin;
    } else if (kind == "bollobas-erdos") {
      spec.kind = Kind::BollobasErdos;
    } else {
      throw ParseError("unknown construction kind '" + kind + "'");
    }
    if (spec.kind == Kind::BollobasErdos) {
      spec.be = be_from(j, 100);
      return spec;
    }
    spec.n = j.at("n").get<int>();
    spec.r = j.at("r").get<int>();
    spec.inner = j.value("inner", "empty");
    if (spec.kind == Kind::BEJoin) {
      if (j.contains("h")) spec.h = j["h"].get<int>();
      spec.b_graph6 = j.value("b_graph6", "");
      int h_default = spec.h ? *spec.h : lower_be_h(spec.n, spec.r);
      spec.be = be_from(j.value("be", nlohmann::json::object()), h_default);
      spec.be.h = h_default;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid construction spec: ") + e.what());
  }
  return spec;
}

ConstructionResult build_construction(const ConstructionSpec& spec, const StatsOptions& stats) {
  ConstructionResult out;
  nlohmann::json meta;
  switch (spec.kind) {
    case ConstructionSpec::Kind::Turan:
      out.graph = turan(spec.n, spec.r);
      break;
    case ConstructionSpec::Kind::Compose: {
      if (auto fixed = named_fixed_graph(spec.inner))
        out.graph = compose_turan(spec.n, spec.r, *fixed);
      else
        out.graph = compose_turan(spec.n, spec.r, named_inner(spec.inner));
      break;
    }
    case ConstructionSpec::Kind::BEJoin: {
      int h = spec.h ? *spec.h : lower_be_h(spec.n, spec.r);
      Graph b;
      if (!spec.b_graph6.empty()) {
        b = from_graph6(spec.b_graph6);
        if (b.order() != h) throw ParameterError("B order does not match h");
      } else if (h == 0) {
        b = Graph(0);
      } else {
        BollobasErdosParams p = spec.be;
        p.h = h - h % 2;
        b = p.h > 0 ? bollobas_erdos(p) : Graph(0);
        if (h % 2 != 0) b = pad_with_twins(b.order() > 0 ? b : Graph(1), h);
        meta["b_spec"] = be_json(p);
      }
      out.graph = lower_be(spec.n, spec.r, b, named_inner(spec.inner));
      meta["h"] = h;
      break;
    }
    case ConstructionSpec::Kind::BollobasErdos:
      out.graph = bollobas_erdos(spec.be);
      break;
  }
  if (spec.kind != ConstructionSpec::Kind::BollobasErdos && spec.inner.starts_with("ramsey:") &&
      spec.kind != ConstructionSpec::Kind::Turan) {
    int t = std::stoi(spec.inner.substr(7));
    nlohmann::json prov = nlohmann::json::array();
    int rest = spec.kind == ConstructionSpec::Kind::BEJoin ? spec.n - meta["h"].get<int>() : spec.n;
    int parts = spec.kind == ConstructionSpec::Kind::BEJoin ? spec.r - 2 : spec.r;
    if (rest > 0 && parts > 0) {
      std::vector<int> sizes = turan_class_sizes(rest, parts);
      std::sort(sizes.begin(), sizes.end());
      sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
      for (int size : sizes) {
        auto m = min_alpha_graph(t, size, 2000, 1);
        prov.push_back({{"size", size}, {"alpha", m.alpha}, {"certified", m.certified}, {"method", m.method}});
      }
    }
    meta["inner_provenance"] = prov;
  }
  const Graph& g = out.graph;
  std::int64_t e = edge_count(g);
  double pairs = static_cast<double>(g.order()) * (g.order() - 1) / 2.0;
  nlohmann::json st{{"n", g.order()}, {"edges", e}, {"density", pairs > 0 ? e / pairs : 0.0}};
  if (stats.clique_number && g.order() > 0) st["omega"] = clique_number(g);
  if (stats.independence_number && g.order() > 0) st["alpha"] = independence_number(g);
  nlohmann::json side{{"spec", nlohmann::json::parse(spec.to_json())}, {"stats", st}, {"graph6", to_graph6(g)}};
  if (!meta.is_null()) side["meta"] = meta;
  out.sidecar_json = side.dump();
  return out;
}

}  // namespace rtlab

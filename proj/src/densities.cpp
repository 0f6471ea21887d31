#include "rtlab/densities.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rtlab/errors.hpp"

namespace rtlab {

using nlohmann::json;

namespace {

FunctionClass make(FunctionForm form, int t = 2, int q = 2) {
  FunctionClass f;
  f.form = form;
  f.t = t;
  f.q = q;
  return f;
}

}  // namespace

FunctionClass FunctionClass::identity() { return {}; }
FunctionClass FunctionClass::small_o() { return make(FunctionForm::SmallO); }
FunctionClass FunctionClass::q_of_n(int t) { return make(FunctionForm::Q, t); }
FunctionClass FunctionClass::q_of_small_o(int t) { return make(FunctionForm::QOfSmallO, t); }
FunctionClass FunctionClass::q_over_omega(int t) { return make(FunctionForm::QOverOmega, t); }
FunctionClass FunctionClass::q_of_g(int t, int q) { return make(FunctionForm::QOfG, t, q); }
FunctionClass FunctionClass::q_of_f(int t, int q) { return make(FunctionForm::QOfF, t, q); }

FunctionClass FunctionClass::phi_eps(int t, std::optional<Fraction> eps) {
  FunctionClass f = make(FunctionForm::PhiEps, t);
  f.eps = eps;
  return f;
}

FunctionClass FunctionClass::root(Fraction c) {
  FunctionClass f = make(FunctionForm::Root);
  f.c = c;
  return f;
}

FunctionClass FunctionClass::root_over_omega() {
  FunctionClass f = make(FunctionForm::Root);
  f.over_omega = true;
  return f;
}

void FunctionClass::validate() const {
  switch (form) {
    case FunctionForm::Identity:
    case FunctionForm::SmallO:
      return;
    case FunctionForm::Root:
      if (!over_omega && c <= 0) throw ParameterError("root constant must be positive");
      return;
    case FunctionForm::QOfG:
    case FunctionForm::QOfF:
      if (q < 2) throw ParameterError("q must be at least 2");
      [[fallthrough]];
    default:
      if (t < 2) throw ParameterError("t must be at least 2");
      if (form == FunctionForm::PhiEps && eps && (*eps <= 0 || *eps >= 1))
        throw ParameterError("eps must lie in (0, 1)");
  }
}

std::string FunctionClass::to_string() const {
  std::string ts = std::to_string(t);
  switch (form) {
    case FunctionForm::Identity:
      return "n";
    case FunctionForm::SmallO:
      return "o(n)";
    case FunctionForm::Q:
      return "Q(" + ts + ",n)";
    case FunctionForm::QOfSmallO:
      return "Q(" + ts + ",n/w)";
    case FunctionForm::QOverOmega:
      return "Q(" + ts + ",n)/w";
    case FunctionForm::QOfG:
      return "Q(" + ts + ",g_" + std::to_string(q) + ")";
    case FunctionForm::QOfF:
      return "Q(" + ts + ",f_" + std::to_string(q) + ")";
    case FunctionForm::PhiEps:
      return (eps ? "phi(" + rtlab::to_string(*eps) + ")" : std::string("phi")) + "*Q(" + ts + ",n)";
    case FunctionForm::Root:
      return over_omega ? "sqrt(n log n)/w" : rtlab::to_string(c) + "*sqrt(n log n)";
  }
  return "?";
}

FunctionClass parse_function_class(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (ch != ' ') text += ch;
  std::smatch m;
  auto num = [](const std::string& s) { return std::stoi(s); };
  if (text == "n") return FunctionClass::identity();
  if (text == "o(n)" || text == "n/w") return FunctionClass::small_o();
  if (text == "sqrt(nlogn)/w" || text == "o(sqrt(nlogn))") return FunctionClass::root_over_omega();
  static const std::regex root_re(R"(([0-9./]+)\*sqrt\(nlogn\))");
  if (std::regex_match(text, m, root_re)) return FunctionClass::root(parse_fraction(m[1]));
  static const std::regex q_re(R"(Q\((\d+),(n|n/w|o\(n\)|g_?(\d+)|f_?(\d+))\)(/w)?)");
  if (std::regex_match(text, m, q_re)) {
    int t = num(m[1]);
    std::string arg = m[2];
    FunctionClass f;
    if (m[5].matched) {
      if (arg != "n") throw ParseError("only Q(t,n)/w may be divided by w");
      f = FunctionClass::q_over_omega(t);
    } else if (arg == "n") {
      f = FunctionClass::q_of_n(t);
    } else if (arg == "n/w" || arg == "o(n)") {
      f = FunctionClass::q_of_small_o(t);
    } else if (m[3].matched) {
      f = FunctionClass::q_of_g(t, num(m[3]));
    } else {
      f = FunctionClass::q_of_f(t, num(m[4]));
    }
    f.validate();
    return f;
  }
  static const std::regex phi_re(R"(phi(\((eps|[0-9./]+)\))?\*Q\((\d+),n\))");
  if (std::regex_match(text, m, phi_re)) {
    bool numeric = m[2].matched && m[2] != "eps";
    auto f = FunctionClass::phi_eps(num(m[3]), numeric ? std::optional<Fraction>(parse_fraction(m[2])) : std::nullopt);
    f.validate();
    return f;
  }
  throw ParseError("unrecognised function class '" + raw + "'");
}

namespace {

const std::string kAssumption = "polynomial-ramsey-gap";

// A regime on the scale n > o(n) > g_q > Q(3,n) > Q(3,n/w) > Q(3,n)/w >
// Q(3,g_q) > Q(4,n) > ... ; rank orders the regimes sharing one t.
enum Rank { Lin = 0, Van = 1, Between = 2, Sub = 3 };

struct Level {
  bool root = false;
  int t = 2;
  int rank = Lin;
  int q = 0;
  int scale = 1;  // Lin only: Q(t, n/scale)
  Fraction c2{0};  // root only: c^2
};

Level level_of(const FunctionClass& f) {
  f.validate();
  Level l;
  l.t = f.t;
  switch (f.form) {
    case FunctionForm::Identity:
      l.t = 2;
      break;
    case FunctionForm::SmallO:
      l.t = 2;
      l.rank = Van;
      break;
    case FunctionForm::Q:
      break;
    case FunctionForm::QOfSmallO:
      l.rank = Van;
      break;
    case FunctionForm::QOverOmega:
    case FunctionForm::PhiEps:
      l.rank = Between;
      break;
    case FunctionForm::QOfG:
      l.rank = Sub;
      l.q = f.q;
      break;
    case FunctionForm::QOfF:
      // f_2 = n 2^-omega is an o(n) regime; f_q = g_(q-1) otherwise.
      if (f.q == 2) {
        l.rank = Van;
      } else {
        l.rank = Sub;
        l.q = f.q - 1;
      }
      break;
    case FunctionForm::Root:
      if (f.over_omega) {
        l.t = 3;
        l.rank = Between;
      } else {
        l.root = true;
        l.c2 = f.c * f.c;
      }
      break;
  }
  return l;
}

struct Order {
  bool holds = false;
  bool conditional = false;
};

// Is x eventually at most y? Cross-t comparisons beyond Q(4, .) need the Ramsey gap assumption.
Order at_most(const Level& x, const Level& y) {
  if (x.root && y.root) return {x.c2 <= y.c2, false};
  if (x.root) {
    // (1/sqrt2 - o(1)) sqrt(n log n) <= Q(3, n) and c sqrt(n log n) << n^(1-o(1)).
    if (y.t == 2) return {true, false};
    if (y.t == 3 && y.rank == Lin) return {x.c2 * 2 * y.scale < 1, false};
    return {false, false};
  }
  if (y.root) {
    // Q(3, n/r) <= (sqrt2 + o(1)) sqrt((n/r) log n); Q(t, .) = o(sqrt n) for t >= 4.
    if (x.t >= 4) return {true, false};
    if (x.t == 3) return {x.rank == Lin ? y.c2 * x.scale > 2 : true, false};
    return {false, false};
  }
  if (x.t == y.t) {
    if (x.rank != y.rank) return {x.rank > y.rank, false};
    if (x.rank == Sub) return {x.q >= y.q, false};
    return {true, false};
  }
  if (x.t < y.t) return {false, false};
  if (y.rank == Lin) return {true, false};  // Q(t', .) <= Q(t, n) for t' > t
  return {true, x.t > kUnconditionalMaxRowT};
}

struct Rule {
  Level anchor;
  bool lower = false;
  Fraction value;
  std::string source;
  bool conditional = false;
};

Fraction half_minus(int r) { return Fraction(r - 1, 2 * r); }  // (1/2)(1 - 1/r)

Level lin(int t, int scale = 1) { return Level{false, t, Lin, 0, scale, 0}; }
Level van(int t) { return Level{false, t, Van, 0, 1, 0}; }
Level sub(int t, int q) { return Level{false, t, Sub, q, 1, 0}; }

std::vector<Rule> rules_for(int s) {
  std::vector<Rule> out;
  out.push_back({lin(2), false, Fraction(s - 2, 2 * (s - 1)), "turan"});
  out.push_back({lin(2), true, Fraction(s - 2, 2 * (s - 1)), "turan"});
  // Turan graph T(n, r) with a K_(t+1)-free Ramsey graph in every class.
  for (int t = 3; t <= s; ++t) {
    int r = (s - 1) / (t - 1);
    if (r >= 1) out.push_back({lin(t, r), true, half_minus(r), "construction-turan-ramsey"});
  }
  if (s % 2 == 1) {
    out.push_back({van(2), false, half_minus((s - 1) / 2), "erdos-sos"});
  } else {
    int r = s / 2;
    Fraction v(3 * r - 5, 6 * r - 4);
    out.push_back({van(2), false, v, "ehss-even-clique"});
    out.push_back({van(2), true, v, "ehss-even-clique"});
  }
  for (int t = 2; t < s; ++t)
    out.push_back({van(t), false, Fraction(s - t - 1, 2 * (s - 1)), "ehsss-independence"});
  for (int p = 2; p <= s; ++p) {
    int q = std::max(2, (s + p - 1) / p);
    out.push_back({sub(p, q), false, half_minus(q - 1), "hdrc-kpq"});
  }
  for (int p = 3; p <= s; ++p) {
    int q = std::max(2, (s + p) / p);  // smallest q with pq - 1 >= s
    Level at = q == 2 ? van(p) : sub(p, q - 1);
    out.push_back({at, false, half_minus(q - 1), "hdrc-kpq-minus-one", p > kUnconditionalMaxRowT});
  }
  // K_2t at Q(t, n/w): pick p < t with Q(t, n/w) <= Q(p, g_q), q = ceil(2t/p).
  for (int t = std::max(3, (s + 1) / 2); t < s; ++t) {
    for (int p = 2; p < t; ++p) {
      int q = std::max(2, (2 * t + p - 1) / p);
      Fraction v = Fraction(t - 1, 2 * t) * Fraction(q - 2, q - 1);
      out.push_back({van(t), false, v, "even-clique-regularity", t > kUnconditionalMaxRowT});
    }
  }
  return out;
}

json side_json(const BoundSide& b) {
  return {{"value", to_string(b.value)}, {"source", b.source}, {"conditional", b.conditional}};
}

}  // namespace

std::string DensityBound::render() const {
  return kind == BoundKind::Exact ? to_string(value) : "≤ " + to_string(value);
}

std::string DensityBound::to_json() const {
  json j{{"s", s},
         {"f", f.to_string()},
         {"kind", kind == BoundKind::Exact ? "exact" : "upper"},
         {"value", to_string(value)},
         {"lower", side_json(lower)},
         {"upper", side_json(upper)},
         {"assumptions", assumptions},
         {"text", render()}};
  return j.dump();
}

DensityBound density_lookup(int s, const FunctionClass& f, const Assumptions& a) {
  if (s < 3) throw ParameterError("clique size must be at least 3");
  Level x = level_of(f);
  DensityBound out;
  out.s = s;
  out.f = f;
  out.lower = {Fraction(0), "trivial", false};
  std::optional<BoundSide> upper;
  for (const Rule& rule : rules_for(s)) {
    Order o = rule.lower ? at_most(rule.anchor, x) : at_most(x, rule.anchor);
    if (!o.holds) continue;
    bool cond = o.conditional || rule.conditional;
    if (cond && !a.polynomial_ramsey_gap) continue;
    BoundSide side{rule.value, rule.source, cond};
    if (rule.lower) {
      if (side.value > out.lower.value || (side.value == out.lower.value && out.lower.conditional && !cond))
        out.lower = side;
    } else if (!upper || side.value < upper->value || (side.value == upper->value && upper->conditional && !cond)) {
      upper = side;
    }
  }
  out.upper = *upper;  // the Turan rule always applies
  out.kind = out.lower.value == out.upper.value ? BoundKind::Exact : BoundKind::Upper;
  out.value = out.upper.value;
  if (out.lower.conditional || out.upper.conditional) out.assumptions.push_back(kAssumption);
  return out;
}

StrongPT strong_pt_check(int s, int t) {
  if (t < 2 || t >= s) throw ParameterError("need 2 <= t < s");
  StrongPT out;
  out.r = (s - 1) / (t - 1);
  out.l = (s - 1) % (t - 1);
  out.holds = out.l < out.r;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

std::string PTResult::to_json() const {
  json j{{"verdict", to_string(verdict)},
         {"f", json::parse(at_f.to_json())},
         {"g", json::parse(at_g.to_json())},
         {"reason", reason},
         {"assumptions", assumptions}};
  return j.dump();
}

PTResult pt_from_to(int s, const FunctionClass& f, const FunctionClass& g, const Assumptions& a) {
  PTResult out;
  out.at_f = density_lookup(s, f, a);
  out.at_g = density_lookup(s, g, a);
  Order o = at_most(level_of(g), level_of(f));
  auto note = [&](bool cond) {
    if (cond && std::find(out.assumptions.begin(), out.assumptions.end(), kAssumption) == out.assumptions.end())
      out.assumptions.push_back(kAssumption);
  };
  if (!o.holds || (o.conditional && !a.polynomial_ramsey_gap)) {
    out.reason = "g is not known to be smaller than f";
    return out;
  }
  note(o.conditional);
  if (out.at_g.upper.value < out.at_f.lower.value) {
    out.verdict = Verdict::Yes;
    out.reason = "upper density at g below lower density at f";
    note(out.at_g.upper.conditional || out.at_f.lower.conditional);
    return out;
  }
  if (out.at_g.lower.value >= out.at_f.upper.value) {
    out.verdict = Verdict::No;
    out.reason = "lower density at g reaches upper density at f";
    note(out.at_g.lower.conditional || out.at_f.upper.conditional);
    return out;
  }
  // Implications from a transition between consecutive Q(t, n) and Q(t+1, n).
  int t = f.t;
  bool weak = f.form == FunctionForm::Q && g.form == FunctionForm::PhiEps && g.t == t && !g.eps;
  bool strong = f.form == FunctionForm::Q && g.form == FunctionForm::QOverOmega && g.t == t;
  bool flat = f.form == FunctionForm::PhiEps && !f.eps && g.form == FunctionForm::Q && g.t == t + 1;
  if (weak || strong || flat) {
    if (t + 1 < s) {
      PTResult step = pt_from_to(s, FunctionClass::q_of_n(t), FunctionClass::q_of_n(t + 1), a);
      if (step.verdict == Verdict::Yes) {
        bool step_cond = !step.assumptions.empty();
        if (weak) {
          out.verdict = Verdict::Yes;
          out.reason = "weak transition: transition from Q(t,n) to Q(t+1,n)";
          note(step_cond);
        } else if (strong && a.polynomial_ramsey_gap) {
          out.verdict = Verdict::Yes;
          out.reason = "strong transition: transition from Q(t,n) to Q(t+1,n) under the Ramsey gap assumption";
          note(true);
        } else if (flat && a.polynomial_ramsey_gap) {
          out.verdict = Verdict::No;
          out.reason = "density already reaches its Q(t+1,n) value at phi_eps Q(t,n)";
          note(true);
        }
      }
    }
  }
  if (out.verdict == Verdict::Unknown) out.reason = "bounds overlap";
  return out;
}

namespace {

struct RowSpec {
  std::string label;
  int t;
  int rank;
};

std::vector<RowSpec> row_specs(int s_hi) {
  std::vector<RowSpec> rows;
  int t_max = (s_hi + 2) / 2;
  for (int t = 2; t <= t_max; ++t) {
    std::string ts = std::to_string(t);
    if (t == 2) {
      rows.push_back({"n", 2, Lin});
      rows.push_back({"o(n)", 2, Van});
      rows.push_back({"g_q(n)", 2, Sub});
    } else {
      rows.push_back({"Q(" + ts + ",n)", t, Lin});
      rows.push_back({t == 3 ? "o(sqrt(n log n))" : "Q(" + ts + ",n/w)", t, Van});
      rows.push_back({"Q(" + ts + ",g_q(n))", t, Sub});
    }
  }
  return rows;
}

FunctionClass row_function(const RowSpec& r, int q) {
  if (r.rank == Lin) return r.t == 2 ? FunctionClass::identity() : FunctionClass::q_of_n(r.t);
  if (r.rank == Van) return r.t == 2 ? FunctionClass::small_o() : FunctionClass::q_of_small_o(r.t);
  return FunctionClass::q_of_g(r.t, q);
}

// Sub rows report the first g_q at which the density is determined, else the
// first g_q with any bound below Turan's.
TableCell raw_cell(const RowSpec& r, int s, const Assumptions& a) {
  TableCell cell;
  if (r.rank != Sub) {
    cell.bound = density_lookup(s, row_function(r, 0), a);
  } else {
    std::optional<DensityBound> fallback;
    int fallback_q = 0;
    for (int q = 2; q <= s + 1; ++q) {
      auto b = density_lookup(s, row_function(r, q), a);
      if (b.kind == BoundKind::Exact) {
        cell.bound = b;
        cell.q = q;
        break;
      }
      if (!fallback && b.upper.source != "turan") {
        fallback = b;
        fallback_q = q;
      }
    }
    if (!cell.bound && fallback) {
      cell.bound = fallback;
      cell.q = fallback_q;
    }
  }
  if (cell.bound) {
    cell.exact = cell.bound->kind == BoundKind::Exact;
    cell.text = (cell.q ? std::to_string(*cell.q) + ": " : "") + cell.bound->render();
  }
  return cell;
}

std::string escape_html(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

DensityTable table_emit(int s_lo, int s_hi, const Assumptions& a) {
  if (s_lo < 3 || s_hi < s_lo || s_hi > 40) throw ParameterError("clique range must satisfy 3 <= lo <= hi <= 40");
  auto specs = row_specs(s_hi);
  const int nr = static_cast<int>(specs.size());
  const int nc = s_hi - s_lo + 1;
  // Display selection is made on the full (assumed) grid.
  Assumptions full{true};
  std::vector<std::vector<TableCell>> grid(nr, std::vector<TableCell>(nc));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) grid[i][j] = raw_cell(specs[i], s_lo + j, full);
  std::vector<std::vector<bool>> shown(nr, std::vector<bool>(nc, true));
  for (int j = 0; j < nc; ++j) {
    int i = 0;
    while (i < nr) {
      const auto& c = grid[i][j];
      if (!c.exact) {
        ++i;
        continue;
      }
      int k = i;
      while (k + 1 < nr && grid[k + 1][j].exact && grid[k + 1][j].bound->value == c.bound->value) ++k;
      bool zero = c.bound->value == Fraction(0);
      for (int m = i + 1; m <= k; ++m) shown[m][j] = !zero && m == k ? true : false;
      if (zero)
        for (int m = k + 1; m < nr; ++m) shown[m][j] = false;
      i = k + 1;
    }
  }
  DensityTable out;
  out.title = "Ramsey-Turan densities of cliques";
  for (int j = 0; j < nc; ++j) out.columns.push_back("K" + std::to_string(s_lo + j));
  for (const auto& r : specs) out.rows.push_back(r.label);
  out.cells.assign(nr, std::vector<TableCell>(nc));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      if (!shown[i][j]) continue;
      int s = s_lo + j;
      bool unconditional_region =
          s <= kUnconditionalMaxClique || specs[i].t < kUnconditionalMaxRowT ||
          (specs[i].t == kUnconditionalMaxRowT && specs[i].rank == Lin);
      if (a.polynomial_ramsey_gap) {
        out.cells[i][j] = grid[i][j];
      } else if (!unconditional_region) {
        out.cells[i][j].text = "—";
      } else {
        out.cells[i][j] = raw_cell(specs[i], s, a);
      }
    }
  // Drop trailing rows with nothing printed.
  while (!out.rows.empty() &&
         std::all_of(out.cells.back().begin(), out.cells.back().end(), [](const TableCell& c) { return c.text.empty(); })) {
    out.rows.pop_back();
    out.cells.pop_back();
  }
  return out;
}

DensityTable table_k13(const Assumptions& a) {
  std::vector<FunctionClass> fs{FunctionClass::identity(),  FunctionClass::small_o(),        FunctionClass::q_of_n(3),
                                FunctionClass::root_over_omega(), FunctionClass::q_of_n(4), FunctionClass::q_of_small_o(4),
                                FunctionClass::q_of_n(5),   FunctionClass::q_of_small_o(5), FunctionClass::q_of_g(5, 2),
                                FunctionClass::q_of_n(7),   FunctionClass::q_of_small_o(7)};
  DensityTable out;
  out.title = "Ramsey-Turan densities of K13";
  out.columns = {"K13"};
  for (const auto& f : fs) {
    out.rows.push_back(f.form == FunctionForm::Root ? "o(sqrt(n log n))" : f.to_string());
    TableCell cell;
    cell.bound = density_lookup(13, f, a);
    cell.exact = cell.bound->kind == BoundKind::Exact;
    cell.text = cell.bound->render();
    out.cells.push_back({cell});
  }
  return out;
}

std::string DensityTable::to_plain() const {
  std::vector<std::size_t> width(columns.size() + 1, 0);
  auto len = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;  // count code points
    return n;
  };
  for (const auto& r : rows) width[0] = std::max(width[0], len(r));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    width[j + 1] = len(columns[j]);
    for (const auto& row : cells) width[j + 1] = std::max(width[j + 1], len(row[j].text));
  }
  auto pad = [&](const std::string& s, std::size_t w) { return s + std::string(w - len(s), ' '); };
  std::ostringstream os;
  os << pad("", width[0]);
  for (std::size_t j = 0; j < columns.size(); ++j) os << " | " << pad(columns[j], width[j + 1]);
  os << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << pad(rows[i], width[0]);
    for (std::size_t j = 0; j < columns.size(); ++j) os << " | " << pad(cells[i][j].text, width[j + 1]);
    os << "\n";
  }
  return os.str();
}

std::string DensityTable::to_json() const {
  json rows_j = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json cells_j = json::array();
    for (const auto& c : cells[i]) {
      json cj{{"text", c.text}};
      if (c.bound) {
        cj["kind"] = c.bound->kind == BoundKind::Exact ? "exact" : "upper";
        cj["lower"] = side_json(c.bound->lower);
        cj["upper"] = side_json(c.bound->upper);
        cj["assumptions"] = c.bound->assumptions;
      }
      if (c.q) cj["q"] = *c.q;
      cells_j.push_back(cj);
    }
    rows_j.push_back({{"f", rows[i]}, {"cells", cells_j}});
  }
  return json{{"title", title}, {"columns", columns}, {"rows", rows_j}}.dump();
}

std::string DensityTable::to_html() const {
  std::ostringstream os;
  os << "<table class=\"rt-densities\">\n<caption>" << escape_html(title) << "</caption>\n<tr><th></th>";
  for (const auto& c : columns) os << "<th>" << escape_html(c) << "</th>";
  os << "</tr>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "<tr><th>" << escape_html(rows[i]) << "</th>";
    for (const auto& c : cells[i]) os << "<td>" << escape_html(c.text) << "</td>";
    os << "</tr>\n";
  }
  os << "</table>\n";
  return os.str();
}

}  // namespace rtlab

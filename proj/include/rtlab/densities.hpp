#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtlab/fraction.hpp"

namespace rtlab {

/// Regime of the independence-number bound f(n). Symbolic: omega(n) and o(.)
/// are not evaluated, and Q(t, n/omega) is the same regime as Q(t, o(n)).
enum class FunctionForm {
  Identity,    // n
  SmallO,      // o(n)
  Q,           // Q(t, n)
  QOfSmallO,   // Q(t, n/omega)
  QOverOmega,  // Q(t, n)/omega
  QOfG,        // Q(t, g_q), g_q(n) = n 2^(-omega log^(1-1/q) n); Q(2, g_q) = g_q
  QOfF,        // Q(t, f_q), f_q(n) = n 2^(-omega log^((q-2)/(q-1)) n)
  PhiEps,      // phi_eps(n) Q(t, n), phi_eps(n) = 2^(-log^(1-eps) n)
  Root,        // c sqrt(n log n), or sqrt(n log n)/omega
};

struct FunctionClass {
  FunctionForm form = FunctionForm::Identity;
  int t = 2;
  int q = 2;
  Fraction c{1};
  bool over_omega = false;
  /// PhiEps only; empty means "some eps > 0".
  std::optional<Fraction> eps;

  static FunctionClass identity();
  static FunctionClass small_o();
  static FunctionClass q_of_n(int t);
  static FunctionClass q_of_small_o(int t);
  static FunctionClass q_over_omega(int t);
  static FunctionClass q_of_g(int t, int q);
  static FunctionClass q_of_f(int t, int q);
  static FunctionClass phi_eps(int t, std::optional<Fraction> eps = std::nullopt);
  static FunctionClass root(Fraction c);
  static FunctionClass root_over_omega();

  void validate() const;
  std::string to_string() const;
};

/// Accepts n, o(n), Q(t,n), Q(t,n/w), Q(t,o(n)), Q(t,n)/w, Q(t,g_q), Q(t,f_q),
/// phi(eps)*Q(t,n), phi*Q(t,n), c*sqrt(n log n), sqrt(n log n)/w, o(sqrt(n log n)).
FunctionClass parse_function_class(const std::string& text);

struct Assumptions {
  /// R(l-1, n) <= R(l, n) / n^theta for every l (the polynomial Ramsey gap).
  bool polynomial_ramsey_gap = false;
};

struct BoundSide {
  Fraction value;
  std::string source;
  bool conditional = false;
};

enum class BoundKind { Exact, Upper };

struct DensityBound {
  int s = 0;
  FunctionClass f;
  BoundKind kind = BoundKind::Upper;
  /// Exact value, or the upper bound when kind is Upper.
  Fraction value;
  BoundSide lower;
  BoundSide upper;
  std::vector<std::string> assumptions;
  /// "3/8" or "≤ 2/7".
  std::string render() const;
  std::string to_json() const;
};

/// Tightest bounds on the Ramsey-Turan density of K_s at f from the rule set.
DensityBound density_lookup(int s, const FunctionClass& f, const Assumptions& a = {});

struct StrongPT {
  bool holds = false;
  int r = 0;
  int l = 0;
};

/// s - 1 = r (t - 1) + l with 0 <= l < t - 1; holds iff l < r. Needs 2 <= t < s.
StrongPT strong_pt_check(int s, int t);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct PTResult {
  Verdict verdict = Verdict::Unknown;
  DensityBound at_f;
  DensityBound at_g;
  std::string reason;
  std::vector<std::string> assumptions;
  std::string to_json() const;
};

/// Phase transition from f to a smaller g: yes iff upper(g) < lower(f).
PTResult pt_from_to(int s, const FunctionClass& f, const FunctionClass& g, const Assumptions& a = {});

struct TableCell {
  std::string text;  // "" when not printed
  bool exact = false;
  std::optional<int> q;
  std::optional<DensityBound> bound;
};

struct DensityTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<TableCell>> cells;
  std::string to_plain() const;
  std::string to_json() const;
  std::string to_html() const;
};

/// Largest clique and deepest row whose cells hold without the assumption:
/// columns K_4..K_8, and rows down to Q(4, n).
inline constexpr int kUnconditionalMaxClique = 8;
inline constexpr int kUnconditionalMaxRowT = 4;

/// Phase-transition grid: rows n, o(n), g_q, then Q(t,n), Q(t,n/omega),
/// Q(t,g_q) per t; columns K_lo..K_hi. Along a column only the ends of a run
/// of equal exact values are printed, and nothing below the first 0. With the
/// assumption off, cells outside the unconditional region print as an em dash.
DensityTable table_emit(int s_lo, int s_hi, const Assumptions& a = {});

/// The K_13 column at its eleven transition regimes.
DensityTable table_k13(const Assumptions& a = {});

}  // namespace rtlab

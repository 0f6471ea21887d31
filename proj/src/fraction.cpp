#include "rtlab/fraction.hpp"

#include <charconv>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw ParseError("cannot parse fraction '" + whole + "'");
  return v;
}

}  // namespace

Fraction parse_fraction(const std::string& text) {
  std::string_view t = text;
  auto slash = t.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t den = parse_int(t.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Fraction(parse_int(t.substr(0, slash), text), den);
  }
  auto dot = t.find('.');
  if (dot == std::string_view::npos) return Fraction(parse_int(t, text));
  std::string_view digits = t.substr(dot + 1);
  if (digits.empty() || digits.size() > 15) throw ParseError("cannot parse fraction '" + text + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) den *= 10;
  std::string_view head = t.substr(0, dot);
  bool neg = !head.empty() && head[0] == '-';
  std::int64_t whole = head.empty() || head == "-" ? 0 : parse_int(head, text);
  std::int64_t frac = parse_int(digits, text);
  return Fraction(whole * den + (neg ? -frac : frac), den);
}

std::string to_string(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

}  // namespace rtlab

#include "rtlab/io.hpp"

#include <json.hpp>

#include "rtlab/errors.hpp"

namespace rtlab {

namespace {

void put_order(std::string& out, int n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

int sextet(char c) {
  if (c < 63 || c > 126) throw ParseError(std::string("invalid graph6 character '") + c + "'");
  return c - 63;
}

}  // namespace

std::string to_graph6(const Graph& g) {
  std::string out;
  int n = g.order();
  put_order(out, n);
  int bits = 0;
  int acc = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        bits = 0;
        acc = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph from_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.starts_with(header)) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty graph6 string");
  std::size_t pos = 0;
  long long n = 0;
  if (text[0] != 126) {
    n = sextet(text[0]);
    pos = 1;
  } else if (text.size() >= 2 && text[1] == 126) {
    if (text.size() < 8) throw ParseError("truncated graph6 order");
    for (int i = 2; i < 8; ++i) n = (n << 6) | sextet(text[i]);
    pos = 8;
  } else {
    if (text.size() < 4) throw ParseError("truncated graph6 order");
    for (int i = 1; i < 4; ++i) n = (n << 6) | sextet(text[i]);
    pos = 4;
  }
  if (n > Graph::kMaxOrder) throw CapExceeded("graph6 order exceeds cap");
  long long pairs = n * (n - 1) / 2;
  std::size_t need = static_cast<std::size_t>((pairs + 5) / 6);
  if (text.size() - pos != need) throw ParseError("graph6 length does not match order");
  Graph g(static_cast<int>(n));
  long long k = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++k) {
      int byte = sextet(text[pos + k / 6]);
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(u, v);
    }
  }
  // Padding bits must be zero in canonical graph6.
  if (pairs % 6 != 0) {
    int last = sextet(text.back());
    int pad = static_cast<int>(6 - pairs % 6);
    if (last & ((1 << pad) - 1)) throw ParseError("nonzero graph6 padding bits");
  }
  return g;
}

std::string to_edge_list_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.adjacent(u, v)) edges.push_back({u, v});
  return nlohmann::json{{"n", g.order()}, {"edges", edges}}.dump();
}

Graph from_edge_list_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("edge list JSON needs integer field \"n\"");
  Graph g(doc["n"].get<int>());
  if (doc.contains("edges")) {
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
      try {
        g.add_edge(e[0].get<int>(), e[1].get<int>());
      } catch (const ParameterError& err) {
        throw ParseError(err.what());
      } catch (const nlohmann::json::exception& err) {
        throw ParseError(err.what());
      }
    }
  }
  return g;
}

}  // namespace rtlab

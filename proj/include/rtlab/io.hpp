#pragma once

#include <string>
#include <string_view>

#include "rtlab/graph.hpp"

namespace rtlab {

/// graph6 encoding (no header, no trailing newline).
std::string to_graph6(const Graph& g);
/// Parses one graph6 line; an optional ">>graph6<<" header and trailing
/// whitespace are accepted. Throws ParseError on malformed input.
Graph from_graph6(std::string_view text);

/// {"n": N, "edges": [[u, v], ...]} with u < v in lexicographic order.
std::string to_edge_list_json(const Graph& g);
Graph from_edge_list_json(std::string_view text);

}  // namespace rtlab

#pragma once

#include <string>
#include <string_view>

#include "voltroute/graph.hpp"

namespace voltroute {

// Edge-list text format:
//
//   # comment
//   n m
//   tail head weight      (m lines, whitespace separated)
//
// '#' starts a comment anywhere on a line; blank lines are ignored.
// Throws ParseError carrying the 1-based line number.
WeightedGraph parse_edge_list(std::string_view text);

// Canonical form: header, then one line per stored edge in edge-id order with
// the shortest round-trip decimal for each weight (always with a '.' or
// exponent, e.g. "1.0").
std::string serialize(const WeightedGraph& g);

// Shortest round-trip decimal for a double.
std::string format_real(double x);

WeightedGraph read_graph_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace voltroute

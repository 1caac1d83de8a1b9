#pragma once

#include <cstdint>
#include <string>

#include "voltroute/graph.hpp"

namespace voltroute {

enum class GraphKind { path, cycle, complete, random_regular, glued_paths, random_connected };

struct GeneratorParams {
  int n = 0;       // vertex count (path, cycle, complete, random-regular, random-connected)
  int d = 3;       // degree (random-regular)
  int k = 0;       // number of parallel paths and their length (glued-paths)
  int m = 0;       // edge count (random-connected)
  double min_weight = 1.0;  // weight range (random-connected)
  double max_weight = 1.0;
};

// Unit-weight generators unless noted.
WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);
WeightedGraph complete_graph(int n);

// Uniform-ish random d-regular simple connected graph from the pairing model,
// retrying until the pairing is simple and connected. Throws InvalidArgument
// when n*d is odd or d >= n.
WeightedGraph random_regular(int n, int d, std::uint64_t seed);

// Hubs s = 0 and t = 1 joined by one direct edge and by k internally
// disjoint paths of k edges each: n = 2 + k(k-1), m = k^2 + 1.
WeightedGraph glued_paths(int k);

// Random spanning tree plus extra distinct random edges up to m total; weights
// uniform on [min_weight, max_weight]. Simple and connected.
WeightedGraph random_connected(int n, int m, std::uint64_t seed, double min_weight = 1.0,
                               double max_weight = 1.0);

GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind kind);

WeightedGraph generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed);

}  // namespace voltroute

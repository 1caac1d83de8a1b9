#include "voltroute/generators.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "voltroute/error.hpp"
#include "voltroute/rng.hpp"

namespace voltroute {
namespace {

constexpr int kMaxPairingAttempts = 100000;

template <class Container>
void shuffle(Container& c, Rng& rng) {
  for (std::size_t i = c.size(); i > 1; --i) {
    std::swap(c[i - 1], c[rng.uniform_index(i)]);
  }
}

}  // namespace

WeightedGraph path_graph(int n) {
  if (n < 1) throw InvalidArgument("path: n must be >= 1");
  std::vector<EdgeTriple> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph cycle_graph(int n) {
  if (n < 3) throw InvalidArgument("cycle: n must be >= 3");
  std::vector<EdgeTriple> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
  return WeightedGraph::build(n, edges);
}

WeightedGraph complete_graph(int n) {
  if (n < 1) throw InvalidArgument("complete: n must be >= 1");
  std::vector<EdgeTriple> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  }
  return WeightedGraph::build(n, edges);
}

WeightedGraph random_regular(int n, int d, std::uint64_t seed) {
  if (d < 1 || d >= n) throw InvalidArgument("random-regular: need 1 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw InvalidArgument("random-regular: n*d must be even (n=" + std::to_string(n) +
                          ", d=" + std::to_string(d) + ")");
  }
  Rng rng(seed);
  std::vector<int> points;
  points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < d; ++j) points.push_back(v);
  }

  for (int attempt = 0; attempt < kMaxPairingAttempts; ++attempt) {
    shuffle(points, rng);
    std::set<std::pair<int, int>> seen;
    std::vector<EdgeTriple> edges;
    bool simple = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      const int u = std::min(points[i], points[i + 1]);
      const int v = std::max(points[i], points[i + 1]);
      if (u == v || !seen.insert({u, v}).second) {
        simple = false;
        break;
      }
      edges.push_back({u, v, 1.0});
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end(), [](const EdgeTriple& a, const EdgeTriple& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    WeightedGraph g = WeightedGraph::build(n, edges);
    if (g.connected()) return g;
  }
  throw InvalidArgument("random-regular: no simple connected pairing found");
}

WeightedGraph glued_paths(int k) {
  if (k < 1) throw InvalidArgument("glued-paths: k must be >= 1");
  const int n = 2 + k * (k - 1);
  std::vector<EdgeTriple> edges{{0, 1, 1.0}};
  int next = 2;
  for (int p = 0; p < k; ++p) {
    int prev = 0;
    for (int step = 0; step + 1 < k; ++step) {
      edges.push_back({prev, next, 1.0});
      prev = next++;
    }
    edges.push_back({prev, 1, 1.0});
  }
  return WeightedGraph::build(n, edges);
}

WeightedGraph random_connected(int n, int m, std::uint64_t seed, double min_weight,
                               double max_weight) {
  if (n < 1) throw InvalidArgument("random-connected: n must be >= 1");
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n - 1 || m > max_edges) {
    throw InvalidArgument("random-connected: need n-1 <= m <= n(n-1)/2");
  }
  if (!(min_weight > 0.0) || max_weight < min_weight) {
    throw InvalidArgument("random-connected: need 0 < min_weight <= max_weight");
  }
  Rng rng(seed);
  auto weight = [&] {
    return min_weight == max_weight ? min_weight : rng.uniform(min_weight, max_weight);
  };

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  shuffle(order, rng);

  std::set<std::pair<int, int>> present;
  std::vector<EdgeTriple> edges;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int u = order[i];
    const int v = order[rng.uniform_index(i)];
    present.insert({std::min(u, v), std::max(u, v)});
    edges.push_back({u, v, weight()});
  }
  while (static_cast<int>(edges.size()) < m) {
    const int u = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
    const int v = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
    if (u == v || !present.insert({std::min(u, v), std::max(u, v)}).second) continue;
    edges.push_back({u, v, weight()});
  }
  return WeightedGraph::build(n, edges);
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "complete") return GraphKind::complete;
  if (name == "random-regular") return GraphKind::random_regular;
  if (name == "glued-paths") return GraphKind::glued_paths;
  if (name == "random-connected") return GraphKind::random_connected;
  throw InvalidArgument("unknown graph kind '" + name + "'");
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::complete: return "complete";
    case GraphKind::random_regular: return "random-regular";
    case GraphKind::glued_paths: return "glued-paths";
    case GraphKind::random_connected: return "random-connected";
  }
  return "unknown";
}

WeightedGraph generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed) {
  switch (kind) {
    case GraphKind::path: return path_graph(params.n);
    case GraphKind::cycle: return cycle_graph(params.n);
    case GraphKind::complete: return complete_graph(params.n);
    case GraphKind::random_regular: return random_regular(params.n, params.d, seed);
    case GraphKind::glued_paths: return glued_paths(params.k);
    case GraphKind::random_connected:
      return random_connected(params.n, params.m, seed, params.min_weight, params.max_weight);
  }
  throw InvalidArgument("unknown graph kind");
}

}  // namespace voltroute

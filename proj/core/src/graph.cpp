#include "voltroute/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "voltroute/error.hpp"

namespace voltroute {
namespace {

std::string describe_edge(std::size_t index, const EdgeTriple& e) {
  return "edge #" + std::to_string(index) + " (" + std::to_string(e.u) + ", " +
         std::to_string(e.v) + ", " + std::to_string(e.weight) + ")";
}

void require_size(Eigen::Index actual, int expected, const char* what) {
  if (actual != expected) {
    throw InvalidArgument(std::string(what) + ": expected length " +
                          std::to_string(expected) + ", got " +
                          std::to_string(actual));
  }
}

}  // namespace

WeightedGraph WeightedGraph::build(int n, std::span<const EdgeTriple> edges) {
  if (n <= 0) throw InvalidArgument("graph needs at least one vertex");

  WeightedGraph g;
  g.n_ = n;
  g.edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeTriple& e = edges[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InvalidArgument(describe_edge(i, e) + ": vertex id out of range [0, " +
                            std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InvalidArgument(describe_edge(i, e) + ": self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvalidArgument(describe_edge(i, e) + ": weight must be positive and finite");
    }
    g.edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    if (e.weight != 1.0) g.unweighted_ = false;
  }

  std::vector<std::vector<Incidence>> lists(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    const auto id = static_cast<EdgeId>(i);
    lists[static_cast<std::size_t>(e.tail)].push_back({e.head, id, +1, e.weight});
    lists[static_cast<std::size_t>(e.head)].push_back({e.tail, id, -1, e.weight});
  }

  g.adjacency_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adjacency_.reserve(2 * g.edges_.size());
  g.weighted_degree_.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t v = 0; v < lists.size(); ++v) {
    auto& list = lists[v];
    std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) {
      return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.edge < b.edge;
    });
    double wdeg = 0.0;
    for (const Incidence& inc : list) wdeg += inc.weight;
    g.weighted_degree_[v] = wdeg;
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
    g.adjacency_offsets_[v + 1] = g.adjacency_.size();
  }

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.incident(v)) {
      if (!seen[static_cast<std::size_t>(inc.neighbor)]) {
        seen[static_cast<std::size_t>(inc.neighbor)] = true;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  g.connected_ = reached == n;
  return g;
}

std::span<const Incidence> WeightedGraph::incident(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const Incidence>(adjacency_.data() + adjacency_offsets_[i],
                                    adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
}

int WeightedGraph::degree(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return static_cast<int>(adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
}

EdgeVector gradient_apply(const WeightedGraph& g, const VertexVector& x) {
  require_size(x.size(), g.num_vertices(), "gradient_apply");
  EdgeVector out(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    out[e] = x[edge.tail] - x[edge.head];
  }
  return out;
}

VertexVector divergence_apply(const WeightedGraph& g, const EdgeVector& f) {
  require_size(f.size(), g.num_edges(), "divergence_apply");
  VertexVector out = VertexVector::Zero(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    out[edge.tail] += f[e];
    out[edge.head] -= f[e];
  }
  return out;
}

VertexVector laplacian_apply(const WeightedGraph& g, const VertexVector& x) {
  require_size(x.size(), g.num_vertices(), "laplacian_apply");
  VertexVector out(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    double acc = g.weighted_degree(v) * x[v];
    for (const Incidence& inc : g.incident(v)) acc -= inc.weight * x[inc.neighbor];
    out[v] = acc;
  }
  return out;
}

Eigen::MatrixXd laplacian_dense(const WeightedGraph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    lap(e.tail, e.tail) += e.weight;
    lap(e.head, e.head) += e.weight;
    lap(e.tail, e.head) -= e.weight;
    lap(e.head, e.tail) -= e.weight;
  }
  return lap;
}

Eigen::MatrixXd incidence_dense(const WeightedGraph& g) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(g.num_edges(), g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    b(e, g.edge(e).tail) = 1.0;
    b(e, g.edge(e).head) = -1.0;
  }
  return b;
}

double vertex_expansion_exact(const WeightedGraph& g, int cap) {
  const int n = g.num_vertices();
  if (!g.unweighted()) {
    throw InvalidArgument("vertex_expansion_exact: graph must be unweighted");
  }
  if (n > cap || n > 62) {
    throw LimitExceeded("vertex_expansion_exact: n = " + std::to_string(n) +
                        " exceeds the exhaustive cap " + std::to_string(cap) +
                        "; skip expansion-dependent checks for this graph");
  }
  if (n < 2) throw InvalidArgument("vertex_expansion_exact: needs at least 2 vertices");

  // Vertex n-1 stays outside S; the objective is symmetric under complement.
  // Walk the remaining subsets in Gray-code order so each step moves one
  // vertex and the cut size updates in O(deg).
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::uint64_t mask = 0;
  long long cut = 0;
  int size = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 1; i < count; ++i) {
    const int v = std::countr_zero(i);
    long long into_s = 0;
    for (const Incidence& inc : g.incident(v)) {
      if ((mask >> inc.neighbor) & 1U) ++into_s;
    }
    const long long deg = g.degree(v);
    if ((mask >> v) & 1U) {
      mask &= ~(std::uint64_t{1} << v);
      cut += 2 * into_s - deg;
      --size;
    } else {
      mask |= std::uint64_t{1} << v;
      cut += deg - 2 * into_s;
      ++size;
    }
    const double ratio = static_cast<double>(cut) / std::min(size, n - size);
    best = std::min(best, ratio);
  }
  return best;
}

Eigen::VectorXd laplacian_spectrum(const WeightedGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian_dense(g),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double fiedler_eigenvalue(const WeightedGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("fiedler_eigenvalue: graph is disconnected");
  if (g.num_vertices() < 2) throw InvalidArgument("fiedler_eigenvalue: needs at least 2 vertices");
  return laplacian_spectrum(g)[1];
}

int diameter(const WeightedGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("diameter: graph is disconnected");
  const int n = g.num_vertices();
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(n));
  for (VertexId src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<VertexId> frontier;
    dist[static_cast<std::size_t>(src)] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const VertexId v = frontier.front();
      frontier.pop();
      for (const Incidence& inc : g.incident(v)) {
        auto& d = dist[static_cast<std::size_t>(inc.neighbor)];
        if (d < 0) {
          d = dist[static_cast<std::size_t>(v)] + 1;
          best = std::max(best, d);
          frontier.push(inc.neighbor);
        }
      }
    }
  }
  return best;
}

int max_degree(const WeightedGraph& g) {
  int best = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

double max_weighted_degree(const WeightedGraph& g) {
  double best = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.weighted_degree(v));
  return best;
}

SpectralSummary spectral_summary(const WeightedGraph& g, int expansion_cap) {
  if (!g.connected()) throw DisconnectedGraph("spectral_summary: graph is disconnected");
  if (g.num_vertices() < 2) throw InvalidArgument("spectral_summary: needs at least 2 vertices");
  SpectralSummary s;
  const Eigen::VectorXd spectrum = laplacian_spectrum(g);
  s.fiedler = spectrum[1];
  s.lambda_max = spectrum[spectrum.size() - 1];
  s.diameter = diameter(g);
  if (g.unweighted() && g.num_vertices() <= expansion_cap) {
    s.alpha = vertex_expansion_exact(g, expansion_cap);
  }
  return s;
}

}  // namespace voltroute

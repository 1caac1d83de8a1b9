#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace voltroute {

using VertexId = int;
using EdgeId = int;

// Dense real vector indexed by vertex id.
using VertexVector = Eigen::VectorXd;
// Dense real vector indexed by canonical edge id. Entry e is the signed
// quantity along the canonical orientation tail -> head.
using EdgeVector = Eigen::VectorXd;

// Input edge: endpoints in any order.
struct EdgeTriple {
  VertexId u;
  VertexId v;
  double weight;
};

// Stored edge, always tail < head.
struct Edge {
  VertexId tail;
  VertexId head;
  double weight;
};

// One entry of a vertex's adjacency list. sign is +1 when the owning vertex
// is the tail of `edge` and -1 when it is the head.
struct Incidence {
  VertexId neighbor;
  EdgeId edge;
  int sign;
  double weight;
};

// Undirected multigraph with positive conductances and canonical edge
// orientation tail < head. Immutable after construction.
class WeightedGraph {
 public:
  // Throws InvalidArgument naming the offending edge for self-loops,
  // nonpositive or non-finite weights and out-of-range ids.
  static WeightedGraph build(int n, std::span<const EdgeTriple> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  // Sorted by (neighbor, edge id).
  std::span<const Incidence> incident(VertexId v) const;

  // Number of incident edges, parallel edges counted separately.
  int degree(VertexId v) const;
  // Sum of incident weights, accumulated in adjacency order.
  double weighted_degree(VertexId v) const {
    return weighted_degree_[static_cast<std::size_t>(v)];
  }

  bool connected() const { return connected_; }
  // True when every weight equals 1.
  bool unweighted() const { return unweighted_; }

 private:
  WeightedGraph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<Incidence> adjacency_;
  std::vector<double> weighted_degree_;
  bool connected_ = false;
  bool unweighted_ = true;
};

inline WeightedGraph build_graph(int n, std::span<const EdgeTriple> edges) {
  return WeightedGraph::build(n, edges);
}

// (Bx)_e = x_tail - x_head.
EdgeVector gradient_apply(const WeightedGraph& g, const VertexVector& x);
// (B*f)_v = sum_{e: tail=v} f_e - sum_{e: head=v} f_e.
VertexVector divergence_apply(const WeightedGraph& g, const EdgeVector& f);
// Lx with L = B*WB, evaluated vertex by vertex from the adjacency lists.
VertexVector laplacian_apply(const WeightedGraph& g, const VertexVector& x);
Eigen::MatrixXd laplacian_dense(const WeightedGraph& g);
// Signed incidence matrix B (m x n).
Eigen::MatrixXd incidence_dense(const WeightedGraph& g);

inline constexpr int kDefaultExpansionCap = 24;

// Exact vertex expansion min_S |E(S, S^c)| / min(|S|, |S^c|) over all
// nonempty proper S. Requires unit weights and n <= cap.
double vertex_expansion_exact(const WeightedGraph& g, int cap = kDefaultExpansionCap);

// All Laplacian eigenvalues, ascending.
Eigen::VectorXd laplacian_spectrum(const WeightedGraph& g);
// Smallest nonzero Laplacian eigenvalue; throws DisconnectedGraph.
double fiedler_eigenvalue(const WeightedGraph& g);
// Hop diameter of the unweighted skeleton; throws DisconnectedGraph.
int diameter(const WeightedGraph& g);
int max_degree(const WeightedGraph& g);
double max_weighted_degree(const WeightedGraph& g);

struct SpectralSummary {
  double fiedler = 0.0;
  double lambda_max = 0.0;
  std::optional<double> alpha;  // present only when computed exactly
  int diameter = 0;
};

// Computes alpha when the graph is unweighted and n <= expansion_cap.
SpectralSummary spectral_summary(const WeightedGraph& g,
                                 int expansion_cap = kDefaultExpansionCap);

}  // namespace voltroute

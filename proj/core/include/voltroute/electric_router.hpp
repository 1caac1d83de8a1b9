#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "voltroute/graph.hpp"
#include "voltroute/laplacian_solver.hpp"
#include "voltroute/rng.hpp"

namespace voltroute {

// Signed flow on canonical edges.
using EdgeFlow = EdgeVector;

// Zero-sum vertex vector. Values whose sum is within 1e-12 * ||d||_1 of zero
// are re-centered; larger imbalances are rejected.
class Demand {
 public:
  struct Pair {
    VertexId source;
    VertexId sink;
    double amount;
  };

  explicit Demand(VertexVector values);

  // amount * (chi_s - chi_t).
  static Demand pair(int n, VertexId source, VertexId sink, double amount = 1.0);

  const VertexVector& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::optional<Pair>& annotation() const { return pair_; }
  // Total amount shipped: half the l1 norm.
  double amount() const { return 0.5 * values_.lpNorm<1>(); }

 private:
  VertexVector values_;
  std::optional<Pair> pair_;
};

using DemandSet = std::vector<Demand>;

struct MultiFlow {
  std::vector<EdgeFlow> columns;
};

// phi^[v] for every vertex v, stored as column v of an n x n matrix.
class PotentialTable {
 public:
  enum class Provenance { exact, series, symmetrized, perturbed };

  PotentialTable(Eigen::MatrixXd columns, Provenance provenance, int series_degree = -1);

  static PotentialTable exact(const PinvOracle& oracle);

  int size() const { return static_cast<int>(columns_.cols()); }
  Provenance provenance() const { return provenance_; }
  int series_degree() const { return series_degree_; }
  const Eigen::MatrixXd& columns() const { return columns_; }

  // phi^[v].
  VertexVector vector(VertexId v) const { return columns_.col(v); }
  // phi^[v]_u.
  double entry(VertexId v, VertexId u) const { return columns_(u, v); }

 private:
  Eigen::MatrixXd columns_;
  Provenance provenance_;
  int series_degree_;
};

// Adds to every table vector an independent uniformly random direction scaled
// to l2 norm exactly nu.
PotentialTable perturb_table(const PotentialTable& table, double nu, Rng& rng);

// phi^[s] - phi^[t] assembled from table vectors.
VertexVector pair_potentials(const PotentialTable& table, VertexId source, VertexId sink);

// Electric routing E(d) = W B L^+ d over a fixed connected graph.
class ElectricRouter {
 public:
  // Throws DisconnectedGraph.
  explicit ElectricRouter(WeightedGraph g);

  const WeightedGraph& graph() const { return graph_; }
  const PinvOracle& oracle() const { return oracle_; }

  VertexVector potentials(const Demand& d) const;
  EdgeFlow route(const Demand& d) const;
  // Column tau is route(ds[tau]); columns may be evaluated in parallel.
  MultiFlow route_set(const DemandSet& ds) const;

  // Pi = W^{1/2} B L^+ B* W^{1/2} (m x m).
  Eigen::MatrixXd pi_matrix() const;
  // ||W^{1/2} Pi W^{-1/2}||_{1->1} = ||W B L^+ B*||_{1->1}.
  double competitive_bound() const;

 private:
  void check_demand(const Demand& d) const;

  WeightedGraph graph_;
  PinvOracle oracle_;
};

EdgeFlow electric_flow(const WeightedGraph& g, const Demand& d);
MultiFlow route_set(const WeightedGraph& g, const DemandSet& ds);

// max_e sum_tau |f_{tau,e} / w_e|.
double congestion(const WeightedGraph& g, const MultiFlow& mf);

Eigen::MatrixXd pi_matrix(const WeightedGraph& g);
double competitive_bound(const WeightedGraph& g);

// One demand per edge: w_e (chi_tail - chi_head).
DemandSet worst_case_demands(const WeightedGraph& g);

// (phi^[u]_s - phi^[u]_t) - (phi^[v]_s - phi^[v]_t): the potential drop from
// u to v of the unit (s, t) flow, read from the tables of u and v.
double forward_coefficient(const PotentialTable& table, VertexId s, VertexId t, VertexId u,
                           VertexId v);
// weight * forward_coefficient: the flow from u to v over an edge of that
// conductance.
double edge_flow_coefficient(const PotentialTable& table, VertexId s, VertexId t, VertexId u,
                             VertexId v, double weight);

struct BoundValue {
  double value = 0.0;
  bool degenerate = false;  // ln(n/2) = 0 (n = 2): the closed form carries no information
};

// (4 ln(n/2)) / (alpha ln(2 d_max / (2 d_max - alpha))) for unweighted graphs.
BoundValue eta_expansion_bound(const WeightedGraph& g, double alpha);
// Same, computing alpha exactly (n <= expansion cap).
BoundValue eta_expansion_bound(const WeightedGraph& g);

// 2 D / d_max.
double lplus_diameter_lower_bound(const WeightedGraph& g);

}  // namespace voltroute

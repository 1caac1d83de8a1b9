#pragma once

// Reference computations for the tests. Nothing here calls into the solver,
// router, walk or cut code; the only library dependencies are the graph
// container and the RNG.

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "voltroute/graph.hpp"
#include "voltroute/rng.hpp"

namespace voltroute::oracle {

// Dense L assembled edge by edge.
Eigen::MatrixXd laplacian(const WeightedGraph& g);

// L^+ = (L + J/n)^{-1} - J/n for connected g.
Eigen::MatrixXd pinv_shifted(const WeightedGraph& g);

// Closed forms. K_n: (I - J/n)/n. C_n: entry (i, j) depends only on the
// cyclic distance d: (n^2 - 1)/(12 n) - d (n - d)/(2 n).
Eigen::MatrixXd complete_pinv(int n);
Eigen::MatrixXd cycle_pinv(int n);

// Ground the last vertex, solve the reduced system by LU, center.
Eigen::VectorXd grounded_potentials(const WeightedGraph& g, const Eigen::VectorXd& d);
Eigen::VectorXd grounded_flow(const WeightedGraph& g, const Eigen::VectorXd& d);

// min over S of |E(S, S^c)| / min(|S|, |S^c|) by plain bitmask enumeration.
double expansion_by_subsets(const WeightedGraph& g);

int bfs_diameter(const WeightedGraph& g);

double max_abs_column_sum(const Eigen::MatrixXd& a);
// sup ||A x||_1 / ||x||_1 estimated from random x; a lower bound on the norm.
double sampled_one_one(const Eigen::MatrixXd& a, Rng& rng, int trials);

// Walk path probabilities computed straight from the flow: per-edge directed
// flows, start 2 max(0, sigma)/sum|sigma|, step f/max(in, out), exit
// max(0, -sigma)/max(in, out). Simple paths by DFS over graph neighbors.
std::map<std::vector<int>, double> walk_paths(const WeightedGraph& g, const Eigen::VectorXd& f);

// Random connected graph: spanning tree then extra edges (parallel edges
// allowed when multi is set), weights from `weights` or 1.
struct GraphSpec {
  int min_n = 2;
  int max_n = 10;
  int max_extra = 10;
  bool weighted = false;
  bool multi = false;
};
WeightedGraph random_graph(Rng& rng, const GraphSpec& spec);

// Zero-sum vector with unit l2 norm.
Eigen::VectorXd random_unit_zero_sum(Rng& rng, int n);

}  // namespace voltroute::oracle

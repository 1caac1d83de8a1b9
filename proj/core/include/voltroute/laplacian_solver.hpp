#pragma once

#include <Eigen/Dense>

#include "voltroute/graph.hpp"

namespace voltroute {

// Dense Moore-Penrose pseudo-inverse of the Laplacian, from a symmetric
// eigendecomposition with eigenvalues below 1e-9 * lambda_max treated as zero.
// Desk-scale oracle (n up to a few thousand).
class PinvOracle {
 public:
  // Throws DisconnectedGraph.
  explicit PinvOracle(const WeightedGraph& g);

  int size() const { return static_cast<int>(pinv_.rows()); }
  const Eigen::MatrixXd& matrix() const { return pinv_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double fiedler() const { return eigenvalues_.size() > 1 ? eigenvalues_[1] : 0.0; }
  double lambda_max() const { return eigenvalues_[eigenvalues_.size() - 1]; }

  VertexVector apply(const VertexVector& y) const;
  // phi^[v] = L^+ chi_v.
  VertexVector column(VertexId v) const { return pinv_.col(v); }

 private:
  Eigen::MatrixXd pinv_;
  Eigen::VectorXd eigenvalues_;
};

VertexVector pinv_apply(const PinvOracle& oracle, const VertexVector& y);

enum class SeriesMode { plain, normalized };

struct SeriesPlan {
  int k = 0;           // truncation degree
  double tau = 1.0;    // scaling: 2 * max weighted degree (plain) or 3 (normalized)
  SeriesMode mode = SeriesMode::plain;

  static SeriesPlan plain(const WeightedGraph& g, int k) {
    return {k, 2.0 * max_weighted_degree(g), SeriesMode::plain};
  }
  static SeriesPlan normalized(int k) { return {k, 3.0, SeriesMode::normalized}; }
};

// (1/tau) * sum_{w=0..k} (I - L/tau)^w y, by k sparse applications of the
// local update with accumulation starting at the w = 0 term.
VertexVector series_apply(const WeightedGraph& g, const VertexVector& y, const SeriesPlan& plan);

// Smallest k with ||L^+ y - series_apply(y)||_2 <= eps for ||y||_2 = 1, y _|_ 1:
// kappa = tau / lambda_min, k = ceil(ln(kappa/(tau eps)) / ln(kappa/(kappa-1))),
// clamped at 0; kappa == 1 gives 0.
int series_degree_for(double lambda_min, double tau, double eps);

// chi_w - (1/n) 1.
VertexVector centered_indicator(int n, VertexId w);

// Symmetrized series for the table vector of w, before re-centering:
// D^{-1/2} (sum_{i=0..k} (I - NL/3)^i / 3) D^{-1/2} (chi_w - 1/n). Equals
// L^+ chi_w plus a multiple of the all-ones vector in the limit. Unweighted
// graphs only.
VertexVector normalized_series_raw(const WeightedGraph& g, VertexId w, int k);

// normalized_series_raw projected off the all-ones vector; approximates
// L^+ chi_w.
VertexVector normalized_series_apply(const WeightedGraph& g, VertexId w, int k);

// Smallest nonzero eigenvalue of NL = D^{-1/2} L D^{-1/2}.
double normalized_fiedler(const WeightedGraph& g);

// Degree k for which normalized_series_apply(g, w, k) is within eps of
// L^+ chi_w in l2 for every w. The input D^{-1/2}(chi_w - 1/n) has norm at
// most d_min^{-1/2} and the output scaling costs another d_min^{-1/2}, so
// this is series_degree_for(normalized_fiedler(g), 3, eps * d_min).
int normalized_series_degree_for(const WeightedGraph& g, double eps);

// Maximum absolute column sum.
double one_one_norm(const Eigen::MatrixXd& a);
double lplus_one_one_norm(const WeightedGraph& g);
double lplus_one_one_norm(const PinvOracle& oracle);

}  // namespace voltroute

#include "voltroute/laplacian_solver.hpp"

#include <cmath>
#include <string>

#include "voltroute/detail/series_kernel.hpp"
#include "voltroute/error.hpp"

namespace voltroute {

PinvOracle::PinvOracle(const WeightedGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("PinvOracle: graph is disconnected");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian_dense(g));
  eigenvalues_ = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double cutoff = 1e-9 * eigenvalues_[eigenvalues_.size() - 1];
  Eigen::VectorXd inverted(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    inverted[i] = eigenvalues_[i] > cutoff ? 1.0 / eigenvalues_[i] : 0.0;
  }
  pinv_ = vectors * inverted.asDiagonal() * vectors.transpose();
  pinv_ = 0.5 * (pinv_ + pinv_.transpose()).eval();
}

VertexVector PinvOracle::apply(const VertexVector& y) const {
  if (y.size() != pinv_.rows()) {
    throw InvalidArgument("pinv_apply: expected length " + std::to_string(pinv_.rows()) +
                          ", got " + std::to_string(y.size()));
  }
  return pinv_ * y;
}

VertexVector pinv_apply(const PinvOracle& oracle, const VertexVector& y) { return oracle.apply(y); }

VertexVector series_apply(const WeightedGraph& g, const VertexVector& y, const SeriesPlan& plan) {
  if (plan.mode != SeriesMode::plain) {
    throw InvalidArgument("series_apply: plan must be in plain mode");
  }
  if (plan.k < 0) throw InvalidArgument("series_apply: k must be >= 0");
  if (!(plan.tau > 0.0)) throw InvalidArgument("series_apply: tau must be positive");
  const int n = g.num_vertices();
  if (y.size() != n) throw InvalidArgument("series_apply: dimension mismatch");

  VertexVector current = y;
  VertexVector acc = y;
  VertexVector next(n);
  for (int round = 0; round < plan.k; ++round) {
    for (VertexId u = 0; u < n; ++u) {
      next[u] = detail::plain_step(
          current[u], g.weighted_degree(u), g.incident(u),
          [&](const Incidence& inc) { return current[inc.neighbor]; }, plan.tau);
    }
    current.swap(next);
    for (VertexId u = 0; u < n; ++u) acc[u] += current[u];
  }
  for (VertexId u = 0; u < n; ++u) acc[u] = acc[u] / plan.tau;
  return acc;
}

int series_degree_for(double lambda_min, double tau, double eps) {
  if (!(lambda_min > 0.0) || !(tau > 0.0) || !(eps > 0.0)) {
    throw InvalidArgument("series_degree_for: lambda_min, tau and eps must be positive");
  }
  if (tau < lambda_min * (1.0 - 1e-12)) {
    throw InvalidArgument("series_degree_for: tau must be >= lambda_min");
  }
  const double kappa = tau / lambda_min;
  if (kappa <= 1.0 + 1e-12) return 0;
  const double k = std::log(kappa / (tau * eps)) / std::log(kappa / (kappa - 1.0));
  if (!(k > 0.0)) return 0;
  return static_cast<int>(std::ceil(k));
}

VertexVector centered_indicator(int n, VertexId w) {
  VertexVector y(n);
  for (VertexId u = 0; u < n; ++u) y[u] = detail::centered_indicator_entry(n, u, w);
  return y;
}

VertexVector normalized_series_raw(const WeightedGraph& g, VertexId w, int k) {
  if (!g.unweighted()) throw InvalidArgument("normalized_series: graph must be unweighted");
  if (!g.connected()) throw DisconnectedGraph("normalized_series: graph is disconnected");
  if (k < 0) throw InvalidArgument("normalized_series: k must be >= 0");
  const int n = g.num_vertices();
  if (n < 2) throw InvalidArgument("normalized_series: needs at least 2 vertices");
  if (w < 0 || w >= n) throw InvalidArgument("normalized_series: vertex out of range");

  VertexVector current(n);
  for (VertexId u = 0; u < n; ++u) {
    current[u] = detail::normalized_input(detail::centered_indicator_entry(n, u, w), g.degree(u));
  }
  VertexVector acc = current;
  VertexVector payload(n);
  VertexVector next(n);
  for (int round = 0; round < k; ++round) {
    for (VertexId u = 0; u < n; ++u) payload[u] = detail::normalized_payload(current[u], g.degree(u));
    for (VertexId u = 0; u < n; ++u) {
      next[u] = detail::normalized_step(current[u], g.degree(u), g.incident(u),
                                        [&](const Incidence& inc) { return payload[inc.neighbor]; });
    }
    current.swap(next);
    for (VertexId u = 0; u < n; ++u) acc[u] += current[u];
  }
  for (VertexId u = 0; u < n; ++u) acc[u] = detail::normalized_output(acc[u], g.degree(u));
  return acc;
}

VertexVector normalized_series_apply(const WeightedGraph& g, VertexId w, int k) {
  VertexVector raw = normalized_series_raw(g, w, k);
  raw.array() -= raw.mean();
  return raw;
}

double normalized_fiedler(const WeightedGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("normalized_fiedler: graph is disconnected");
  const int n = g.num_vertices();
  if (n < 2) throw InvalidArgument("normalized_fiedler: needs at least 2 vertices");
  Eigen::VectorXd inv_sqrt(n);
  for (VertexId u = 0; u < n; ++u) inv_sqrt[u] = 1.0 / std::sqrt(g.weighted_degree(u));
  const Eigen::MatrixXd nl = inv_sqrt.asDiagonal() * laplacian_dense(g) * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(nl, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[1];
}

int normalized_series_degree_for(const WeightedGraph& g, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("normalized_series_degree_for: eps must be positive");
  int d_min = g.degree(0);
  for (VertexId u = 1; u < g.num_vertices(); ++u) d_min = std::min(d_min, g.degree(u));
  return series_degree_for(normalized_fiedler(g), 3.0, eps * d_min);
}

double one_one_norm(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

double lplus_one_one_norm(const PinvOracle& oracle) { return one_one_norm(oracle.matrix()); }

double lplus_one_one_norm(const WeightedGraph& g) { return lplus_one_one_norm(PinvOracle(g)); }

}  // namespace voltroute

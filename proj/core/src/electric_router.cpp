#include "voltroute/electric_router.hpp"

#include <cmath>
#include <string>

#include "voltroute/error.hpp"
#include "voltroute/parallel.hpp"

namespace voltroute {

Demand::Demand(VertexVector values) : values_(std::move(values)) {
  const double sum = values_.sum();
  const double l1 = values_.lpNorm<1>();
  if (!std::isfinite(sum) || !std::isfinite(l1)) {
    throw InvalidArgument("demand has non-finite entries");
  }
  if (std::abs(sum) > 1e-12 * l1) {
    throw InvalidArgument("demand is not zero-sum (sum = " + std::to_string(sum) + ")");
  }
  if (sum != 0.0) values_.array() -= values_.mean();
}

Demand Demand::pair(int n, VertexId source, VertexId sink, double amount) {
  if (source < 0 || source >= n || sink < 0 || sink >= n) {
    throw InvalidArgument("demand endpoint out of range");
  }
  VertexVector d = VertexVector::Zero(n);
  d[source] += amount;
  d[sink] -= amount;
  Demand out(std::move(d));
  out.pair_ = Pair{source, sink, amount};
  return out;
}

PotentialTable::PotentialTable(Eigen::MatrixXd columns, Provenance provenance, int series_degree)
    : columns_(std::move(columns)), provenance_(provenance), series_degree_(series_degree) {
  if (columns_.rows() != columns_.cols()) {
    throw InvalidArgument("potential table must be square");
  }
}

PotentialTable PotentialTable::exact(const PinvOracle& oracle) {
  return PotentialTable(oracle.matrix(), Provenance::exact);
}

PotentialTable perturb_table(const PotentialTable& table, double nu, Rng& rng) {
  if (!(nu >= 0.0)) throw InvalidArgument("perturb_table: nu must be nonnegative");
  Eigen::MatrixXd cols = table.columns();
  const int n = table.size();
  for (int v = 0; v < n; ++v) {
    VertexVector dir(n);
    double norm = 0.0;
    do {
      for (int u = 0; u < n; ++u) dir[u] = rng.normal();
      norm = dir.norm();
    } while (norm == 0.0);
    cols.col(v) += (nu / norm) * dir;
  }
  return PotentialTable(std::move(cols), PotentialTable::Provenance::perturbed,
                        table.series_degree());
}

VertexVector pair_potentials(const PotentialTable& table, VertexId source, VertexId sink) {
  return table.vector(source) - table.vector(sink);
}

ElectricRouter::ElectricRouter(WeightedGraph g) : graph_(std::move(g)), oracle_(graph_) {}

void ElectricRouter::check_demand(const Demand& d) const {
  if (d.size() != graph_.num_vertices()) {
    throw InvalidArgument("demand length " + std::to_string(d.size()) +
                          " does not match vertex count " +
                          std::to_string(graph_.num_vertices()));
  }
}

VertexVector ElectricRouter::potentials(const Demand& d) const {
  check_demand(d);
  return oracle_.apply(d.values());
}

EdgeFlow ElectricRouter::route(const Demand& d) const {
  const VertexVector phi = potentials(d);
  EdgeFlow f(graph_.num_edges());
  for (EdgeId e = 0; e < graph_.num_edges(); ++e) {
    const Edge& edge = graph_.edge(e);
    f[e] = edge.weight * (phi[edge.tail] - phi[edge.head]);
  }
  return f;
}

MultiFlow ElectricRouter::route_set(const DemandSet& ds) const {
  if (ds.empty()) throw InvalidArgument("route_set: demand set is empty");
  MultiFlow mf;
  mf.columns.resize(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    try {
      mf.columns[i] = route(ds[i]);
    } catch (const Error& e) {
      throw InvalidArgument("demand column " + std::to_string(i) + ": " + e.what());
    }
  });
  return mf;
}

Eigen::MatrixXd ElectricRouter::pi_matrix() const {
  const Eigen::MatrixXd b = incidence_dense(graph_);
  Eigen::VectorXd sqrt_w(graph_.num_edges());
  for (EdgeId e = 0; e < graph_.num_edges(); ++e) sqrt_w[e] = std::sqrt(graph_.edge(e).weight);
  Eigen::MatrixXd pi = sqrt_w.asDiagonal() * (b * oracle_.matrix() * b.transpose()) *
                       sqrt_w.asDiagonal();
  return 0.5 * (pi + pi.transpose());
}

double ElectricRouter::competitive_bound() const {
  const Eigen::MatrixXd b = incidence_dense(graph_);
  Eigen::VectorXd w(graph_.num_edges());
  for (EdgeId e = 0; e < graph_.num_edges(); ++e) w[e] = graph_.edge(e).weight;
  const Eigen::MatrixXd scaled = w.asDiagonal() * (b * oracle_.matrix() * b.transpose());
  return one_one_norm(scaled);
}

EdgeFlow electric_flow(const WeightedGraph& g, const Demand& d) {
  return ElectricRouter(g).route(d);
}

MultiFlow route_set(const WeightedGraph& g, const DemandSet& ds) {
  return ElectricRouter(g).route_set(ds);
}

double congestion(const WeightedGraph& g, const MultiFlow& mf) {
  const int m = g.num_edges();
  double worst = 0.0;
  for (EdgeId e = 0; e < m; ++e) {
    double load = 0.0;
    for (const EdgeFlow& col : mf.columns) {
      if (col.size() != m) throw InvalidArgument("congestion: flow column length mismatch");
      load += std::abs(col[e] / g.edge(e).weight);
    }
    worst = std::max(worst, load);
  }
  return worst;
}

Eigen::MatrixXd pi_matrix(const WeightedGraph& g) { return ElectricRouter(g).pi_matrix(); }

double competitive_bound(const WeightedGraph& g) { return ElectricRouter(g).competitive_bound(); }

DemandSet worst_case_demands(const WeightedGraph& g) {
  DemandSet ds;
  ds.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges()) ds.push_back(Demand::pair(g.num_vertices(), e.tail, e.head, e.weight));
  return ds;
}

namespace {

void check_table_vertex(const PotentialTable& table, VertexId v) {
  if (v < 0 || v >= table.size()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " not covered by the routing table");
  }
}

}  // namespace

double forward_coefficient(const PotentialTable& table, VertexId s, VertexId t, VertexId u,
                           VertexId v) {
  for (VertexId x : {s, t, u, v}) check_table_vertex(table, x);
  if (u == v) throw InvalidArgument("forward_coefficient: u and v must differ");
  return (table.entry(u, s) - table.entry(u, t)) - (table.entry(v, s) - table.entry(v, t));
}

double edge_flow_coefficient(const PotentialTable& table, VertexId s, VertexId t, VertexId u,
                             VertexId v, double weight) {
  return weight * forward_coefficient(table, s, t, u, v);
}

BoundValue eta_expansion_bound(const WeightedGraph& g, double alpha) {
  if (!g.unweighted()) throw InvalidArgument("eta_expansion_bound: graph must be unweighted");
  if (!(alpha > 0.0)) throw InvalidArgument("eta_expansion_bound: alpha must be positive");
  const double n = g.num_vertices();
  const double two_d = 2.0 * max_degree(g);
  const double log_half_n = std::log(n / 2.0);
  BoundValue out;
  if (log_half_n <= 0.0) {
    out.degenerate = true;
    out.value = 0.0;
    return out;
  }
  out.value = 4.0 * log_half_n / (alpha * std::log(two_d / (two_d - alpha)));
  return out;
}

BoundValue eta_expansion_bound(const WeightedGraph& g) {
  return eta_expansion_bound(g, vertex_expansion_exact(g));
}

double lplus_diameter_lower_bound(const WeightedGraph& g) {
  return 2.0 * diameter(g) / max_degree(g);
}

}  // namespace voltroute

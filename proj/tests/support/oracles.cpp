#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <utility>

namespace voltroute::oracle {

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.tail, e.tail) += e.weight;
    l(e.head, e.head) += e.weight;
    l(e.tail, e.head) -= e.weight;
    l(e.head, e.tail) -= e.weight;
  }
  return l;
}

Eigen::MatrixXd pinv_shifted(const WeightedGraph& g) {
  const int n = g.num_vertices();
  const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd shifted = laplacian(g) + j;
  return shifted.fullPivLu().inverse() - j;
}

Eigen::MatrixXd complete_pinv(int n) {
  return (Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n)) / n;
}

Eigen::MatrixXd cycle_pinv(int n) {
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = std::abs(i - j);
      out(i, j) = (double(n) * n - 1.0) / (12.0 * n) - double(d) * (n - d) / (2.0 * n);
    }
  }
  return out;
}

Eigen::VectorXd grounded_potentials(const WeightedGraph& g, const Eigen::VectorXd& d) {
  const int n = g.num_vertices();
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  if (n > 1) {
    const Eigen::MatrixXd l = laplacian(g);
    phi.head(n - 1) = l.topLeftCorner(n - 1, n - 1).partialPivLu().solve(d.head(n - 1));
  }
  return phi.array() - phi.mean();
}

Eigen::VectorXd grounded_flow(const WeightedGraph& g, const Eigen::VectorXd& d) {
  const Eigen::VectorXd phi = grounded_potentials(g, d);
  Eigen::VectorXd f(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    f[e] = edge.weight * (phi[edge.tail] - phi[edge.head]);
  }
  return f;
}

double expansion_by_subsets(const WeightedGraph& g) {
  const int n = g.num_vertices();
  double best = INFINITY;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    int inside = 0;
    for (int v = 0; v < n; ++v) inside += (mask >> v) & 1u;
    int cut = 0;
    for (const Edge& e : g.edges()) {
      if (((mask >> e.tail) & 1u) != ((mask >> e.head) & 1u)) ++cut;
    }
    best = std::min(best, double(cut) / std::min(inside, n - inside));
  }
  return best;
}

int bfs_diameter(const WeightedGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> nbrs(n);
  for (const Edge& e : g.edges()) {
    nbrs[e.tail].push_back(e.head);
    nbrs[e.head].push_back(e.tail);
  }
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : nbrs[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

double max_abs_column_sum(const Eigen::MatrixXd& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double sampled_one_one(const Eigen::MatrixXd& a, Rng& rng, int trials) {
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(a.cols());
    for (int i = 0; i < x.size(); ++i) x[i] = rng.normal();
    // Sparse directions get close to the extreme points of the l1 ball.
    if (t % 2 == 1) {
      for (int i = 0; i < x.size(); ++i) {
        if (rng.uniform01() < 0.7) x[i] = 0.0;
      }
    }
    const double norm = x.lpNorm<1>();
    if (norm == 0.0) continue;
    best = std::max(best, (a * x).lpNorm<1>() / norm);
  }
  return best;
}

std::map<std::vector<int>, double> walk_paths(const WeightedGraph& g, const Eigen::VectorXd& f) {
  const int n = g.num_vertices();
  const double peak = f.cwiseAbs().maxCoeff();
  // Directed arcs (from, to, flow), one per edge carrying flow.
  std::vector<std::vector<std::pair<int, double>>> out(n);
  std::vector<double> in_total(n, 0.0), out_total(n, 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (std::abs(f[e]) <= 1e-12 * peak) continue;
    const Edge& edge = g.edge(e);
    const int from = f[e] > 0 ? edge.tail : edge.head;
    const int to = f[e] > 0 ? edge.head : edge.tail;
    out[from].push_back({to, std::abs(f[e])});
    out_total[from] += std::abs(f[e]);
    in_total[to] += std::abs(f[e]);
  }
  std::vector<double> sigma(n);
  double abs_sum = 0.0;
  for (int v = 0; v < n; ++v) {
    sigma[v] = out_total[v] - in_total[v];
    if (std::abs(sigma[v]) <= 1e-10 * peak) sigma[v] = 0.0;
    abs_sum += std::abs(sigma[v]);
  }

  std::map<std::vector<int>, double> result;
  std::vector<int> path;
  std::function<void(double)> dfs = [&](double p) {
    const int u = path.back();
    const double scale = std::max(in_total[u], out_total[u]);
    if (sigma[u] < 0) result[path] += p * (-sigma[u] / scale);
    for (const auto& [to, flow] : out[u]) {
      if (std::find(path.begin(), path.end(), to) != path.end()) continue;
      path.push_back(to);
      dfs(p * flow / scale);
      path.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    if (sigma[v] <= 0) continue;
    path.assign(1, v);
    dfs(2.0 * sigma[v] / abs_sum);
  }
  return result;
}

WeightedGraph random_graph(Rng& rng, const GraphSpec& spec) {
  const int n = spec.min_n + int(rng.uniform_index(std::size_t(spec.max_n - spec.min_n + 1)));
  auto weight = [&] { return spec.weighted ? rng.uniform(0.25, 4.0) : 1.0; };
  std::vector<EdgeTriple> edges;
  std::set<std::pair<int, int>> present;
  for (int v = 1; v < n; ++v) {
    const int u = int(rng.uniform_index(std::size_t(v)));
    edges.push_back({v, u, weight()});
    present.insert({u, v});
  }
  const int extra = int(rng.uniform_index(std::size_t(spec.max_extra + 1)));
  for (int i = 0; i < extra; ++i) {
    int u = int(rng.uniform_index(std::size_t(n)));
    int v = int(rng.uniform_index(std::size_t(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!spec.multi && present.count({u, v})) continue;
    present.insert({u, v});
    edges.push_back({u, v, weight()});
  }
  return WeightedGraph::build(n, edges);
}

Eigen::VectorXd random_unit_zero_sum(Rng& rng, int n) {
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();
  y.array() -= y.mean();
  return y / y.norm();
}

}  // namespace voltroute::oracle

#include "voltroute/flow_cutting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "voltroute/error.hpp"
#include "voltroute/rng.hpp"

namespace voltroute {
namespace {

Cut make_cut(const WeightedGraph& g, const CutSequence& cs, const std::vector<char>& inside,
             double level) {
  Cut cut;
  cut.level = level;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (inside[static_cast<std::size_t>(v)]) cut.members.push_back(v);
  }
  cut.size = static_cast<int>(cut.members.size());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (inside[static_cast<std::size_t>(edge.tail)] == inside[static_cast<std::size_t>(edge.head)]) {
      continue;
    }
    cut.crossing_edges.push_back(e);
    cut.crossing_flows.push_back(std::abs(cs.flow[e]));
    cut.flow_sum += std::abs(cs.flow[e]);
  }
  cut.crossing = static_cast<int>(cut.crossing_edges.size());
  if (cut.crossing > 0) cut.delta = 2.0 * cut.flow_sum / cut.crossing;
  return cut;
}

// Potentials that agree up to rounding are made exactly equal, so that tied
// vertices always land on the same side of a level. Values near zero snap to 0.
void snap_ties(VertexVector& psi) {
  const double tol = 1e-12 * psi.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(psi.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return psi[a] < psi[b]; });
  std::size_t lo = 0;
  while (lo < idx.size()) {
    std::size_t hi = lo + 1;
    while (hi < idx.size() && psi[idx[hi]] - psi[idx[hi - 1]] <= tol) ++hi;
    double rep = psi[idx[lo]];
    for (std::size_t i = lo; i < hi; ++i) {
      if (std::abs(psi[idx[i]]) <= tol) rep = 0.0;
    }
    for (std::size_t i = lo; i < hi; ++i) psi[idx[i]] = rep;
    lo = hi;
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

CutSequence cut_sequence(const ElectricRouter& router, VertexId s, VertexId t) {
  const WeightedGraph& g = router.graph();
  const int n = g.num_vertices();
  if (!g.unweighted()) throw InvalidArgument("cut_sequence: graph must be unweighted");
  if (s < 0 || s >= n || t < 0 || t >= n) throw InvalidArgument("cut_sequence: vertex out of range");
  if (s == t) throw InvalidArgument("cut_sequence: s and t must differ");

  CutSequence cs;
  cs.source = s;
  cs.sink = t;
  cs.psi = router.potentials(Demand::pair(n, s, t, 1.0));
  snap_ties(cs.psi);

  auto lex_order = [&] {
    std::vector<VertexId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return cs.psi[a] != cs.psi[b] ? cs.psi[a] < cs.psi[b] : a < b;
    });
    return order;
  };
  auto median = [&](const std::vector<VertexId>& order) {
    const auto h = static_cast<std::size_t>(n / 2);
    return n % 2 == 0 ? 0.5 * (cs.psi[order[h - 1]] + cs.psi[order[h]]) : cs.psi[order[h]];
  };

  cs.order = lex_order();
  double c0 = median(cs.order);
  if (c0 < 0.0) {
    cs.psi = -cs.psi;
    cs.negated = true;
    cs.order = lex_order();
    c0 = median(cs.order);
  }
  cs.c0_zero = c0 == 0.0;
  cs.flow = gradient_apply(g, cs.psi);  // unit weights: W B psi = B psi

  // Strictly below c_0: the first floor(n/2) vertices of the order unless
  // potentials tie at the median, in which case the whole tie stays outside.
  std::vector<char> inside(static_cast<std::size_t>(n), 0);
  for (VertexId v = 0; v < n; ++v) inside[static_cast<std::size_t>(v)] = cs.psi[v] < c0 ? 1 : 0;
  cs.cuts.push_back(make_cut(g, cs, inside, c0));

  // Each nonempty cut is crossed by unit flow, so every delta is at least
  // 2 / m and the levels pass below min psi after finitely many steps.
  const std::size_t cap = static_cast<std::size_t>(n) * static_cast<std::size_t>(g.num_edges()) + 2;
  while (cs.cuts.back().size > 0) {
    if (cs.cuts.size() > cap || !(cs.cuts.back().delta > 0.0)) {
      throw NumericalError("cut_sequence: levels stopped shrinking the cut");
    }
    const double level = cs.cuts.back().level - cs.cuts.back().delta;
    for (VertexId v = 0; v < n; ++v) inside[static_cast<std::size_t>(v)] = cs.psi[v] <= level ? 1 : 0;
    cs.cuts.push_back(make_cut(g, cs, inside, level));
  }
  return cs;
}

CutSequence cut_sequence(const WeightedGraph& g, VertexId s, VertexId t) {
  return cut_sequence(ElectricRouter(g), s, t);
}

CutBoundReport verify_cut_bounds(const WeightedGraph& g, const CutSequence& cs, double alpha,
                                 double tol) {
  if (!(alpha > 0.0)) throw InvalidArgument("verify_cut_bounds: alpha must be positive");
  if (cs.cuts.size() < 2) throw InvalidArgument("verify_cut_bounds: malformed cut sequence");
  const int n = g.num_vertices();

  CutBoundReport rep;
  rep.alpha = alpha;
  rep.d_max = max_degree(g);
  rep.theta = 1.0 - alpha / (2.0 * rep.d_max);
  rep.r = cs.r();
  rep.r_limit = std::log(n / 2.0) / std::log(1.0 / rep.theta);
  rep.r_ok = rep.r <= rep.r_limit + tol;
  if (!rep.r_ok) {
    rep.failures.push_back("cut count r = " + std::to_string(rep.r) + " exceeds log_{1/theta}(n/2) = " +
                           fmt(rep.r_limit));
  }

  for (int i = 0; i <= rep.r; ++i) {
    const Cut& cut = cs.cuts[static_cast<std::size_t>(i)];
    const Cut& next = cs.cuts[static_cast<std::size_t>(i) + 1];
    CutCheck c;
    c.index = i;
    c.expansion_ratio = static_cast<double>(cut.crossing) / cut.size;
    c.expansion_ok = c.expansion_ratio >= alpha - tol;
    c.shrink_limit = cut.size * rep.theta;
    c.shrink_ok = next.size <= c.shrink_limit + tol;
    c.delta_limit = 2.0 / (alpha * cut.size);
    c.delta_ok = cut.delta <= c.delta_limit + tol;
    c.flow_sum_ok = std::abs(cut.flow_sum - 1.0) <= tol;
    const std::string at = "cut " + std::to_string(i) + ": ";
    if (!c.expansion_ok) {
      rep.failures.push_back(at + "k/n = " + fmt(c.expansion_ratio) + " < alpha = " + fmt(alpha));
    }
    if (!c.shrink_ok) {
      rep.failures.push_back(at + "n_{i+1} = " + std::to_string(next.size) + " > " + fmt(c.shrink_limit));
    }
    if (!c.delta_ok) {
      rep.failures.push_back(at + "delta = " + fmt(cut.delta) + " > 2/(alpha n_i) = " + fmt(c.delta_limit));
    }
    if (!c.flow_sum_ok) rep.failures.push_back(at + "crossing flow sums to " + fmt(cut.flow_sum));
    rep.cuts.push_back(c);
  }

  const double c0 = cs.cuts.front().level;
  rep.psi_l1 = cs.psi.lpNorm<1>();
  for (VertexId v : cs.cuts.front().members) rep.half_spread += std::abs(cs.psi[v] - c0);
  for (int i = 0; i <= rep.r; ++i) {
    const Cut& cut = cs.cuts[static_cast<std::size_t>(i)];
    rep.weighted_deltas += cut.size * cut.delta;
  }
  rep.cut_count_limit = 4.0 / alpha * (rep.r + 1);
  const double scale = std::max(1.0, rep.cut_count_limit);
  const bool psi_ok = rep.psi_l1 <= 2.0 * rep.half_spread + tol * scale;
  const bool spread_ok = rep.half_spread <= rep.weighted_deltas + tol * scale;
  const bool count_ok = 2.0 * rep.weighted_deltas <= rep.cut_count_limit + tol * scale;
  rep.chain_ok = psi_ok && spread_ok && count_ok;
  if (!psi_ok) {
    rep.failures.push_back("||psi||_1 = " + fmt(rep.psi_l1) + " > 2N = " + fmt(2.0 * rep.half_spread));
  }
  if (!spread_ok) {
    rep.failures.push_back("N = " + fmt(rep.half_spread) + " > sum n_i delta_i = " +
                           fmt(rep.weighted_deltas));
  }
  if (!count_ok) {
    rep.failures.push_back("2 sum n_i delta_i = " + fmt(2.0 * rep.weighted_deltas) +
                           " > (4/alpha)(r+1) = " + fmt(rep.cut_count_limit));
  }

  rep.expansion_bound = eta_expansion_bound(g, alpha);
  rep.within_expansion_bound =
      !rep.expansion_bound.degenerate && rep.cut_count_limit <= rep.expansion_bound.value + tol;
  return rep;
}

HeavyEdgeSet heavy_edge_set(const EdgeFlow& f, double p) {
  HeavyEdgeSet out;
  out.threshold = p;
  for (EdgeId e = 0; e < f.size(); ++e) {
    if (std::abs(f[e]) >= p) out.edges.push_back(e);
  }
  return out;
}

Robust1Report robust1_check(const ElectricRouter& router, VertexId s, VertexId t, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("robust1_check: p must lie in (0, 1]");
  const WeightedGraph& g = router.graph();
  const EdgeFlow f = router.route(Demand::pair(g.num_vertices(), s, t, 1.0));

  Robust1Report rep;
  rep.source = s;
  rep.sink = t;
  rep.p = p;
  rep.heavy = static_cast<int>(heavy_edge_set(f, p).edges.size());
  rep.fiedler = router.oracle().fiedler();
  rep.lplus_norm = lplus_one_one_norm(router.oracle());
  rep.d_max = max_degree(g);
  rep.spectral_limit = 2.0 / (rep.fiedler * p * p);
  rep.norm_limit = 2.0 * rep.d_max * rep.lplus_norm / p;
  rep.limit = std::min(rep.spectral_limit, rep.norm_limit);
  rep.flow_l1 = f.lpNorm<1>();
  rep.ok = rep.heavy <= rep.limit && rep.heavy * p <= rep.flow_l1 * (1.0 + 1e-12);
  return rep;
}

std::vector<FlowPath> path_decomposition(const WeightedGraph& g, const EdgeFlow& f) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  if (f.size() != m) throw InvalidArgument("path_decomposition: flow length mismatch");
  const double peak = m ? f.cwiseAbs().maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw InvalidArgument("path_decomposition: flow is identically zero");

  const VertexVector div = divergence_apply(g, f);
  VertexId s = 0;
  VertexId t = 0;
  div.maxCoeff(&s);
  div.minCoeff(&t);
  const double value = div[s];

  const double threshold = 1e-12 * peak;
  EdgeVector residual = f.cwiseAbs();
  std::vector<FlowPath> out;
  const std::size_t max_paths = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  double extracted = 0.0;
  while (out.size() < max_paths && extracted < value - threshold) {
    FlowPath path;
    path.vertices.push_back(s);
    VertexId u = s;
    double bottleneck = value - extracted;
    while (u != t) {
      EdgeId best = -1;
      VertexId best_to = -1;
      double best_flow = threshold;
      for (const Incidence& inc : g.incident(u)) {
        if (inc.sign * f[inc.edge] <= 0.0) continue;  // arc points into u
        if (residual[inc.edge] > best_flow) {
          best = inc.edge;
          best_to = inc.neighbor;
          best_flow = residual[inc.edge];
        }
      }
      if (best < 0) break;
      if (static_cast<int>(path.edges.size()) >= n) {
        throw NumericalError("path_decomposition: directed flow graph has a cycle");
      }
      path.edges.push_back(best);
      path.vertices.push_back(best_to);
      bottleneck = std::min(bottleneck, best_flow);
      u = best_to;
    }
    if (u != t) break;
    for (EdgeId e : path.edges) residual[e] -= bottleneck;
    path.value = bottleneck;
    extracted += bottleneck;
    out.push_back(std::move(path));
  }
  const double left = residual.size() ? residual.maxCoeff() : 0.0;
  if (left > 1e-6) {
    throw NumericalError("path_decomposition: residual flow " + fmt(left) + " left after " +
                         std::to_string(out.size()) + " paths");
  }
  return out;
}

EdgeVector uniform_demand_loads(const ElectricRouter& router) {
  const WeightedGraph& g = router.graph();
  const int n = g.num_vertices();
  const Eigen::MatrixXd& pinv = router.oracle().matrix();
  EdgeVector loads = EdgeVector::Zero(g.num_edges());
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) {
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edge(e);
        const double drop = (pinv(edge.tail, s) - pinv(edge.tail, t)) -
                            (pinv(edge.head, s) - pinv(edge.head, t));
        loads[e] += std::abs(edge.weight * drop);
      }
    }
  }
  return loads;
}

std::vector<EdgeId> removal_order(int m, std::uint64_t seed) {
  std::vector<EdgeId> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  return order;
}

RemovalReport removal_experiment(const ElectricRouter& router, double x, std::uint64_t seed,
                                 std::optional<double> alpha, std::optional<double> eta) {
  if (!(x > 0.0 && x <= 1.0)) throw InvalidArgument("removal_experiment: x must lie in (0, 1]");
  const WeightedGraph& g = router.graph();
  if (!g.unweighted()) throw InvalidArgument("removal_experiment: graph must be unweighted");
  const int n = g.num_vertices();
  const int m = g.num_edges();

  RemovalReport rep;
  rep.x = x;
  rep.seed = seed;
  rep.alpha = alpha ? *alpha : vertex_expansion_exact(g);
  rep.eta = eta ? *eta : router.competitive_bound();
  rep.d_max = max_degree(g);

  const auto count = static_cast<std::size_t>(std::ceil(x * m));
  std::vector<EdgeId> order = removal_order(m, seed);
  rep.removed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(count, order.size())));
  std::sort(rep.removed.begin(), rep.removed.end());

  const EdgeVector loads = uniform_demand_loads(router);
  for (EdgeId e : rep.removed) rep.removed_flow += loads[e];
  rep.routed_flow = 0.5 * n * (n - 1.0);
  rep.fraction = rep.removed_flow / rep.routed_flow;
  rep.limit = x * rep.eta * rep.d_max * std::log(static_cast<double>(n)) / rep.alpha;
  rep.ok = rep.fraction <= rep.limit;
  return rep;
}

}  // namespace voltroute

#include "voltroute/electric_walk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "voltroute/error.hpp"
#include "voltroute/parallel.hpp"

namespace voltroute {

WalkModel WalkModel::from_flow(const WeightedGraph& g, const EdgeFlow& f) {
  const int n = g.num_vertices();
  if (f.size() != g.num_edges()) throw InvalidArgument("walk model: flow length mismatch");
  const double peak = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw InvalidArgument("walk model: flow is identically zero");

  WalkModel model;
  model.flow_ = f;
  model.threshold_ = 1e-12 * peak;
  const auto un = static_cast<std::size_t>(n);
  model.start_.assign(un, 0.0);
  model.exit_.assign(un, 0.0);
  model.in_.assign(un, 0.0);
  model.out_.assign(un, 0.0);
  model.steps_.assign(un, {});
  model.neighbors_.assign(un, {});

  // Adjacency lists are sorted by neighbor, so equal targets are consecutive.
  for (VertexId u = 0; u < n; ++u) {
    auto& steps = model.steps_[static_cast<std::size_t>(u)];
    auto& nbrs = model.neighbors_[static_cast<std::size_t>(u)];
    for (const Incidence& inc : g.incident(u)) {
      if (nbrs.empty() || nbrs.back() != inc.neighbor) nbrs.push_back(inc.neighbor);
      const double directed = inc.sign * f[inc.edge];  // flow u -> neighbor
      if (directed <= model.threshold_) continue;
      if (!steps.empty() && steps.back().to == inc.neighbor) {
        steps.back().flow += directed;
      } else {
        steps.push_back({inc.neighbor, directed, 0.0});
      }
    }
  }
  for (VertexId u = 0; u < n; ++u) {
    for (const Step& s : model.steps_[static_cast<std::size_t>(u)]) {
      model.out_[static_cast<std::size_t>(u)] += s.flow;
      model.in_[static_cast<std::size_t>(s.to)] += s.flow;
      model.total_directed_ += s.flow;
    }
  }

  // Imbalances at rounding level are conserved vertices, not sources or sinks.
  std::vector<double> sigma(un);
  double abs_sigma = 0.0;
  for (std::size_t v = 0; v < un; ++v) {
    sigma[v] = model.out_[v] - model.in_[v];
    if (std::abs(sigma[v]) <= 1e-10 * peak) sigma[v] = 0.0;
    abs_sigma += std::abs(sigma[v]);
  }
  if (!(abs_sigma > 0.0)) throw InvalidArgument("walk model: flow has no sources (circulation)");
  model.source_mass_ = 0.5 * abs_sigma;

  for (std::size_t v = 0; v < un; ++v) {
    model.start_[v] = 2.0 * std::max(0.0, sigma[v]) / abs_sigma;
    const double denom = std::max(model.in_[v], model.out_[v]);
    if (denom > 0.0) {
      model.exit_[v] = std::max(0.0, -sigma[v]) / denom;
      for (Step& s : model.steps_[v]) s.probability = s.flow / denom;
    }
  }

  // Kahn's algorithm on the directed flow graph.
  std::vector<int> indegree(un, 0);
  for (const auto& steps : model.steps_) {
    for (const Step& s : steps) ++indegree[static_cast<std::size_t>(s.to)];
  }
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < n; ++v) {
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++removed;
    for (const Step& s : model.steps_[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(s.to)] == 0) ready.push_back(s.to);
    }
  }
  model.acyclic_ = removed == n;
  return model;
}

WalkModel WalkModel::from_potentials(const WeightedGraph& g, const VertexVector& phi) {
  if (phi.size() != g.num_vertices()) throw InvalidArgument("walk model: potential length mismatch");
  EdgeFlow f(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    f[e] = edge.weight * (phi[edge.tail] - phi[edge.head]);
  }
  WalkModel model = from_flow(g, f);
  if (!model.acyclic()) {
    throw NumericalError("walk model: potential-induced flow has a directed cycle");
  }
  return model;
}

bool WalkModel::adjacent(VertexId u, VertexId v) const {
  const auto& nbrs = neighbors_[static_cast<std::size_t>(u)];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

WalkModel electric_walk_model(const ElectricRouter& router, VertexId s, VertexId t) {
  const Demand d = Demand::pair(router.graph().num_vertices(), s, t, 1.0);
  return WalkModel::from_potentials(router.graph(), router.potentials(d));
}

TransitionDistribution transition(const WalkModel& model, VertexId u) {
  if (u < 0 || u >= model.num_vertices()) throw InvalidArgument("transition: vertex out of range");
  if (std::max(model.in_flow(u), model.out_flow(u)) <= 0.0) {
    throw InvalidArgument("transition: vertex " + std::to_string(u) +
                          " carries no flow; the walk cannot be there");
  }
  const auto steps = model.steps(u);
  return {std::vector<Step>(steps.begin(), steps.end()), model.exit_probability(u)};
}

WalkPath sample_walk(const WalkModel& model, Rng& rng, std::size_t step_cap) {
  const int n = model.num_vertices();
  if (step_cap == 0) {
    step_cap = 10 * static_cast<std::size_t>(n) *
               std::max<std::size_t>(1, static_cast<std::size_t>(model.flow().size()));
  }

  WalkPath path;
  double r = rng.uniform01();
  VertexId current = -1;
  VertexId last_positive = -1;
  for (VertexId v = 0; v < n; ++v) {
    const double p = model.start_probability(v);
    if (p <= 0.0) continue;
    last_positive = v;
    if (r < p) {
      current = v;
      break;
    }
    r -= p;
  }
  if (current < 0) current = last_positive;
  path.vertices.push_back(current);
  double probability = model.start_probability(current);

  for (std::size_t steps_taken = 0;; ++steps_taken) {
    const auto steps = model.steps(current);
    const double exit = model.exit_probability(current);
    r = rng.uniform01();
    const Step* chosen = nullptr;
    for (const Step& s : steps) {
      if (r < s.probability) {
        chosen = &s;
        break;
      }
      r -= s.probability;
    }
    if (chosen == nullptr && exit <= 0.0) {
      if (steps.empty()) {
        throw NumericalError("sample_walk: stuck at vertex " + std::to_string(current));
      }
      chosen = &steps.back();  // rounding left r just above the step total
    }
    if (chosen == nullptr) {
      probability *= exit;
      break;
    }
    if (steps_taken >= step_cap) {
      throw LimitExceeded("sample_walk: exceeded step cap " + std::to_string(step_cap));
    }
    probability *= chosen->probability;
    current = chosen->to;
    path.vertices.push_back(current);
  }
  path.probability = probability;
  return path;
}

std::vector<WalkPath> sample_walks(const WalkModel& model, std::uint64_t seed, std::size_t count) {
  const Rng master(seed);
  std::vector<WalkPath> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng = master.split(i);
    out[i] = sample_walk(model, rng);
  });
  return out;
}

double path_probability(const WalkModel& model, std::span<const VertexId> path) {
  if (path.empty()) throw InvalidArgument("path_probability: empty path");
  const int n = model.num_vertices();
  for (VertexId v : path) {
    if (v < 0 || v >= n) throw InvalidArgument("path_probability: vertex out of range");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!model.adjacent(path[i], path[i + 1])) {
      throw InvalidArgument("path_probability: vertices " + std::to_string(path[i]) + " and " +
                            std::to_string(path[i + 1]) + " are not adjacent");
    }
  }
  double p = model.start_probability(path.front());
  for (std::size_t i = 0; i + 1 < path.size() && p > 0.0; ++i) {
    double step = 0.0;
    for (const Step& s : model.steps(path[i])) {
      if (s.to == path[i + 1]) step = s.probability;
    }
    p *= step;
  }
  return p * model.exit_probability(path.back());
}

namespace {

void require_enumerable(const WalkModel& model, int cap) {
  if (model.num_vertices() > cap) {
    throw LimitExceeded("enumerate_paths: n = " + std::to_string(model.num_vertices()) +
                        " exceeds the enumeration cap " + std::to_string(cap));
  }
  if (!model.acyclic()) throw NumericalError("enumerate_paths: directed flow graph has a cycle");
}

void extend(const WalkModel& model, std::vector<VertexId>& prefix, double p,
            std::vector<WalkPath>& out) {
  const VertexId u = prefix.back();
  const double exit = model.exit_probability(u);
  if (exit > 0.0) out.push_back({prefix, p * exit});
  for (const Step& s : model.steps(u)) {
    prefix.push_back(s.to);
    extend(model, prefix, p * s.probability, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<WalkPath> enumerate_paths(const WalkModel& model, int cap) {
  require_enumerable(model, cap);
  std::vector<WalkPath> out;
  std::vector<VertexId> prefix;
  for (VertexId v = 0; v < model.num_vertices(); ++v) {
    const double p = model.start_probability(v);
    if (p <= 0.0) continue;
    prefix.assign(1, v);
    extend(model, prefix, p, out);
  }
  return out;
}

double expected_latency(const WalkModel& model) {
  return model.total_directed_flow() / model.source_mass();
}

double total_variation(const WalkModel& a, const WalkModel& b, int cap) {
  std::map<std::vector<VertexId>, double> diff;
  for (const WalkPath& p : enumerate_paths(a, cap)) diff[p.vertices] += p.probability;
  for (const WalkPath& p : enumerate_paths(b, cap)) diff[p.vertices] -= p.probability;
  double total = 0.0;
  for (const auto& [path, d] : diff) total += std::abs(d);
  return total;
}

DominanceDiagnostic dominance_diagnostic(const WeightedGraph& g, const WalkModel& model,
                                         double epsilon, int cap) {
  DominanceDiagnostic out;
  out.epsilon = epsilon;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (std::abs(model.flow()[e]) <= epsilon) ++out.short_edges;
  }
  for (const WalkPath& p : enumerate_paths(model, cap)) {
    ++out.paths;
    const auto& w = p.vertices;
    bool dominant = model.start_probability(w.front()) >= epsilon &&
                    model.exit_probability(w.back()) >= epsilon;
    for (std::size_t i = 0; dominant && i + 1 < w.size(); ++i) {
      for (const Step& s : model.steps(w[i])) {
        if (s.to == w[i + 1] && s.flow <= epsilon) dominant = false;
      }
    }
    if (dominant) {
      ++out.dominant_paths;
      out.dominant_mass += p.probability;
    }
  }
  return out;
}

}  // namespace voltroute

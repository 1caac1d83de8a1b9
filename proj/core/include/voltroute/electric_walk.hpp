#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "voltroute/electric_router.hpp"
#include "voltroute/graph.hpp"
#include "voltroute/rng.hpp"

namespace voltroute {

inline constexpr int kDefaultEnumerationCap = 12;

// Directed flow from one vertex to a neighbor, summed over parallel edges.
struct Step {
  VertexId to;
  double flow;
  double probability;
};

// The flow walk of an edge flow f.
//
// Directed flows f_{u->v} keep only edges with |f_e| > 1e-12 * max|f|. With
// in_v and out_v the directed in/out totals and sigma_v = out_v - in_v:
//   start(v) = 2 max(0, sigma_v) / sum_w |sigma_w|
//   step(u -> v) = f_{u->v} / max(in_u, out_u)
//   exit(u) = max(0, in_u - out_u) / max(in_u, out_u)
// so step and exit probabilities at every visited vertex sum to 1.
// Imbalances |sigma_v| <= 1e-10 * max|f| are treated as zero.
class WalkModel {
 public:
  // Throws InvalidArgument for a zero flow or a flow without sources.
  static WalkModel from_flow(const WeightedGraph& g, const EdgeFlow& f);
  // f = W B phi. Throws NumericalError if the thresholded directed graph has
  // a cycle.
  static WalkModel from_potentials(const WeightedGraph& g, const VertexVector& phi);

  int num_vertices() const { return static_cast<int>(start_.size()); }
  const EdgeFlow& flow() const { return flow_; }
  double threshold() const { return threshold_; }

  double start_probability(VertexId v) const { return start_[static_cast<std::size_t>(v)]; }
  double exit_probability(VertexId v) const { return exit_[static_cast<std::size_t>(v)]; }
  double in_flow(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }
  double out_flow(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
  // Outgoing steps sorted by target vertex.
  std::span<const Step> steps(VertexId v) const { return steps_[static_cast<std::size_t>(v)]; }
  bool adjacent(VertexId u, VertexId v) const;

  // sum_v max(0, sigma_v): total amount the flow ships.
  double source_mass() const { return source_mass_; }
  // Sum of directed flows.
  double total_directed_flow() const { return total_directed_; }
  bool acyclic() const { return acyclic_; }

 private:
  WalkModel() = default;

  EdgeFlow flow_;
  double threshold_ = 0.0;
  std::vector<double> start_, exit_, in_, out_;
  std::vector<std::vector<Step>> steps_;
  std::vector<std::vector<VertexId>> neighbors_;
  double source_mass_ = 0.0;
  double total_directed_ = 0.0;
  bool acyclic_ = true;
};

// Unit (s, t) electric walk.
WalkModel electric_walk_model(const ElectricRouter& router, VertexId s, VertexId t);

struct TransitionDistribution {
  std::vector<Step> next;
  double exit = 0.0;
};

// Throws InvalidArgument if u carries no flow at all.
TransitionDistribution transition(const WalkModel& model, VertexId u);

struct WalkPath {
  std::vector<VertexId> vertices;
  double probability = 0.0;
};

// Samples start, steps and exit. Throws LimitExceeded after step_cap steps
// (0 selects 10 * n * m). The returned probability is path_probability of the
// sampled path.
WalkPath sample_walk(const WalkModel& model, Rng& rng, std::size_t step_cap = 0);

// `count` independent walks; walk i draws from Rng(seed).split(i), so the
// result does not depend on how many threads share the work.
std::vector<WalkPath> sample_walks(const WalkModel& model, std::uint64_t seed, std::size_t count);

// start(w_0) * prod step(w_i -> w_{i+1}) * exit(w_k). Throws InvalidArgument
// when consecutive vertices are not adjacent in the graph.
double path_probability(const WalkModel& model, std::span<const VertexId> path);

// Every positive-probability path, depth first from vertices in id order.
// Requires an acyclic model with n <= cap.
std::vector<WalkPath> enumerate_paths(const WalkModel& model, int cap = kDefaultEnumerationCap);

// Expected number of edges traversed: total directed flow / source mass.
double expected_latency(const WalkModel& model);

// sum_gamma |Pr_a(gamma) - Pr_b(gamma)| over the union of both supports.
double total_variation(const WalkModel& a, const WalkModel& b, int cap = kDefaultEnumerationCap);

// Short-edge / dominant-path classification with threshold epsilon.
struct DominanceDiagnostic {
  double epsilon = 0.0;
  int short_edges = 0;         // edges with |f_e| <= epsilon
  std::size_t paths = 0;
  std::size_t dominant_paths = 0;
  double dominant_mass = 0.0;  // probability of paths avoiding short edges with
                               // start and exit probabilities >= epsilon
};

DominanceDiagnostic dominance_diagnostic(const WeightedGraph& g, const WalkModel& model,
                                         double epsilon, int cap = kDefaultEnumerationCap);

}  // namespace voltroute

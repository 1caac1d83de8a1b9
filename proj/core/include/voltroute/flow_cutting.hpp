#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voltroute/electric_router.hpp"
#include "voltroute/graph.hpp"

namespace voltroute {

// One level cut (S_i, complement) of the potential embedding.
struct Cut {
  double level = 0.0;                // c_i
  std::vector<VertexId> members;     // S_i, ascending ids
  int size = 0;                      // n_i
  int crossing = 0;                  // k_i
  std::vector<EdgeId> crossing_edges;
  std::vector<double> crossing_flows;  // p_ij = |f_e| of the unit flow
  double flow_sum = 0.0;             // sum_j p_ij
  double delta = 0.0;                // 2 sum_j p_ij / k_i, zero for the final empty cut
};

// Level cuts c_0 > c_1 > ... > c_{r+1} of psi = L^+ (chi_s - chi_t).
//
// Vertices are ordered by (psi_v, v). c_0 is the midpoint of the two middle
// potentials (n even) or the middle vertex's potential (n odd); if c_0 < 0,
// psi and the flow are negated first. S_0 = {v : psi_v < c_0}, which is the
// first floor(n/2) vertices of the order when no potentials tie at the median
// and fewer otherwise. For i >= 1, S_i = {v : psi_v <= c_i} with
// c_i = c_{i-1} - delta_{i-1}. The sequence ends with the first empty S_i.
// Every S_i is a level set, so an edge crosses a cut exactly when one endpoint
// is in S_i and edges between equal potentials never cross.
struct CutSequence {
  VertexId source = 0;
  VertexId sink = 0;
  VertexVector psi;               // after the optional negation
  EdgeFlow flow;                  // W B psi
  std::vector<VertexId> order;    // vertices by (psi_v, v)
  bool negated = false;
  bool c0_zero = false;           // c_0 == 0: both signs valid, kept unnegated
  std::vector<Cut> cuts;          // cuts[0..r+1], the last one empty

  int r() const { return static_cast<int>(cuts.size()) - 2; }
};

// Unweighted connected graphs. Throws InvalidArgument for s == t or a
// weighted graph, NumericalError if the levels fail to empty S.
CutSequence cut_sequence(const ElectricRouter& router, VertexId s, VertexId t);
CutSequence cut_sequence(const WeightedGraph& g, VertexId s, VertexId t);

struct CutCheck {
  int index = 0;
  double expansion_ratio = 0.0;  // k_i / n_i, checked >= alpha
  bool expansion_ok = true;
  double shrink_limit = 0.0;     // n_i (1 - alpha / (2 d_max)), bound on n_{i+1}
  bool shrink_ok = true;
  double delta_limit = 0.0;      // 2 / (alpha n_i)
  bool delta_ok = true;
  bool flow_sum_ok = true;       // |sum_j p_ij - 1| <= tol
};

struct CutBoundReport {
  double alpha = 0.0;
  int d_max = 0;
  double theta = 0.0;       // 1 - alpha / (2 d_max)
  int r = 0;
  double r_limit = 0.0;     // log_{1/theta}(n/2)
  bool r_ok = true;

  // ||psi||_1 <= 2N <= 2 sum_i n_i delta_i <= (4/alpha)(r+1).
  double psi_l1 = 0.0;
  double half_spread = 0.0;     // N = sum over S_0 of |psi_v - c_0|
  double weighted_deltas = 0.0; // sum_i n_i delta_i
  double cut_count_limit = 0.0; // (4/alpha)(r+1)
  bool chain_ok = true;

  // Informational: (4/alpha)(r+1) against the closed-form expansion bound.
  // The two differ by one cut, so the comparison can fail for small n.
  BoundValue expansion_bound;
  bool within_expansion_bound = true;

  std::vector<CutCheck> cuts;   // i = 0..r
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

CutBoundReport verify_cut_bounds(const WeightedGraph& g, const CutSequence& cs, double alpha,
                                 double tol = 1e-9);

struct HeavyEdgeSet {
  double threshold = 0.0;
  std::vector<EdgeId> edges;  // |f_e| >= threshold, ascending ids
};

HeavyEdgeSet heavy_edge_set(const EdgeFlow& f, double p);

struct Robust1Report {
  VertexId source = 0;
  VertexId sink = 0;
  double p = 0.0;
  int heavy = 0;              // |Q_p|
  double fiedler = 0.0;
  double lplus_norm = 0.0;
  int d_max = 0;
  double spectral_limit = 0.0;  // 2 / (lambda p^2)
  double norm_limit = 0.0;      // 2 d_max ||L^+||_{1->1} / p
  double limit = 0.0;
  double flow_l1 = 0.0;
  bool ok = true;               // |Q_p| <= limit and |Q_p| p <= ||f||_1
};

// Throws InvalidArgument unless 0 < p <= 1.
Robust1Report robust1_check(const ElectricRouter& router, VertexId s, VertexId t, double p);

struct FlowPath {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  double value = 0.0;
};

// Greedy decomposition of a unit flow into source-to-sink paths: follow the
// largest remaining outgoing flow from the source, subtract the bottleneck,
// repeat. Source and sink are the vertices of largest and smallest divergence.
// Throws NumericalError if more than 1e-6 flow remains after n * m paths.
std::vector<FlowPath> path_decomposition(const WeightedGraph& g, const EdgeFlow& f);

// sum over all pairs s < t of |f_e| for the unit (s, t) electric flow.
EdgeVector uniform_demand_loads(const ElectricRouter& router);

struct RemovalReport {
  double x = 0.0;
  std::uint64_t seed = 0;
  std::vector<EdgeId> removed;
  double removed_flow = 0.0;
  double routed_flow = 0.0;   // number of pairs
  double fraction = 0.0;
  double eta = 0.0;
  int d_max = 0;
  double alpha = 0.0;
  double limit = 0.0;         // x * eta * d_max * ln n / alpha
  bool ok = true;
};

// Removes the first ceil(x m) edges of a seeded Fisher-Yates permutation, so
// the removed set grows monotonically with x for a fixed seed. alpha and eta
// are computed when not supplied. Throws InvalidArgument unless 0 < x <= 1.
RemovalReport removal_experiment(const ElectricRouter& router, double x, std::uint64_t seed,
                                 std::optional<double> alpha = std::nullopt,
                                 std::optional<double> eta = std::nullopt);

// The seeded permutation of edge ids behind removal_experiment.
std::vector<EdgeId> removal_order(int m, std::uint64_t seed);

}  // namespace voltroute

#pragma once

// Per-vertex update rules shared by the centralized series evaluation and the
// distributed simulator. Both call sites must evaluate exactly these
// expressions, in this order, for their results to agree bit for bit.

#include <cmath>
#include <span>

#include "voltroute/graph.hpp"

namespace voltroute::detail {

// Entry u of chi_w - (1/n) 1.
inline double centered_indicator_entry(int n, VertexId u, VertexId w) {
  return (u == w ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
}

// One application of M = I - L / tau at vertex u. `neighbor_value(inc)` returns
// the previous iterate at the far end of incidence `inc`. Self term first,
// then neighbors in adjacency order (ascending vertex id).
template <class NeighborValue>
double plain_step(double self, double weighted_degree, std::span<const Incidence> adjacency,
                  NeighborValue&& neighbor_value, double tau) {
  double lap = weighted_degree * self;
  for (const Incidence& inc : adjacency) lap -= inc.weight * neighbor_value(inc);
  return self - lap / tau;
}

// Value a vertex of degree `degree` transmits in the symmetrized recursion:
// its own iterate scaled by deg^{-1/2}.
inline double normalized_payload(double self, int degree) {
  return self / std::sqrt(static_cast<double>(degree));
}

// One application of I - NL/3, NL = D^{-1/2} L D^{-1/2}, at vertex u. Uses
// only u's own degree; neighbors supply their pre-scaled payloads.
template <class NeighborPayload>
double normalized_step(double self, int degree, std::span<const Incidence> adjacency,
                       NeighborPayload&& neighbor_payload) {
  double sum = 0.0;
  for (const Incidence& inc : adjacency) sum += neighbor_payload(inc);
  const double normalized_lap = self - sum / std::sqrt(static_cast<double>(degree));
  return self - normalized_lap / 3.0;
}

// Initial symmetrized iterate D^{-1/2} y at a vertex of the given degree.
inline double normalized_input(double y, int degree) {
  return y / std::sqrt(static_cast<double>(degree));
}

// Final rescaling of an accumulated symmetrized series entry.
inline double normalized_output(double accumulated, int degree) {
  return accumulated / (3.0 * std::sqrt(static_cast<double>(degree)));
}

}  // namespace voltroute::detail

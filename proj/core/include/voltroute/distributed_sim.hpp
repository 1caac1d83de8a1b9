#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "voltroute/electric_router.hpp"
#include "voltroute/graph.hpp"
#include "voltroute/laplacian_solver.hpp"

namespace voltroute {

struct MessageRecord {
  int round;
  VertexId from;
  VertexId to;
  EdgeId edge;
  int payload_reals;
};

struct Delivery {
  VertexId from;
  EdgeId edge;
  std::vector<double> payload;
};

// Synchronous message-passing network over a fixed graph. Messages sent during
// a round are delivered together when the round ends. A message can only
// travel along an edge incident to its sender.
class SyncNetwork {
 public:
  explicit SyncNetwork(const WeightedGraph& g);

  const WeightedGraph& graph() const { return *graph_; }
  int round() const { return round_; }

  // Queues payload from `from` over edge e to its other endpoint. Throws
  // InvalidArgument if e is not incident to `from`.
  void send(VertexId from, EdgeId e, std::vector<double> payload);
  // Ends the round and replaces every inbox with this round's messages.
  void advance();

  std::span<const Delivery> inbox(VertexId v) const { return inbox_[static_cast<std::size_t>(v)]; }
  const std::vector<MessageRecord>& log() const { return log_; }

 private:
  const WeightedGraph* graph_;
  int round_ = 0;
  std::vector<std::vector<Delivery>> pending_;
  std::vector<std::vector<Delivery>> inbox_;
  std::vector<MessageRecord> log_;
};

// True when every logged message travelled along an edge between its sender
// and receiver.
bool log_is_local(const WeightedGraph& g, const std::vector<MessageRecord>& log);

// What one processor is allowed to know about the network.
struct LocalView {
  VertexId id;
  int n;                               // number of vertices
  std::span<const Incidence> adjacency;
  int degree;
  double weighted_degree;
};

struct TableResult {
  SeriesMode mode = SeriesMode::plain;
  int k = 0;
  // rows(u, w) is the value vertex u computed for the series of w, i.e.
  // entry u of zeta^[w]. Row u is the table vector u stores.
  Eigen::MatrixXd rows;
  // held[u]: the rows u holds after the exchange, for u and its neighbors,
  // ascending by owner.
  std::vector<std::vector<std::pair<VertexId, VertexVector>>> held;
  int rounds_used = 0;
  std::size_t total_messages = 0;
  int max_payload_reals = 0;
  std::vector<MessageRecord> log;

  // zeta^[w] gathered from all vertices; bit-identical to the centralized
  // series for the same degree.
  VertexVector column(VertexId w) const { return rows.col(w); }
  // Row `owner` as held by `holder`, or nullptr if holder does not have it.
  const VertexVector* copy(VertexId holder, VertexId owner) const;
  // Column v is the row stored at v.
  PotentialTable table() const;
};

// k rounds of the plain recursion M = I - L / tau with tau = 2 * max weighted
// degree, which every vertex is assumed to know, plus one table exchange.
// Vertex u starts from entries u of chi_w - 1/n for all w. Throws
// InvalidArgument for k < 0, DisconnectedGraph if g is disconnected.
TableResult simulate_tables(const WeightedGraph& g, int k);

// Same protocol with M = I - NL / 3. Vertices use only their own degree. Rows
// equal L^+ rows up to a constant per column w, which cancels in forward
// coefficients. Unweighted graphs only.
TableResult simulate_tables_symmetrized(const WeightedGraph& g, int k);

struct Accounting {
  int k = 0;
  int rounds = 0;
  std::size_t messages = 0;
  std::size_t expected_messages = 0;  // 2 m (k + 1)
  int payload_reals = 0;
  // Degree the accuracy analysis asks for at eps = n^-5, from the exact
  // spectrum (Fiedler value of L for plain, of NL for symmetrized), and the
  // ln n / lambda scale it grows with. Reported, not asserted.
  double lambda = 0.0;
  int reference_degree = 0;
  double log_n_over_lambda = 0.0;
};

Accounting accounting(const WeightedGraph& g, const TableResult& result);

// Forward coefficient for the (s, t) flow from u to v, evaluated by `holder`
// from the rows it holds. Throws InvalidArgument if holder lacks row u or v.
double local_forward_coefficient(const TableResult& result, VertexId holder, VertexId s,
                                 VertexId t, VertexId u, VertexId v);

}  // namespace voltroute

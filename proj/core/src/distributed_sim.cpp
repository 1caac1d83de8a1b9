#include "voltroute/distributed_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voltroute/detail/series_kernel.hpp"
#include "voltroute/error.hpp"

namespace voltroute {

SyncNetwork::SyncNetwork(const WeightedGraph& g)
    : graph_(&g),
      pending_(static_cast<std::size_t>(g.num_vertices())),
      inbox_(static_cast<std::size_t>(g.num_vertices())) {}

void SyncNetwork::send(VertexId from, EdgeId e, std::vector<double> payload) {
  const WeightedGraph& g = *graph_;
  if (from < 0 || from >= g.num_vertices() || e < 0 || e >= g.num_edges()) {
    throw InvalidArgument("send: vertex or edge out of range");
  }
  const Edge& edge = g.edge(e);
  VertexId to = -1;
  if (edge.tail == from) to = edge.head;
  if (edge.head == from) to = edge.tail;
  if (to < 0) {
    throw InvalidArgument("send: edge " + std::to_string(e) + " is not incident to vertex " +
                          std::to_string(from));
  }
  log_.push_back({round_, from, to, e, static_cast<int>(payload.size())});
  pending_[static_cast<std::size_t>(to)].push_back({from, e, std::move(payload)});
}

void SyncNetwork::advance() {
  inbox_.swap(pending_);
  for (auto& box : pending_) box.clear();
  ++round_;
}

bool log_is_local(const WeightedGraph& g, const std::vector<MessageRecord>& log) {
  for (const MessageRecord& r : log) {
    if (r.edge < 0 || r.edge >= g.num_edges()) return false;
    const Edge& e = g.edge(r.edge);
    const bool forward = e.tail == r.from && e.head == r.to;
    const bool backward = e.head == r.from && e.tail == r.to;
    if (!forward && !backward) return false;
  }
  return true;
}

namespace {

const std::vector<double>& message_on(std::span<const Delivery> inbox, EdgeId e) {
  for (const Delivery& d : inbox) {
    if (d.edge == e) return d.payload;
  }
  throw Error("simulator: no message arrived on edge " + std::to_string(e));
}

// Payload received over each incidence, in adjacency order.
std::vector<const double*> payloads_by_incidence(std::span<const Incidence> adjacency,
                                                 std::span<const Delivery> inbox) {
  std::vector<const double*> out;
  out.reserve(adjacency.size());
  for (const Incidence& inc : adjacency) out.push_back(message_on(inbox, inc.edge).data());
  return out;
}

// Vertex running the plain recursion. Knows tau in addition to its local view.
class PlainProcessor {
 public:
  PlainProcessor(LocalView view, double tau) : view_(view), tau_(tau) {
    const auto n = static_cast<std::size_t>(view_.n);
    current_.resize(n);
    for (VertexId w = 0; w < view_.n; ++w) {
      current_[static_cast<std::size_t>(w)] = detail::centered_indicator_entry(view_.n, view_.id, w);
    }
    acc_ = current_;
  }

  std::vector<double> outgoing() const { return current_; }

  void step(std::span<const Delivery> inbox) {
    const auto received = payloads_by_incidence(view_.adjacency, inbox);
    auto slot = [&](const Incidence& inc) {
      return received[static_cast<std::size_t>(&inc - view_.adjacency.data())];
    };
    std::vector<double> next(current_.size());
    for (std::size_t w = 0; w < current_.size(); ++w) {
      next[w] = detail::plain_step(
          current_[w], view_.weighted_degree, view_.adjacency,
          [&](const Incidence& inc) { return slot(inc)[w]; }, tau_);
    }
    current_.swap(next);
    for (std::size_t w = 0; w < current_.size(); ++w) acc_[w] += current_[w];
  }

  std::vector<double> row() const {
    std::vector<double> out(acc_.size());
    for (std::size_t w = 0; w < acc_.size(); ++w) out[w] = acc_[w] / tau_;
    return out;
  }

 private:
  LocalView view_;
  double tau_;
  std::vector<double> current_, acc_;
};

// Vertex running the symmetrized recursion from its local view alone.
class NormalizedProcessor {
 public:
  explicit NormalizedProcessor(LocalView view) : view_(view) {
    const auto n = static_cast<std::size_t>(view_.n);
    current_.resize(n);
    for (VertexId w = 0; w < view_.n; ++w) {
      current_[static_cast<std::size_t>(w)] = detail::normalized_input(
          detail::centered_indicator_entry(view_.n, view_.id, w), view_.degree);
    }
    acc_ = current_;
  }

  std::vector<double> outgoing() const {
    std::vector<double> out(current_.size());
    for (std::size_t w = 0; w < current_.size(); ++w) {
      out[w] = detail::normalized_payload(current_[w], view_.degree);
    }
    return out;
  }

  void step(std::span<const Delivery> inbox) {
    const auto received = payloads_by_incidence(view_.adjacency, inbox);
    auto slot = [&](const Incidence& inc) {
      return received[static_cast<std::size_t>(&inc - view_.adjacency.data())];
    };
    std::vector<double> next(current_.size());
    for (std::size_t w = 0; w < current_.size(); ++w) {
      next[w] = detail::normalized_step(
          current_[w], view_.degree, view_.adjacency,
          [&](const Incidence& inc) { return slot(inc)[w]; });
    }
    current_.swap(next);
    for (std::size_t w = 0; w < current_.size(); ++w) acc_[w] += current_[w];
  }

  std::vector<double> row() const {
    std::vector<double> out(acc_.size());
    for (std::size_t w = 0; w < acc_.size(); ++w) {
      out[w] = detail::normalized_output(acc_[w], view_.degree);
    }
    return out;
  }

 private:
  LocalView view_;
  std::vector<double> current_, acc_;
};

LocalView local_view(const WeightedGraph& g, VertexId u) {
  return {u, g.num_vertices(), g.incident(u), g.degree(u), g.weighted_degree(u)};
}

template <class Processor>
TableResult run(const WeightedGraph& g, int k, std::vector<Processor>& procs, SeriesMode mode) {
  const int n = g.num_vertices();
  SyncNetwork net(g);
  auto broadcast = [&](auto&& payload_of) {
    for (VertexId u = 0; u < n; ++u) {
      const std::vector<double> payload = payload_of(procs[static_cast<std::size_t>(u)]);
      for (const Incidence& inc : g.incident(u)) net.send(u, inc.edge, payload);
    }
    net.advance();
  };

  for (int round = 0; round < k; ++round) {
    broadcast([](const Processor& p) { return p.outgoing(); });
    for (VertexId u = 0; u < n; ++u) procs[static_cast<std::size_t>(u)].step(net.inbox(u));
  }

  TableResult out;
  out.mode = mode;
  out.k = k;
  out.rows.resize(n, n);
  for (VertexId u = 0; u < n; ++u) {
    const std::vector<double> row = procs[static_cast<std::size_t>(u)].row();
    for (VertexId w = 0; w < n; ++w) out.rows(u, w) = row[static_cast<std::size_t>(w)];
  }

  broadcast([](const Processor& p) { return p.row(); });
  out.held.resize(static_cast<std::size_t>(n));
  for (VertexId u = 0; u < n; ++u) {
    auto& held = out.held[static_cast<std::size_t>(u)];
    held.emplace_back(u, out.rows.row(u).transpose());
    for (const Delivery& d : net.inbox(u)) {
      const bool seen = std::any_of(held.begin(), held.end(),
                                    [&](const auto& h) { return h.first == d.from; });
      if (seen) continue;  // parallel edge repeats the same row
      held.emplace_back(d.from, Eigen::Map<const VertexVector>(d.payload.data(), n));
    }
    std::sort(held.begin(), held.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  out.rounds_used = net.round();
  out.log = net.log();
  out.total_messages = out.log.size();
  for (const MessageRecord& r : out.log) out.max_payload_reals = std::max(out.max_payload_reals, r.payload_reals);
  return out;
}

void check_simulation_input(const WeightedGraph& g, int k) {
  if (k < 0) throw InvalidArgument("simulate: k must be >= 0");
  if (!g.connected()) throw DisconnectedGraph("simulate: graph is disconnected");
  if (g.num_vertices() < 2) throw InvalidArgument("simulate: needs at least 2 vertices");
}

}  // namespace

const VertexVector* TableResult::copy(VertexId holder, VertexId owner) const {
  if (holder < 0 || static_cast<std::size_t>(holder) >= held.size()) return nullptr;
  for (const auto& [who, row] : held[static_cast<std::size_t>(holder)]) {
    if (who == owner) return &row;
  }
  return nullptr;
}

PotentialTable TableResult::table() const {
  return PotentialTable(rows.transpose(),
                        mode == SeriesMode::plain ? PotentialTable::Provenance::series
                                                  : PotentialTable::Provenance::symmetrized,
                        k);
}

TableResult simulate_tables(const WeightedGraph& g, int k) {
  check_simulation_input(g, k);
  const double tau = SeriesPlan::plain(g, k).tau;
  std::vector<PlainProcessor> procs;
  procs.reserve(static_cast<std::size_t>(g.num_vertices()));
  for (VertexId u = 0; u < g.num_vertices(); ++u) procs.emplace_back(local_view(g, u), tau);
  return run(g, k, procs, SeriesMode::plain);
}

TableResult simulate_tables_symmetrized(const WeightedGraph& g, int k) {
  check_simulation_input(g, k);
  if (!g.unweighted()) throw InvalidArgument("simulate_symmetrized: graph must be unweighted");
  std::vector<NormalizedProcessor> procs;
  procs.reserve(static_cast<std::size_t>(g.num_vertices()));
  for (VertexId u = 0; u < g.num_vertices(); ++u) procs.emplace_back(local_view(g, u));
  return run(g, k, procs, SeriesMode::normalized);
}

Accounting accounting(const WeightedGraph& g, const TableResult& result) {
  Accounting a;
  a.k = result.k;
  a.rounds = result.rounds_used;
  a.messages = result.total_messages;
  a.expected_messages = 2 * static_cast<std::size_t>(g.num_edges()) *
                        (static_cast<std::size_t>(result.k) + 1);
  a.payload_reals = result.max_payload_reals;

  const int n = g.num_vertices();
  double tau = 3.0;
  if (result.mode == SeriesMode::plain) {
    a.lambda = fiedler_eigenvalue(g);
    tau = 2.0 * max_weighted_degree(g);
  } else {
    a.lambda = normalized_fiedler(g);
  }
  a.reference_degree = series_degree_for(a.lambda, tau, std::pow(static_cast<double>(n), -5.0));
  a.log_n_over_lambda = std::log(static_cast<double>(n)) / a.lambda;
  return a;
}

double local_forward_coefficient(const TableResult& result, VertexId holder, VertexId s,
                                 VertexId t, VertexId u, VertexId v) {
  const VertexVector* ru = result.copy(holder, u);
  const VertexVector* rv = result.copy(holder, v);
  if (ru == nullptr || rv == nullptr) {
    throw InvalidArgument("local_forward_coefficient: vertex " + std::to_string(holder) +
                          " does not hold the rows of " + std::to_string(u) + " and " +
                          std::to_string(v));
  }
  const int n = static_cast<int>(ru->size());
  if (s < 0 || s >= n || t < 0 || t >= n) {
    throw InvalidArgument("local_forward_coefficient: vertex out of range");
  }
  if (u == v) throw InvalidArgument("local_forward_coefficient: u and v must differ");
  return ((*ru)[s] - (*ru)[t]) - ((*rv)[s] - (*rv)[t]);
}

}  // namespace voltroute

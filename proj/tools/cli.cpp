#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "voltroute/demand_io.hpp"
#include "voltroute/distributed_sim.hpp"
#include "voltroute/electric_router.hpp"
#include "voltroute/electric_walk.hpp"
#include "voltroute/error.hpp"
#include "voltroute/flow_cutting.hpp"
#include "voltroute/generators.hpp"
#include "voltroute/graph.hpp"
#include "voltroute/graph_io.hpp"
#include "voltroute/laplacian_solver.hpp"

namespace voltroute::cli {
namespace {

using json = nlohmann::ordered_json;

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

template <class T>
json to_json(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(x);
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One JSON object per run: the command, the options as given, a timestamp,
// the computed values and the asserted checks.
class Report {
 public:
  Report(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

  json& result() { return result_; }

  void check(const std::string& name, bool ok, json detail = json::object()) {
    json c = {{"name", name}, {"ok", ok}};
    for (auto& [k, v] : detail.items()) c[k] = v;
    checks_.push_back(std::move(c));
    ok_ = ok_ && ok;
  }
  void skip(const std::string& name, const std::string& reason) {
    checks_.push_back({{"name", name}, {"ok", true}, {"skipped", true}, {"reason", reason}});
  }

  bool ok() const { return ok_; }

  json to_json() const {
    return {{"command", command_}, {"config", config_}, {"timestamp", utc_timestamp()},
            {"result", result_}, {"checks", checks_}, {"ok", ok_}};
  }

 private:
  std::string command_;
  json config_;
  json result_ = json::object();
  json checks_ = json::array();
  bool ok_ = true;
};

struct GraphSource {
  std::string file;
  std::string kind;
  GeneratorParams params;
};

struct Common {
  GraphSource source;
  std::uint64_t seed = 0;
  std::string out;
  double tol = 1e-9;
};

void add_generator_options(CLI::App* app, GraphSource& src, bool k_flag) {
  app->add_option("--kind", src.kind,
                  "generator: path, cycle, complete, random-regular, glued-paths, random-connected");
  app->add_option("--n", src.params.n, "vertex count");
  app->add_option("--d", src.params.d, "degree for random-regular")->capture_default_str();
  app->add_option(k_flag ? "--k,--paths" : "--paths", src.params.k,
                  "number and length of paths for glued-paths");
  app->add_option("--m", src.params.m, "edge count for random-connected");
  app->add_option("--min-weight", src.params.min_weight, "random-connected weight range")
      ->capture_default_str();
  app->add_option("--max-weight", src.params.max_weight, "random-connected weight range")
      ->capture_default_str();
}

void add_common(CLI::App* app, Common& c, bool graph_k_flag) {
  app->add_option("--graph", c.source.file, "edge-list file");
  add_generator_options(app, c.source, graph_k_flag);
  app->add_option("--seed", c.seed, "seed for every randomized step")->capture_default_str();
  app->add_option("--out", c.out, "write the report here instead of stdout");
  app->add_option("--tol", c.tol, "absolute tolerance of asserted checks")->capture_default_str();
}

WeightedGraph load_graph(const GraphSource& src, std::uint64_t seed) {
  if (!src.file.empty() && !src.kind.empty()) {
    throw InvalidArgument("give either --graph or --kind, not both");
  }
  if (!src.file.empty()) return read_graph_file(src.file);
  if (!src.kind.empty()) return generate(parse_graph_kind(src.kind), src.params, seed);
  throw InvalidArgument("no graph: pass --graph FILE or --kind KIND with its size options");
}

// Options that were given on the command line, as strings, in declaration
// order.
json echo_config(const CLI::App* app, const std::vector<std::string>& args) {
  json opts = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto& results = opt->results();
    std::string name = opt->get_name();
    if (results.size() == 1) {
      opts[name] = results.front();
    } else {
      opts[name] = results;
    }
  }
  return {{"argv", args}, {"options", opts}};
}

void emit_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int emit(const Report& report, const std::string& path, std::ostream& out) {
  emit_text(path, report.to_json().dump(2) + "\n", out);
  return report.ok() ? kExitOk : kExitBoundFailed;
}

void require_vertex(const WeightedGraph& g, VertexId v, const char* flag) {
  if (v < 0 || v >= g.num_vertices()) {
    throw InvalidArgument(std::string(flag) + " must name a vertex in [0, " +
                          std::to_string(g.num_vertices()) + ")");
  }
}

json graph_summary(const WeightedGraph& g) {
  return {{"n", g.num_vertices()}, {"m", g.num_edges()}, {"unweighted", g.unweighted()},
          {"connected", g.connected()}};
}

std::optional<double> exact_alpha(const WeightedGraph& g) {
  if (!g.unweighted() || g.num_vertices() > kDefaultExpansionCap || g.num_vertices() < 2) {
    return std::nullopt;
  }
  return vertex_expansion_exact(g);
}

// ---- norms -------------------------------------------------------------

int cmd_norms(const Common& c, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  const ElectricRouter router(g);
  const PinvOracle& oracle = router.oracle();
  const std::optional<double> alpha = exact_alpha(g);
  const Eigen::MatrixXd pi = router.pi_matrix();

  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["max_degree"] = max_degree(g);
  r["max_weighted_degree"] = max_weighted_degree(g);
  r["fiedler"] = oracle.fiedler();
  r["lambda_max"] = oracle.lambda_max();
  r["diameter"] = diameter(g);
  r["alpha"] = alpha ? json(*alpha) : json(nullptr);
  r["lplus_one_one_norm"] = lplus_one_one_norm(oracle);
  r["competitive_bound"] = router.competitive_bound();
  r["pi_trace"] = pi.trace();
  r["series_degree"] = series_degree_for(oracle.fiedler(), 2.0 * max_weighted_degree(g), c.tol);

  const double cap = 2.0 * max_weighted_degree(g);
  rep.check("spectrum_ordering",
            oracle.fiedler() > 0.0 && oracle.fiedler() <= oracle.lambda_max() + c.tol &&
                oracle.lambda_max() <= cap + c.tol,
            {{"limit", cap}});
  const double idempotence = (pi * pi - pi).cwiseAbs().maxCoeff();
  rep.check("pi_idempotent", idempotence <= std::max(c.tol, 1e-8), {{"value", idempotence}});
  const double trace_gap = std::abs(pi.trace() - (g.num_vertices() - 1));
  rep.check("pi_trace", trace_gap <= std::max(c.tol, 1e-8), {{"value", trace_gap}});
  return emit(rep, c.out, out);
}

// ---- flow / congestion --------------------------------------------------

struct DemandOptions {
  std::string file;
  VertexId s = -1;
  VertexId t = -1;
  double amount = 1.0;
};

DemandSet load_demands(const DemandOptions& d, const WeightedGraph& g) {
  if (!d.file.empty()) {
    DemandSet ds = parse_demand_set(read_text_file(d.file));
    if (ds.front().size() != g.num_vertices()) {
      throw InvalidArgument("demand file has n = " + std::to_string(ds.front().size()) +
                            " but the graph has " + std::to_string(g.num_vertices()) + " vertices");
    }
    return ds;
  }
  if (d.s < 0 && d.t < 0) return {};
  require_vertex(g, d.s, "--s");
  require_vertex(g, d.t, "--t");
  return {Demand::pair(g.num_vertices(), d.s, d.t, d.amount)};
}

int cmd_flow(const Common& c, const DemandOptions& dopt, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  const DemandSet ds = load_demands(dopt, g);
  if (ds.empty()) throw InvalidArgument("flow: pass --s and --t, or --demands FILE");
  const ElectricRouter router(g);
  const MultiFlow mf = router.route_set(ds);

  json flows = json::array();
  double worst_residual = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const EdgeFlow& f = mf.columns[i];
    double energy = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) energy += f[e] * f[e] / g.edge(e).weight;
    const double residual = (divergence_apply(g, f) - ds[i].values()).cwiseAbs().maxCoeff() /
                            std::max(1.0, ds[i].values().lpNorm<1>());
    worst_residual = std::max(worst_residual, residual);
    flows.push_back({{"demand", to_json(ds[i].values())},
                     {"potentials", to_json(router.potentials(ds[i]))},
                     {"flow", to_json(f)},
                     {"energy", energy}});
  }
  rep.result()["graph"] = graph_summary(g);
  rep.result()["flows"] = std::move(flows);
  rep.result()["congestion"] = congestion(g, mf);
  rep.check("conservation", worst_residual <= c.tol, {{"value", worst_residual}});
  return emit(rep, c.out, out);
}

int cmd_congestion(const Common& c, const DemandOptions& dopt, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  DemandSet ds = load_demands(dopt, g);
  const bool worst_case = ds.empty();
  if (worst_case) ds = worst_case_demands(g);
  const ElectricRouter router(g);
  const MultiFlow mf = router.route_set(ds);
  EdgeVector loads = EdgeVector::Zero(g.num_edges());
  for (const EdgeFlow& f : mf.columns) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) loads[e] += std::abs(f[e] / g.edge(e).weight);
  }
  const double cong = congestion(g, mf);
  const double eta = router.competitive_bound();

  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["demands"] = worst_case ? "worst-case" : "given";
  r["demand_count"] = ds.size();
  r["congestion"] = cong;
  r["competitive_bound"] = eta;
  r["edge_loads"] = to_json(loads);
  if (worst_case) {
    rep.check("worst_case_identity", std::abs(cong - eta) <= c.tol * std::max(1.0, eta),
              {{"value", cong}, {"limit", eta}});
  }
  return emit(rep, c.out, out);
}

// ---- bound --------------------------------------------------------------

int cmd_bound(const Common& c, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  if (!g.unweighted()) throw InvalidArgument("bound: graph must be unweighted");
  const ElectricRouter router(g);
  const std::optional<double> alpha = exact_alpha(g);

  const double eta = router.competitive_bound();
  const double lplus = lplus_one_one_norm(router.oracle());
  const int d_max = max_degree(g);
  const int diam = diameter(g);
  const double sqrt_m = std::sqrt(static_cast<double>(g.num_edges()));
  const double diameter_bound = lplus_diameter_lower_bound(g);
  const double half_diameter_bound = diam / (2.0 * d_max);

  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["max_degree"] = d_max;
  r["diameter"] = diam;
  r["alpha"] = alpha ? json(*alpha) : json(nullptr);
  r["competitive_bound"] = eta;
  r["lplus_one_one_norm"] = lplus;
  r["lplus_diameter_lower_bound"] = diameter_bound;
  r["lplus_diameter_lower_bound_holds"] = lplus >= diameter_bound - c.tol;
  r["lplus_half_diameter_lower_bound"] = half_diameter_bound;
  r["sqrt_m"] = sqrt_m;

  rep.check("competitive_le_sqrt_m", eta <= sqrt_m + c.tol, {{"value", eta}, {"limit", sqrt_m}});
  rep.check("lplus_ge_half_diameter", lplus >= half_diameter_bound - c.tol,
            {{"value", lplus}, {"limit", half_diameter_bound}});
  if (!alpha) {
    r["eta_expansion_bound"] = nullptr;
    rep.skip("competitive_le_expansion_bound", "alpha not computed (n above the enumeration cap)");
    rep.skip("lplus_le_expansion_bound", "alpha not computed (n above the enumeration cap)");
  } else {
    const BoundValue b = eta_expansion_bound(g, *alpha);
    r["eta_expansion_bound"] = {{"value", b.value}, {"degenerate", b.degenerate}};
    if (b.degenerate) {
      rep.skip("competitive_le_expansion_bound", "degenerate: ln(n/2) = 0");
      rep.skip("lplus_le_expansion_bound", "degenerate: ln(n/2) = 0");
    } else {
      rep.check("competitive_le_expansion_bound", eta <= b.value + c.tol,
                {{"value", eta}, {"limit", b.value}});
      rep.check("lplus_le_expansion_bound", lplus <= b.value + c.tol,
                {{"value", lplus}, {"limit", b.value}});
    }
  }
  return emit(rep, c.out, out);
}

// ---- walk ---------------------------------------------------------------

struct WalkOptions {
  VertexId s = -1;
  VertexId t = -1;
  bool enumerate = false;
  std::size_t samples = 0;
  int cap = kDefaultEnumerationCap;
};

int cmd_walk(const Common& c, const WalkOptions& w, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  require_vertex(g, w.s, "--s");
  require_vertex(g, w.t, "--t");
  if (w.s == w.t) throw InvalidArgument("walk: --s and --t must differ");
  const ElectricRouter router(g);
  const WalkModel model = electric_walk_model(router, w.s, w.t);
  const double latency = expected_latency(model);

  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["s"] = w.s;
  r["t"] = w.t;
  r["flow"] = to_json(model.flow());
  r["flow_l1"] = model.flow().lpNorm<1>();
  r["expected_latency"] = latency;
  json vertices = json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    json steps = json::array();
    for (const Step& s : model.steps(v)) steps.push_back({{"to", s.to}, {"probability", s.probability}});
    vertices.push_back({{"vertex", v},
                        {"start", model.start_probability(v)},
                        {"exit", model.exit_probability(v)},
                        {"steps", std::move(steps)}});
  }
  r["transitions"] = std::move(vertices);

  if (w.enumerate) {
    const std::vector<WalkPath> paths = enumerate_paths(model, w.cap);
    json table = json::array();
    double total = 0.0;
    std::map<std::pair<VertexId, VertexId>, double> traversal;
    for (const WalkPath& p : paths) {
      table.push_back({{"vertices", p.vertices}, {"probability", p.probability}});
      total += p.probability;
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        traversal[std::minmax(p.vertices[i], p.vertices[i + 1])] += p.probability;
      }
    }
    // Parallel edges share a vertex pair, so marginals compare per pair.
    std::map<std::pair<VertexId, VertexId>, double> pair_flow;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      pair_flow[{g.edge(e).tail, g.edge(e).head}] += std::abs(model.flow()[e]);
    }
    double marginal_gap = 0.0;
    for (const auto& [pair, f] : pair_flow) {
      const auto it = traversal.find(pair);
      marginal_gap = std::max(marginal_gap, std::abs((it == traversal.end() ? 0.0 : it->second) - f));
    }
    r["paths"] = std::move(table);
    r["total_probability"] = total;
    rep.check("enumeration_total", std::abs(total - 1.0) <= c.tol, {{"value", total}});
    rep.check("edge_marginals", marginal_gap <= c.tol, {{"value", marginal_gap}});
  }

  if (w.samples > 0) {
    const std::vector<WalkPath> walks = sample_walks(model, c.seed, w.samples);
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t arrivals = 0;
    for (const WalkPath& p : walks) {
      const double len = static_cast<double>(p.vertices.size() - 1);
      sum += len;
      sum_sq += len * len;
      if (p.vertices.back() == w.t) ++arrivals;
    }
    const double count = static_cast<double>(walks.size());
    const double mean = sum / count;
    const double variance = count > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1)) : 0.0;
    const double sigma_mean = std::sqrt(variance / count);
    r["monte_carlo"] = {{"samples", walks.size()},
                        {"seed", c.seed},
                        {"mean_length", mean},
                        {"stddev_length", std::sqrt(variance)},
                        {"sigma_of_mean", sigma_mean},
                        {"sink_arrival_frequency", arrivals / count}};
    rep.check("mean_length_within_3_sigma",
              std::abs(mean - latency) <= 3.0 * sigma_mean + c.tol,
              {{"value", mean}, {"expected", latency}, {"sigma", sigma_mean}});
  }
  return emit(rep, c.out, out);
}

// ---- cuts ---------------------------------------------------------------

struct PairOptions {
  VertexId s = -1;
  VertexId t = -1;
};

int cmd_cuts(const Common& c, const PairOptions& p, std::optional<double> alpha_override,
             Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  require_vertex(g, p.s, "--s");
  require_vertex(g, p.t, "--t");
  const ElectricRouter router(g);
  const CutSequence cs = cut_sequence(router, p.s, p.t);

  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["s"] = p.s;
  r["t"] = p.t;
  r["negated"] = cs.negated;
  r["c0_zero"] = cs.c0_zero;
  r["psi"] = to_json(cs.psi);
  r["r"] = cs.r();
  json cuts = json::array();
  double worst_sum_gap = 0.0;
  for (std::size_t i = 0; i < cs.cuts.size(); ++i) {
    const Cut& cut = cs.cuts[i];
    cuts.push_back({{"i", i},
                    {"c", cut.level},
                    {"n", cut.size},
                    {"k", cut.crossing},
                    {"delta", cut.delta},
                    {"flow_sum", cut.flow_sum},
                    {"members", cut.members},
                    {"crossing_edges", cut.crossing_edges},
                    {"p", cut.crossing_flows}});
    if (cut.size > 0) worst_sum_gap = std::max(worst_sum_gap, std::abs(cut.flow_sum - 1.0));
  }
  r["cuts"] = std::move(cuts);
  rep.check("cut_flow_sums", worst_sum_gap <= c.tol, {{"value", worst_sum_gap}});

  const std::optional<double> alpha = alpha_override ? alpha_override : exact_alpha(g);
  if (!alpha) {
    rep.skip("cut_bounds", "alpha not computed (n above the enumeration cap)");
    return emit(rep, c.out, out);
  }
  const CutBoundReport b = verify_cut_bounds(g, cs, *alpha, c.tol);
  json checks = json::array();
  for (const CutCheck& k : b.cuts) {
    checks.push_back({{"i", k.index},
                      {"k_over_n", k.expansion_ratio},
                      {"expansion_ok", k.expansion_ok},
                      {"shrink_limit", k.shrink_limit},
                      {"shrink_ok", k.shrink_ok},
                      {"delta_limit", k.delta_limit},
                      {"delta_ok", k.delta_ok}});
  }
  r["verification"] = {{"alpha", b.alpha},
                       {"d_max", b.d_max},
                       {"theta", b.theta},
                       {"r_limit", b.r_limit},
                       {"psi_l1", b.psi_l1},
                       {"N", b.half_spread},
                       {"sum_n_delta", b.weighted_deltas},
                       {"cut_count_limit", b.cut_count_limit},
                       {"expansion_bound", b.expansion_bound.value},
                       {"expansion_bound_degenerate", b.expansion_bound.degenerate},
                       {"within_expansion_bound", b.within_expansion_bound},
                       {"per_cut", std::move(checks)}};
  if (cs.c0_zero) r["notes"] = json::array({"c_0 = 0: psi kept unnegated; both signs are valid"});
  rep.check("cut_bounds", b.ok(), {{"failures", b.failures}});
  return emit(rep, c.out, out);
}

// ---- robust -------------------------------------------------------------

struct RobustOptions {
  VertexId s = -1;
  VertexId t = -1;
  std::vector<double> p;
  std::vector<double> x;
  int seeds = 1;
};

int cmd_robust(const Common& c, const RobustOptions& o, Report& rep, std::ostream& out) {
  if (o.p.empty() && o.x.empty()) throw InvalidArgument("robust: pass --p values and/or --x values");
  const WeightedGraph g = load_graph(c.source, c.seed);
  const ElectricRouter router(g);
  json& r = rep.result();
  r["graph"] = graph_summary(g);

  if (!o.p.empty()) {
    require_vertex(g, o.s, "--s");
    require_vertex(g, o.t, "--t");
    json rows = json::array();
    bool all = true;
    for (double p : o.p) {
      const Robust1Report q = robust1_check(router, o.s, o.t, p);
      all = all && q.ok;
      rows.push_back({{"p", q.p},
                      {"heavy_edges", q.heavy},
                      {"spectral_limit", q.spectral_limit},
                      {"norm_limit", q.norm_limit},
                      {"limit", q.limit},
                      {"flow_l1", q.flow_l1},
                      {"ok", q.ok}});
    }
    r["heavy_edges"] = std::move(rows);
    rep.check("heavy_edge_bound", all);
  }

  if (!o.x.empty()) {
    if (!g.unweighted()) throw InvalidArgument("robust: removal experiment needs an unweighted graph");
    const double alpha = vertex_expansion_exact(g);
    const double eta = router.competitive_bound();
    json rows = json::array();
    bool all = true;
    for (double x : o.x) {
      for (int i = 0; i < o.seeds; ++i) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
        const RemovalReport q = removal_experiment(router, x, seed, alpha, eta);
        all = all && q.ok;
        rows.push_back({{"x", q.x},
                        {"seed", q.seed},
                        {"removed", q.removed},
                        {"fraction", q.fraction},
                        {"limit", q.limit},
                        {"ok", q.ok}});
      }
    }
    r["alpha"] = alpha;
    r["competitive_bound"] = eta;
    r["removal"] = std::move(rows);
    rep.check("removal_bound", all);
  }
  return emit(rep, c.out, out);
}

// ---- simulate -----------------------------------------------------------

struct SimulateOptions {
  int k = -1;
  double eps = 0.0;
  bool symmetrized = false;
};

int cmd_simulate(const Common& c, const SimulateOptions& o, Report& rep, std::ostream& out) {
  const WeightedGraph g = load_graph(c.source, c.seed);
  if ((o.k < 0) == (o.eps <= 0.0)) throw InvalidArgument("simulate: pass exactly one of --k and --eps");
  const int n = g.num_vertices();
  int k = o.k;
  if (k < 0) {
    k = o.symmetrized ? normalized_series_degree_for(g, o.eps)
                      : series_degree_for(fiedler_eigenvalue(g), 2.0 * max_weighted_degree(g), o.eps);
  }
  const TableResult res = o.symmetrized ? simulate_tables_symmetrized(g, k) : simulate_tables(g, k);
  const Accounting acc = accounting(g, res);

  bool identical = true;
  for (VertexId w = 0; w < n && identical; ++w) {
    const VertexVector central =
        o.symmetrized ? normalized_series_raw(g, w, k)
                      : series_apply(g, centered_indicator(n, w), SeriesPlan::plain(g, k));
    identical = (central.array() == res.column(w).array()).all();
  }
  const PinvOracle oracle(g);
  double error = 0.0;
  for (VertexId w = 0; w < n; ++w) {
    VertexVector col = res.column(w);
    col.array() -= col.mean();
    error = std::max(error, (col - oracle.column(w)).norm());
  }

  json tables = json::array();
  for (VertexId u = 0; u < n; ++u) tables.push_back(to_json(VertexVector(res.rows.row(u).transpose())));
  json& r = rep.result();
  r["graph"] = graph_summary(g);
  r["mode"] = o.symmetrized ? "symmetrized" : "plain";
  r["k"] = k;
  r["accounting"] = {{"rounds", acc.rounds},
                     {"messages", acc.messages},
                     {"payload_reals", acc.payload_reals},
                     {"lambda", acc.lambda},
                     {"reference_degree", acc.reference_degree},
                     {"ln_n_over_lambda", acc.log_n_over_lambda}};
  r["max_table_error"] = error;
  r["tables"] = std::move(tables);

  rep.check("rounds", acc.rounds == k + 1, {{"value", acc.rounds}, {"expected", k + 1}});
  rep.check("messages", acc.messages == acc.expected_messages,
            {{"value", acc.messages}, {"expected", acc.expected_messages}});
  rep.check("payload", acc.payload_reals == n, {{"value", acc.payload_reals}, {"expected", n}});
  rep.check("locality", log_is_local(g, res.log));
  rep.check("matches_centralized_series", identical);
  if (o.eps > 0.0) rep.check("accuracy", error <= o.eps, {{"value", error}, {"limit", o.eps}});
  return emit(rep, c.out, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oblivious electric routing experiments"};
  app.name("voltroute");
  app.require_subcommand(1);

  Common common;
  DemandOptions demands;
  WalkOptions walk;
  PairOptions pair;
  RobustOptions robust;
  SimulateOptions sim;
  double alpha_value = 0.0;

  CLI::App* gen = app.add_subcommand("gen", "generate a graph and print its edge list");
  add_generator_options(gen, common.source, true);
  gen->add_option("--seed", common.seed, "generator seed")->capture_default_str();
  gen->add_option("--out", common.out, "write the edge list here instead of stdout");

  CLI::App* norms = app.add_subcommand("norms", "spectrum, expansion, 1->1 norms and projection checks");
  add_common(norms, common, true);

  CLI::App* flow = app.add_subcommand("flow", "electric flows for one pair or a demand file");
  add_common(flow, common, true);
  CLI::App* congestion_cmd = app.add_subcommand(
      "congestion", "congestion of a demand set (worst-case demands by default)");
  add_common(congestion_cmd, common, true);
  for (CLI::App* sub : {flow, congestion_cmd}) {
    sub->add_option("--demands", demands.file, "demand-set file");
    sub->add_option("--s", demands.s, "source vertex");
    sub->add_option("--t", demands.t, "sink vertex");
    sub->add_option("--amount", demands.amount, "amount shipped from s to t")->capture_default_str();
  }

  CLI::App* bound = app.add_subcommand("bound", "competitive ratio against its upper and lower bounds");
  add_common(bound, common, true);

  CLI::App* walk_cmd = app.add_subcommand("walk", "electric walk path distribution and sampling");
  add_common(walk_cmd, common, true);
  walk_cmd->add_option("--s", walk.s, "source vertex")->required();
  walk_cmd->add_option("--t", walk.t, "sink vertex")->required();
  walk_cmd->add_flag("--enumerate", walk.enumerate, "list every path with its probability");
  walk_cmd->add_option("--samples", walk.samples, "Monte Carlo walks to sample");
  walk_cmd->add_option("--cap", walk.cap, "largest n for enumeration")->capture_default_str();

  CLI::App* cuts = app.add_subcommand("cuts", "concurrent flow-cutting sequence and its bounds");
  add_common(cuts, common, true);
  cuts->add_option("--s", pair.s, "source vertex")->required();
  cuts->add_option("--t", pair.t, "sink vertex")->required();
  CLI::Option* alpha_opt = cuts->add_option("--alpha", alpha_value, "use this vertex expansion");

  CLI::App* robust_cmd = app.add_subcommand("robust", "heavy-edge counts and edge-removal experiments");
  add_common(robust_cmd, common, true);
  robust_cmd->add_option("--s", robust.s, "source vertex for --p");
  robust_cmd->add_option("--t", robust.t, "sink vertex for --p");
  robust_cmd->add_option("--p", robust.p, "flow thresholds in (0, 1]");
  robust_cmd->add_option("--x", robust.x, "fractions of edges to remove, in (0, 1]");
  robust_cmd->add_option("--seeds", robust.seeds, "seeds per fraction, starting at --seed")
      ->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "distributed routing-table computation");
  add_common(simulate, common, false);
  simulate->add_option("--k", sim.k, "series degree (rounds before the exchange)");
  simulate->add_option("--eps", sim.eps, "choose k for this l2 accuracy instead");
  simulate->add_flag("--symmetrized", sim.symmetrized, "normalized recursion, no global knowledge");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (gen->parsed()) {
      if (common.source.kind.empty()) throw InvalidArgument("gen: --kind is required");
      const WeightedGraph g = generate(parse_graph_kind(common.source.kind), common.source.params, common.seed);
      emit_text(common.out, serialize(g), out);
      return kExitOk;
    }
    CLI::App* sub = app.get_subcommands().front();
    Report rep(sub->get_name(), echo_config(sub, args));
    if (sub == norms) return cmd_norms(common, rep, out);
    if (sub == flow) return cmd_flow(common, demands, rep, out);
    if (sub == congestion_cmd) return cmd_congestion(common, demands, rep, out);
    if (sub == bound) return cmd_bound(common, rep, out);
    if (sub == walk_cmd) return cmd_walk(common, walk, rep, out);
    if (sub == cuts) {
      return cmd_cuts(common, pair, alpha_opt->count() ? std::optional<double>(alpha_value) : std::nullopt,
                      rep, out);
    }
    if (sub == robust_cmd) return cmd_robust(common, robust, rep, out);
    if (sub == simulate) return cmd_simulate(common, sim, rep, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace voltroute::cli

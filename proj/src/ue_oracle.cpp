#include "coinvest/ue_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coinvest {

namespace {

constexpr int kMaxPathsPerRequest = 256;

bool edge_usable(const MobilityGraph& g, const Edge& e, const NetworkState& state,
                 const ServiceParams& params) {
  if (e.layer == Layer::kRail) {
    const int slot = g.rail_slot(e.id);
    return state.x()[slot] != 0 && rail_capacity(params, state.s()[slot]) > 0;
  }
  return true;
}

void dfs_paths(const MobilityGraph& g, const NetworkState& state, const ServiceParams& params,
               int node_index, int target_index, int hops_left, std::vector<char>& visited,
               std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (node_index == target_index) {
    out.push_back(current);
    if (static_cast<int>(out.size()) > kMaxPathsPerRequest) {
      throw Error(ErrorCode::kTooLarge, "path enumeration exceeded the desk-scale limit");
    }
    return;
  }
  if (hops_left == 0) return;
  // Deterministic order: all outgoing edges sorted by id.
  std::vector<int> outgoing;
  for (const auto* adj : {&g.alt_adjacency(), &g.rail_adjacency()}) {
    for (int ei : (*adj)[node_index]) outgoing.push_back(ei);
  }
  for (int ei : g.transfer_edge_indices()) {
    if (g.node_index(g.edges()[ei].tail) == node_index) outgoing.push_back(ei);
  }
  std::sort(outgoing.begin(), outgoing.end(), [&](int a, int b) {
    return g.edges()[a].id < g.edges()[b].id;
  });
  for (int ei : outgoing) {
    const Edge& e = g.edges()[ei];
    if (!edge_usable(g, e, state, params)) continue;
    const int next = g.node_index(e.head);
    if (visited[next]) continue;
    visited[next] = 1;
    current.push_back(e.id);
    dfs_paths(g, state, params, next, target_index, hops_left - 1, visited, current, out);
    current.pop_back();
    visited[next] = 0;
  }
}

}  // namespace

UEPathSet enumerate_ue_paths(const MobilityGraph& g, const NetworkState& state,
                             const std::vector<TravelRequest>& demand, int hop_bound,
                             const ServiceParams& params) {
  UEPathSet set;
  set.paths.reserve(demand.size());
  for (const auto& r : demand) {
    std::vector<std::vector<int>> paths;
    std::vector<char> visited(g.nodes().size(), 0);
    std::vector<int> current;
    const int oi = g.node_index(r.origin);
    visited[oi] = 1;
    dfs_paths(g, state, params, oi, g.node_index(r.destination), hop_bound, visited, current,
              paths);
    if (paths.empty()) {
      throw Error(ErrorCode::kInfeasible,
                  "no usable path " + std::to_string(r.origin) + " -> " +
                      std::to_string(r.destination));
    }
    set.paths.push_back(std::move(paths));
  }
  return set;
}

double ue_edge_cost(double flow, const Edge& edge, bool rail_available,
                    const ServiceParams& params) {
  switch (edge.layer) {
    case Layer::kTransfer:
      return 0.0;
    case Layer::kRail:
      return rail_available ? edge.label.length_km * params.rail_unit_cost() : 0.0;
    case Layer::kAlt: {
      if (edge.label.capacity <= 0) {
        throw Error(ErrorCode::kZeroRoadCapacity, "alt edge " + std::to_string(edge.id));
      }
      const double t0 = edge.label.length_km / params.alt_speed_kmh;
      const double ratio = flow / static_cast<double>(edge.label.capacity);
      return params.value_of_time * t0 *
                 (1.0 + params.bpr_coefficient * std::pow(ratio, params.bpr_exponent)) +
             edge.label.length_km * params.alt_fare_per_km;
    }
  }
  return 0.0;
}

namespace {

struct Workspace {
  const MobilityGraph& g;
  const NetworkState& state;
  const ServiceParams& params;
  const std::vector<TravelRequest>& demand;
  const UEPathSet& paths;
  std::vector<double> rail_cap;  // by edge index, -1 for non-rail

  std::vector<double> edge_flows(const std::vector<std::vector<double>>& f) const {
    std::vector<double> y(g.edges().size(), 0.0);
    for (std::size_t m = 0; m < paths.paths.size(); ++m) {
      for (std::size_t k = 0; k < paths.paths[m].size(); ++k) {
        for (int id : paths.paths[m][k]) y[g.edge_index(id)] += f[m][k];
      }
    }
    return y;
  }

  /// Beckmann objective plus quadratic rail-capacity penalty.
  double objective(const std::vector<double>& y, double rho) const {
    double total = 0.0;
    for (std::size_t ei = 0; ei < y.size(); ++ei) {
      const Edge& e = g.edges()[ei];
      const double flow = y[ei];
      if (e.layer == Layer::kAlt) {
        const double t0 = e.label.length_km / params.alt_speed_kmh;
        const double c = static_cast<double>(e.label.capacity);
        total += params.value_of_time * t0 *
                     (flow + params.bpr_coefficient * c / (params.bpr_exponent + 1.0) *
                                 std::pow(flow / c, params.bpr_exponent + 1.0)) +
                 e.label.length_km * params.alt_fare_per_km * flow;
      } else if (e.layer == Layer::kRail) {
        total += e.label.length_km * params.rail_unit_cost() * flow;
        const double over = flow - rail_cap[ei];
        if (over > 0) total += 0.5 * rho * over * over;
      }
    }
    return total;
  }

  double edge_cost_penalized(std::size_t ei, const std::vector<double>& y, double rho) const {
    const Edge& e = g.edges()[ei];
    double c = ue_edge_cost(y[ei], e, true, params);
    if (e.layer == Layer::kRail) {
      const double over = y[ei] - rail_cap[ei];
      if (over > 0) c += rho * over;
    }
    return c;
  }

  double path_cost(const std::vector<int>& path, const std::vector<double>& y, double rho) const {
    double total = 0.0;
    for (int id : path) total += edge_cost_penalized(g.edge_index(id), y, rho);
    return total;
  }

  double relative_gap(const std::vector<std::vector<double>>& f, const std::vector<double>& y,
                      double rho) const {
    double worst = 0.0;
    for (std::size_t m = 0; m < paths.paths.size(); ++m) {
      const double volume = static_cast<double>(demand[m].trips);
      if (volume <= 0) continue;
      double min_cost = std::numeric_limits<double>::infinity();
      double max_used = 0.0;
      for (std::size_t k = 0; k < paths.paths[m].size(); ++k) {
        const double c = path_cost(paths.paths[m][k], y, rho);
        min_cost = std::min(min_cost, c);
        if (f[m][k] > 1e-9 * volume) max_used = std::max(max_used, c);
      }
      if (min_cost > 0) worst = std::max(worst, (max_used - min_cost) / min_cost);
    }
    return worst;
  }

  double max_capacity_violation(const std::vector<double>& y) const {
    double worst = 0.0;
    for (std::size_t ei = 0; ei < y.size(); ++ei) {
      if (g.edges()[ei].layer == Layer::kRail) {
        worst = std::max(worst, y[ei] - rail_cap[ei]);
      }
    }
    return worst;
  }
};

/// Euclidean projection onto the simplex {f >= 0, sum f = volume}.
void project_simplex(std::vector<double>& f, double volume) {
  std::vector<double> sorted = f;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  int support = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - volume) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0) {
      theta = candidate;
      support = static_cast<int>(j + 1);
    }
  }
  (void)support;
  for (double& v : f) v = std::max(0.0, v - theta);
}

}  // namespace

UEResult solve_ue(const MobilityGraph& g, const NetworkState& state,
                  const std::vector<TravelRequest>& demand, const ServiceParams& params,
                  const UEOptions& options) {
  const UEPathSet paths = enumerate_ue_paths(g, state, demand, options.hop_bound, params);
  Workspace ws{g, state, params, demand, paths, {}};
  ws.rail_cap.assign(g.edges().size(), -1.0);
  for (int ei : g.rail_edge_indices()) {
    const int slot = g.rail_slot(g.edges()[ei].id);
    ws.rail_cap[ei] = static_cast<double>(rail_capacity(params, state.s()[slot]));
  }

  UEResult result;
  result.path_flows.resize(paths.paths.size());
  double total_demand = 0.0;
  for (std::size_t m = 0; m < paths.paths.size(); ++m) {
    const double volume = static_cast<double>(demand[m].trips);
    total_demand += volume;
    result.path_flows[m].assign(paths.paths[m].size(),
                                volume / static_cast<double>(paths.paths[m].size()));
  }

  double rho = 1e3;
  const double rho_max = 1e12;
  double step = 1e-2;
  std::vector<double> y = ws.edge_flows(result.path_flows);
  double value = ws.objective(y, rho);
  result.objective_trace.push_back(value);

  const double cap_tol = std::max(1e-9, 1e-7 * std::max(1.0, total_demand));
  int it = 0;
  while (it < options.max_iterations) {
    ++it;
    // One projected-gradient trial with backtracking on the penalized
    // Beckmann value.
    bool accepted = false;
    for (int trial = 0; trial < 40 && !accepted; ++trial) {
      std::vector<std::vector<double>> candidate = result.path_flows;
      for (std::size_t m = 0; m < paths.paths.size(); ++m) {
        const double volume = static_cast<double>(demand[m].trips);
        if (volume <= 0) {
          std::fill(candidate[m].begin(), candidate[m].end(), 0.0);
          continue;
        }
        for (std::size_t k = 0; k < candidate[m].size(); ++k) {
          candidate[m][k] -= step * ws.path_cost(paths.paths[m][k], y, rho);
        }
        project_simplex(candidate[m], volume);
      }
      const std::vector<double> y2 = ws.edge_flows(candidate);
      const double v2 = ws.objective(y2, rho);
      if (v2 <= value) {
        result.path_flows = std::move(candidate);
        y = y2;
        value = v2;
        result.objective_trace.push_back(value);
        accepted = true;
        step *= 1.2;
      } else {
        step *= 0.5;
      }
    }
    const double gap = ws.relative_gap(result.path_flows, y, rho);
    const double violation = ws.max_capacity_violation(y);
    if (!accepted || gap < options.gap_tolerance) {
      if (violation > cap_tol && rho < rho_max) {
        rho *= 10.0;
        value = ws.objective(y, rho);
        step = std::max(step, 1e-4);
        continue;
      }
      break;
    }
  }

  const double violation = ws.max_capacity_violation(y);
  if (violation > 1e-3 * std::max(1.0, total_demand)) {
    throw Error(ErrorCode::kInfeasible, "rail capacities cannot carry the demand");
  }
  result.edge_flows = y;
  result.iterations = it;
  result.gap = ws.relative_gap(result.path_flows, y, 0.0);
  return result;
}

std::vector<UEInstance> bundled_ue_instances() {
  std::vector<UEInstance> out;
  {
    // Two parallel links: a congestible 2 km road and a 10 km rail line.
    UEInstance inst;
    inst.name = "pigou-pair";
    GraphBuilder b;
    b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 2, 0);
    b.add_edge(1, 1, 2, 2.0, false, 100);
    b.add_edge(2, 1, 2, 10.0, true);
    inst.graph = b.build(inst.params);
    inst.state = NetworkState::initial(inst.graph);
    DesignAction build_rail;
    build_rail.set_build(inst.graph.all_rail_edge_ids().front());
    build_rail.add_frequency(inst.graph.all_rail_edge_ids().front(), 1);
    inst.state = apply_action(inst.graph, inst.state, build_rail, inst.params);
    inst.demand = {{1, 2, 300, TripType::kIntra1}};
    out.push_back(std::move(inst));
  }
  {
    // Two identical parallel road links.
    UEInstance inst;
    inst.name = "symmetric-pair";
    GraphBuilder b;
    b.add_node(1, 1, false, 0, 0).add_node(2, 1, false, 5, 0);
    b.add_edge(1, 1, 2, 5.0, false, 1000);
    b.add_edge(2, 1, 2, 5.0, false, 1000);
    inst.graph = b.build(inst.params);
    inst.state = NetworkState::initial(inst.graph);
    inst.demand = {{1, 2, 100, TripType::kIntra1}};
    out.push_back(std::move(inst));
  }
  {
    // Two-region ring with a partly built rail layer and ample capacity.
    UEInstance inst;
    inst.name = "two-region-ring";
    GraphBuilder b;
    b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 3, 0);
    b.add_node(3, 2, true, 3, 3).add_node(4, 2, true, 0, 3);
    int id = 0;
    const int ring[4][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}};
    const double len[4] = {3.0, 3.0, 3.0, 3.0};
    for (int k = 0; k < 4; ++k) {
      b.add_edge(++id, ring[k][0], ring[k][1], len[k], true, 800);
      b.add_edge(++id, ring[k][1], ring[k][0], len[k], true, 800);
    }
    inst.graph = b.build(inst.params);
    inst.state = NetworkState::initial(inst.graph);
    DesignAction act;
    for (int rail_id : inst.graph.all_rail_edge_ids()) {
      const Edge& e = inst.graph.edge(rail_id);
      if (e.region_class == RegionClass::kRegion1) {
        act.set_build(rail_id);
        act.add_frequency(rail_id, 2);
      }
    }
    inst.state = apply_action(inst.graph, inst.state, act, inst.params);
    inst.demand = {{1, 3, 120, TripType::kInter1},
                   {2, 4, 80, TripType::kInter1},
                   {4, 2, 60, TripType::kInter2}};
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace coinvest

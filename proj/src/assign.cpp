#include "coinvest/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace coinvest {

namespace detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::vector<int>>& adjacency(const MobilityGraph& g, Layer layer, bool reverse) {
  if (layer == Layer::kRail) return reverse ? g.rail_radjacency() : g.rail_adjacency();
  return reverse ? g.alt_radjacency() : g.alt_adjacency();
}

}  // namespace

std::vector<double> layer_distances(const MobilityGraph& g, Layer layer, int source_index,
                                    bool reverse) {
  const auto& adj = adjacency(g, layer, reverse);
  std::vector<double> dist(g.nodes().size(), kInf);
  using Item = std::pair<double, int>;  // (dist, node index)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source_index] = 0.0;
  heap.push({0.0, source_index});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (int ei : adj[u]) {
      const Edge& e = g.edges()[ei];
      const int v = g.node_index(reverse ? e.tail : e.head);
      const double nd = d + e.label.length_km;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

std::vector<int> lex_shortest_path(const MobilityGraph& g, Layer layer, int source_index,
                                   int target_index) {
  if (source_index == target_index) return {};
  const std::vector<double> from_src = layer_distances(g, layer, source_index, false);
  if (!(from_src[target_index] < kInf)) return {};
  const std::vector<double> to_dst = layer_distances(g, layer, target_index, true);
  const double total = from_src[target_index];
  const double tol = 1e-9 * (1.0 + std::abs(total));
  const auto& adj = adjacency(g, layer, false);

  // Walk forward greedily: among edges that stay on a shortest path, the
  // smallest edge id yields the lexicographically smallest sequence.
  std::vector<int> path;
  int u = source_index;
  double walked = 0.0;
  while (u != target_index) {
    int best_edge = -1;
    int best_id = std::numeric_limits<int>::max();
    for (int ei : adj[u]) {
      const Edge& e = g.edges()[ei];
      const int v = g.node_index(e.head);
      if (!(to_dst[v] < kInf)) continue;
      if (std::abs(walked + e.label.length_km + to_dst[v] - total) <= tol && e.id < best_id) {
        best_id = e.id;
        best_edge = ei;
      }
    }
    if (best_edge < 0) {
      throw Error(ErrorCode::kUnreachable, "shortest-path reconstruction failed");
    }
    path.push_back(best_edge);
    walked += g.edges()[best_edge].label.length_km;
    u = g.node_index(g.edges()[best_edge].head);
    if (path.size() > g.edges().size()) {
      throw Error(ErrorCode::kUnreachable, "shortest-path reconstruction cycled");
    }
  }
  return path;
}

}  // namespace detail

namespace {

std::vector<int> to_edge_ids(const MobilityGraph& g, const std::vector<int>& edge_indices) {
  std::vector<int> ids;
  ids.reserve(edge_indices.size());
  for (int ei : edge_indices) ids.push_back(g.edges()[ei].id);
  return ids;
}

int transfer_edge_id(const MobilityGraph& g, int alt_node_id, int rail_node_id, bool up) {
  for (int ei : g.transfer_edge_indices()) {
    const Edge& e = g.edges()[ei];
    if (up && e.tail == alt_node_id && e.head == rail_node_id) return e.id;
    if (!up && e.tail == rail_node_id && e.head == alt_node_id) return e.id;
  }
  throw Error(ErrorCode::kUnknownEdge, "missing transfer edge at node " + std::to_string(alt_node_id));
}

std::vector<int> detour_for_slot(const MobilityGraph& g, int slot) {
  const Edge& rail = g.edges()[g.rail_edge_indices()[slot]];
  const int tail_alt = g.alt_node_of_base(g.node(rail.tail).base_id);
  const int head_alt = g.alt_node_of_base(g.node(rail.head).base_id);
  if (tail_alt < 0 || head_alt < 0) {
    throw Error(ErrorCode::kUnknownNode, "rail edge without alt counterparts");
  }
  const auto path = detail::lex_shortest_path(g, Layer::kAlt, g.node_index(tail_alt),
                                              g.node_index(head_alt));
  if (path.empty()) {
    throw Error(ErrorCode::kUnreachable,
                "no alt-layer detour for rail edge " + std::to_string(rail.id));
  }
  return to_edge_ids(g, path);
}

}  // namespace

RoutePair preselect_routes(const MobilityGraph& g, const TravelRequest& request) {
  RoutePair pair;
  pair.origin = request.origin;
  pair.destination = request.destination;

  const int oi = g.node_index(request.origin);
  const int di = g.node_index(request.destination);
  const auto alt_path = detail::lex_shortest_path(g, Layer::kAlt, oi, di);
  if (alt_path.empty()) {
    throw Error(ErrorCode::kUnreachable,
                "no alternative-layer path " + std::to_string(request.origin) + " -> " +
                    std::to_string(request.destination));
  }
  pair.alt_route = to_edge_ids(g, alt_path);

  const int o_rail = g.rail_node_of_base(g.node(request.origin).base_id);
  const int d_rail = g.rail_node_of_base(g.node(request.destination).base_id);
  if (o_rail >= 0 && d_rail >= 0) {
    const auto rail_path =
        detail::lex_shortest_path(g, Layer::kRail, g.node_index(o_rail), g.node_index(d_rail));
    if (!rail_path.empty()) {
      pair.rail_route.push_back(transfer_edge_id(g, request.origin, o_rail, true));
      for (int ei : rail_path) pair.rail_route.push_back(g.edges()[ei].id);
      pair.rail_route.push_back(transfer_edge_id(g, request.destination, d_rail, false));
      for (int ei : rail_path) {
        const int slot = g.rail_slot(g.edges()[ei].id);
        pair.detour[g.edges()[ei].id] = detour_for_slot(g, slot);
      }
    }
  }
  return pair;
}

RouteSet preselect_all(const MobilityGraph& g, const std::vector<TravelRequest>& requests) {
  RouteSet set;
  set.detour_by_slot.resize(g.num_rail_edges());
  for (int slot = 0; slot < g.num_rail_edges(); ++slot) {
    set.detour_by_slot[slot] = detour_for_slot(g, slot);
  }
  set.routes.reserve(requests.size());
  for (const auto& r : requests) set.routes.push_back(preselect_routes(g, r));
  return set;
}

std::pair<double, double> route_costs(const RoutePair& pair, const MobilityGraph& g,
                                      const NetworkState& state, const ServiceParams& params) {
  const double alt_rate = params.alt_unit_cost();
  const double rail_rate = params.rail_unit_cost();

  double u_alt = 0.0;
  for (int id : pair.alt_route) u_alt += g.edge(id).label.length_km * alt_rate;

  if (!pair.has_rail_option()) {
    return {std::numeric_limits<double>::infinity(), u_alt};
  }
  double u_rail = 0.0;
  for (int id : pair.rail_route) {
    const Edge& e = g.edge(id);
    if (e.layer != Layer::kRail) continue;  // transfers are free
    if (state.connected(g, id)) {
      u_rail += e.label.length_km * rail_rate;
    } else {
      for (int det : pair.detour.at(id)) {
        u_rail += g.edge(det).label.length_km * alt_rate;
      }
    }
  }
  return {u_rail, u_alt};
}

double logit_split(double u_rail, double u_alt, double mu) {
  if (std::isinf(u_rail) && u_rail > 0) return 0.0;
  if (std::isinf(u_alt) && u_alt > 0) return 1.0;
  const double z = mu * (u_alt - u_rail);  // preference for rail
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

FlowField assign_flows(const MobilityGraph& g, const NetworkState& state,
                       const std::vector<TravelRequest>& demand, const RouteSet& routes,
                       const ServiceParams& params, double mu) {
  FlowField field;
  field.flow.assign(g.edges().size(), 0.0);
  field.unserved.assign(g.num_rail_edges(), 0.0);

  std::vector<double> rail_demand(g.num_rail_edges(), 0.0);
  for (std::size_t m = 0; m < demand.size(); ++m) {
    const TravelRequest& r = demand[m];
    const RoutePair& pair = routes.routes[m];
    const auto [u_rail, u_alt] = route_costs(pair, g, state, params);
    const double p = logit_split(u_rail, u_alt, mu);
    const double volume = static_cast<double>(r.trips);
    for (int id : pair.rail_route) {
      const int slot = g.rail_slot(id);
      if (slot >= 0) rail_demand[slot] += volume * p;
    }
    for (int id : pair.alt_route) {
      field.flow[g.edge_index(id)] += volume * (1.0 - p);
    }
  }
  for (int slot = 0; slot < g.num_rail_edges(); ++slot) {
    const Edge& e = g.edges()[g.rail_edge_indices()[slot]];
    const double cap = static_cast<double>(rail_capacity(params, state.s()[slot]));
    const double served = std::min(rail_demand[slot], cap);
    field.flow[g.edge_index(e.id)] = served;
    field.unserved[slot] = std::max(0.0, rail_demand[slot] - cap);
  }
  for (int slot = 0; slot < g.num_rail_edges(); ++slot) {
    const double spill = field.unserved[slot];
    if (spill <= 0.0) continue;
    for (int id : routes.detour_by_slot[slot]) {
      field.flow[g.edge_index(id)] += spill;
    }
  }
  return field;
}

FlowField assign_flows(const MobilityGraph& g, const NetworkState& state,
                       const std::vector<TravelRequest>& demand, const ServiceParams& params,
                       double mu) {
  return assign_flows(g, state, demand, preselect_all(g, demand), params, mu);
}

}  // namespace coinvest

#pragma once

#include <map>
#include <vector>

#include "coinvest/demand.hpp"
#include "coinvest/net_model.hpp"

namespace coinvest {

/// The two preselected routes of a request plus the alt-layer substitute
/// path for each rail edge on the train-prioritized route.
struct RoutePair {
  int origin = 0;
  int destination = 0;
  std::vector<int> rail_route;               // edge ids: transfer, rail..., transfer
  std::vector<int> alt_route;                // alt edge ids
  std::map<int, std::vector<int>> detour;    // rail edge id -> alt edge ids

  bool has_rail_option() const { return !rail_route.empty(); }
};

/// Routes for a whole request set, aligned by index, with the shared
/// per-rail-edge detour table.
struct RouteSet {
  std::vector<RoutePair> routes;
  std::vector<std::vector<int>> detour_by_slot;  // alt edge ids per rail slot
};

/// Shortest paths by length with ties broken toward the lexicographically
/// smallest edge-id sequence.
RoutePair preselect_routes(const MobilityGraph& graph, const TravelRequest& request);
RouteSet preselect_all(const MobilityGraph& graph, const std::vector<TravelRequest>& requests);

/// Generalized route costs (CHF) under the current rail layout: first the
/// train-prioritized route, then the alternative route.
std::pair<double, double> route_costs(const RoutePair& pair, const MobilityGraph& graph,
                                      const NetworkState& state, const ServiceParams& params);

/// Share of travelers choosing the train-prioritized route,
/// exp(-mu*uR) / (exp(-mu*uA) + exp(-mu*uR)), evaluated stably.
double logit_split(double u_rail, double u_alt, double mu);

/// Served flows per edge plus capacity spillover per rail edge.
struct FlowField {
  std::vector<double> flow;      // by edge index
  std::vector<double> unserved;  // by rail slot

  double flow_on(const MobilityGraph& graph, int edge_id) const {
    return flow[graph.edge_index(edge_id)];
  }
  double unserved_on(const MobilityGraph& graph, int rail_edge_id) const {
    return unserved[graph.rail_slot(rail_edge_id)];
  }
};

FlowField assign_flows(const MobilityGraph& graph, const NetworkState& state,
                       const std::vector<TravelRequest>& demand, const RouteSet& routes,
                       const ServiceParams& params, double mu);

/// Convenience overload that preselects routes internally.
FlowField assign_flows(const MobilityGraph& graph, const NetworkState& state,
                       const std::vector<TravelRequest>& demand, const ServiceParams& params,
                       double mu);

namespace detail {

/// Single-source shortest path lengths over one layer ("alt" or "rail").
/// `source`/`dist` use node indices; unreachable entries are +inf.
std::vector<double> layer_distances(const MobilityGraph& graph, Layer layer, int source_index,
                                    bool reverse);

/// Lexicographically smallest shortest path (edge indices) between two node
/// indices within a layer; empty if unreachable or source == target.
std::vector<int> lex_shortest_path(const MobilityGraph& graph, Layer layer, int source_index,
                                   int target_index);

}  // namespace detail

}  // namespace coinvest

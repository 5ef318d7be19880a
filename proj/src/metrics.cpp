#include "coinvest/metrics.hpp"

namespace coinvest {

double region_share(const Edge& edge, int region) {
  if (region == 0) return 1.0;
  switch (edge.region_class) {
    case RegionClass::kRegion1: return region == 1 ? 1.0 : 0.0;
    case RegionClass::kRegion2: return region == 2 ? 1.0 : 0.0;
    case RegionClass::kCrossing: return 0.5;
  }
  return 0.0;
}

double emissions(const FlowField& flows, const MobilityGraph& g, const ServiceParams& params,
                 int region) {
  double total = 0.0;
  for (int ei : g.rail_edge_indices()) {
    const Edge& e = g.edges()[ei];
    total += region_share(e, region) * params.rail_emission_per_km * e.label.length_km *
             flows.flow[ei];
  }
  for (int ei : g.alt_edge_indices()) {
    const Edge& e = g.edges()[ei];
    total += region_share(e, region) * params.alt_emission_per_km * e.label.length_km *
             flows.flow[ei];
  }
  return total;
}

double travel_cost(const FlowField& flows, const MobilityGraph& g, const ServiceParams& params,
                   int region) {
  double total = 0.0;
  for (int ei : g.rail_edge_indices()) {
    const Edge& e = g.edges()[ei];
    total += region_share(e, region) * e.label.length_km * flows.flow[ei] *
             params.rail_unit_cost();
  }
  for (int ei : g.alt_edge_indices()) {
    const Edge& e = g.edges()[ei];
    total += region_share(e, region) * e.label.length_km * flows.flow[ei] *
             params.alt_unit_cost();
  }
  return total;
}

double construction_cost(const DesignAction& action, const MobilityGraph& g,
                         const ServiceParams& params, int region) {
  double total = 0.0;
  for (const auto& [edge_id, built] : action.builds) {
    if (!built) continue;
    const Edge& e = g.edge(edge_id);
    total += region_share(e, region) * params.build_cost_per_km * e.label.length_km;
  }
  for (const auto& [edge_id, units] : action.upgrades) {
    if (units == 0) continue;
    const Edge& e = g.edge(edge_id);
    total += region_share(e, region) * params.frequency_cost_per_km * e.label.length_km * units;
  }
  return total;
}

double fare_revenue(const FlowField& flows, const MobilityGraph& g, const ServiceParams& params,
                    int region) {
  double total = 0.0;
  for (int ei : g.rail_edge_indices()) {
    const Edge& e = g.edges()[ei];
    total += region_share(e, region) * params.rail_fare_per_km * e.label.length_km *
             flows.flow[ei];
  }
  return total;
}

double profit(const FlowField& flows, const MobilityGraph& g, const ServiceParams& params,
              int region, const DesignAction& action) {
  return fare_revenue(flows, g, params, region) - construction_cost(action, g, params, region);
}

double stage_objective(const RegionMetrics& m, const Weights& w) {
  return -w.emission * m.emissions - w.travel_cost * m.travel_cost + w.profit * m.profit;
}

RegionMetrics region_metrics(const FlowField& flows, const MobilityGraph& g,
                             const ServiceParams& params, const Weights& weights, int region,
                             const DesignAction& action) {
  RegionMetrics m;
  m.emissions = emissions(flows, g, params, region);
  m.travel_cost = travel_cost(flows, g, params, region);
  m.profit = profit(flows, g, params, region, action);
  m.objective = stage_objective(m, weights);
  return m;
}

}  // namespace coinvest

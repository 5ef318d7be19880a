#pragma once

#include "coinvest/assign.hpp"
#include "coinvest/net_model.hpp"

namespace coinvest {

/// Per-region daily performance: emissions (kg), travel cost (CHF),
/// profitability (CHF) and the weighted stage objective (CHF).
struct RegionMetrics {
  double emissions = 0.0;
  double travel_cost = 0.0;
  double profit = 0.0;
  double objective = 0.0;
};

/// Attribution of an edge to a region: 1 inside it, 0 outside, and 0.5 for
/// region-crossing edges so that regional metrics sum to network totals.
double region_share(const Edge& edge, int region);

double emissions(const FlowField& flows, const MobilityGraph& graph,
                 const ServiceParams& params, int region);

double travel_cost(const FlowField& flows, const MobilityGraph& graph,
                   const ServiceParams& params, int region);

/// Construction spend of an action attributed to a region (crossing edges
/// half each); region 0 gives the whole-network cost.
double construction_cost(const DesignAction& action, const MobilityGraph& graph,
                         const ServiceParams& params, int region);

double fare_revenue(const FlowField& flows, const MobilityGraph& graph,
                    const ServiceParams& params, int region);

double profit(const FlowField& flows, const MobilityGraph& graph, const ServiceParams& params,
              int region, const DesignAction& action);

double stage_objective(const RegionMetrics& m, const Weights& w);

RegionMetrics region_metrics(const FlowField& flows, const MobilityGraph& graph,
                             const ServiceParams& params, const Weights& weights, int region,
                             const DesignAction& action);

}  // namespace coinvest

#pragma once

#include <vector>

#include "coinvest/assign.hpp"

namespace coinvest {

/// Exhaustively enumerated simple paths per request (edge ids), over alt,
/// transfer and in-service rail edges, up to a hop bound. Desk-scale only.
struct UEPathSet {
  std::vector<std::vector<std::vector<int>>> paths;  // [request][path][edge]
};

UEPathSet enumerate_ue_paths(const MobilityGraph& graph, const NetworkState& state,
                             const std::vector<TravelRequest>& demand, int hop_bound,
                             const ServiceParams& params);

/// Flow-dependent edge cost: BPR-congested alt edges, constant rail edges.
double ue_edge_cost(double flow, const Edge& edge, bool rail_available,
                    const ServiceParams& params);

struct UEOptions {
  int max_iterations = 5000;
  double gap_tolerance = 1e-7;
  int hop_bound = 8;
};

struct UEResult {
  std::vector<std::vector<double>> path_flows;  // aligned with UEPathSet
  std::vector<double> edge_flows;               // by edge index
  double gap = 0.0;          // relative equilibrium gap at unpenalized costs
  int iterations = 0;
  std::vector<double> objective_trace;  // Beckmann value per accepted step
};

/// Capacitated user equilibrium by projected descent on path flows
/// (quadratic penalty on rail capacities). Throws Infeasible when demand
/// cannot fit through the rail capacities it must cross.
UEResult solve_ue(const MobilityGraph& graph, const NetworkState& state,
                  const std::vector<TravelRequest>& demand, const ServiceParams& params,
                  const UEOptions& options = {});

/// Small self-contained instances used by `ue-check` and the acceptance
/// suite; every one of them must reach an equilibrium gap below 1e-3.
struct UEInstance {
  std::string name;
  MobilityGraph graph;
  NetworkState state;
  std::vector<TravelRequest> demand;
  ServiceParams params;
};

std::vector<UEInstance> bundled_ue_instances();

}  // namespace coinvest

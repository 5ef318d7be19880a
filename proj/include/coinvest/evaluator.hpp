#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "coinvest/assign.hpp"
#include "coinvest/metrics.hpp"

namespace coinvest {

/// Fused assignment+metrics evaluation for one demand snapshot.
///
/// The route split p_m depends only on rail connectivity X, while
/// frequencies S enter linearly through per-edge capacities. Results for a
/// given X are therefore cached (rail demand per edge plus alt-layer
/// aggregates), which makes frequency-only probes two orders of magnitude
/// cheaper than a full assignment. Agreement with the reference
/// assign_flows/metrics pipeline is covered by tests.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const MobilityGraph& graph, const ServiceParams& params,
                     const Weights& weights, double mu, const RouteSet& routes,
                     const std::vector<TravelRequest>& demand);

  struct RegionPayoffs {
    std::array<double, 2> emissions{};    // kg/day
    std::array<double, 2> travel_cost{};  // CHF/day
    std::array<double, 2> revenue{};      // CHF/day
  };

  RegionPayoffs operating_payoffs(std::span<const std::uint8_t> x, std::span<const int> s);
  RegionPayoffs operating_payoffs(const NetworkState& state) {
    return operating_payoffs(state.x(), state.s());
  }

  /// -w0*Je_i - w1*Jc_i + w2*(revenue_i - construction_i)
  double stage_objective_value(const RegionPayoffs& p, int region, double construction) const;

  const Weights& weights() const { return weights_; }
  const ServiceParams& params() const { return params_; }
  const MobilityGraph& graph() const { return graph_; }
  double mu() const { return mu_; }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct XEntry {
    std::vector<double> rail_demand;       // by rail slot
    std::array<double, 2> alt_emissions{};
    std::array<double, 2> alt_travel_cost{};
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::size_t h = 1469598103934665603ull;
      for (std::uint64_t w : k) {
        h ^= static_cast<std::size_t>(w);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  const XEntry& entry_for(std::span<const std::uint8_t> x);

  const MobilityGraph& graph_;
  ServiceParams params_;
  Weights weights_;
  double mu_;

  int num_slots_ = 0;
  std::vector<double> on_cost_;    // u_R contribution per slot when connected
  std::vector<double> det_cost_;   // u_R contribution per slot when unavailable
  std::vector<std::int64_t> capacity_step_;  // capacity per frequency unit
  // Per-slot, per-region coefficients for served and spilled passengers.
  std::vector<std::array<double, 2>> serve_emis_, serve_cost_, serve_rev_;
  std::vector<std::array<double, 2>> spill_emis_, spill_cost_;

  // Per-request data (rail-capable requests only, CSR layout).
  std::vector<double> volume_;
  std::vector<double> alt_cost_;  // u_A
  std::vector<std::array<double, 2>> alt_emis_coef_, alt_cost_coef_;  // per pax on alt route
  std::vector<int> route_offset_;
  std::vector<int> route_slots_;
  // Requests with no rail option contribute constants.
  std::array<double, 2> base_emissions_{};
  std::array<double, 2> base_travel_cost_{};

  std::unordered_map<std::vector<std::uint64_t>, XEntry, KeyHash> cache_;
  std::vector<std::uint64_t> key_scratch_;
  std::size_t max_cache_entries_ = 60000;
};

}  // namespace coinvest

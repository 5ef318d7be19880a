#include "coinvest/evaluator.hpp"

#include <cmath>

namespace coinvest {

ObjectiveEvaluator::ObjectiveEvaluator(const MobilityGraph& graph, const ServiceParams& params,
                                       const Weights& weights, double mu, const RouteSet& routes,
                                       const std::vector<TravelRequest>& demand)
    : graph_(graph), params_(params), weights_(weights), mu_(mu) {
  num_slots_ = graph.num_rail_edges();
  const double alt_rate = params.alt_unit_cost();
  const double rail_rate = params.rail_unit_cost();

  on_cost_.assign(num_slots_, 0.0);
  det_cost_.assign(num_slots_, 0.0);
  capacity_step_.assign(num_slots_, params.capacity_per_frequency);
  serve_emis_.assign(num_slots_, {});
  serve_cost_.assign(num_slots_, {});
  serve_rev_.assign(num_slots_, {});
  spill_emis_.assign(num_slots_, {});
  spill_cost_.assign(num_slots_, {});

  for (int slot = 0; slot < num_slots_; ++slot) {
    const Edge& e = graph.edges()[graph.rail_edge_indices()[slot]];
    on_cost_[slot] = e.label.length_km * rail_rate;
    for (int r = 0; r < 2; ++r) {
      const double share = region_share(e, r + 1);
      serve_emis_[slot][r] = share * params.rail_emission_per_km * e.label.length_km;
      serve_cost_[slot][r] = share * rail_rate * e.label.length_km;
      serve_rev_[slot][r] = share * params.rail_fare_per_km * e.label.length_km;
    }
    for (int det_id : routes.detour_by_slot[slot]) {
      const Edge& d = graph.edge(det_id);
      det_cost_[slot] += d.label.length_km * alt_rate;
      for (int r = 0; r < 2; ++r) {
        const double share = region_share(d, r + 1);
        spill_emis_[slot][r] += share * params.alt_emission_per_km * d.label.length_km;
        spill_cost_[slot][r] += share * alt_rate * d.label.length_km;
      }
    }
  }

  route_offset_.push_back(0);
  for (std::size_t m = 0; m < demand.size(); ++m) {
    const TravelRequest& req = demand[m];
    const RoutePair& pair = routes.routes[m];
    const double volume = static_cast<double>(req.trips);
    std::array<double, 2> ae{}, ac{};
    double u_alt = 0.0;
    for (int id : pair.alt_route) {
      const Edge& e = graph.edge(id);
      u_alt += e.label.length_km * alt_rate;
      for (int r = 0; r < 2; ++r) {
        const double share = region_share(e, r + 1);
        ae[r] += share * params.alt_emission_per_km * e.label.length_km;
        ac[r] += share * alt_rate * e.label.length_km;
      }
    }
    if (!pair.has_rail_option()) {
      for (int r = 0; r < 2; ++r) {
        base_emissions_[r] += volume * ae[r];
        base_travel_cost_[r] += volume * ac[r];
      }
      continue;
    }
    volume_.push_back(volume);
    alt_cost_.push_back(u_alt);
    alt_emis_coef_.push_back(ae);
    alt_cost_coef_.push_back(ac);
    for (int id : pair.rail_route) {
      const int slot = graph.rail_slot(id);
      if (slot >= 0) route_slots_.push_back(slot);
    }
    route_offset_.push_back(static_cast<int>(route_slots_.size()));
  }
  key_scratch_.assign((num_slots_ + 63) / 64, 0);
}

const ObjectiveEvaluator::XEntry& ObjectiveEvaluator::entry_for(
    std::span<const std::uint8_t> x) {
  for (auto& w : key_scratch_) w = 0;
  for (int slot = 0; slot < num_slots_; ++slot) {
    if (x[slot]) key_scratch_[slot >> 6] |= (UINT64_C(1) << (slot & 63));
  }
  auto it = cache_.find(key_scratch_);
  if (it != cache_.end()) return it->second;
  if (cache_.size() >= max_cache_entries_) cache_.clear();

  XEntry entry;
  entry.rail_demand.assign(num_slots_, 0.0);
  const int num_requests = static_cast<int>(volume_.size());
  for (int m = 0; m < num_requests; ++m) {
    double u_rail = 0.0;
    for (int k = route_offset_[m]; k < route_offset_[m + 1]; ++k) {
      const int slot = route_slots_[k];
      u_rail += x[slot] ? on_cost_[slot] : det_cost_[slot];
    }
    const double p = logit_split(u_rail, alt_cost_[m], mu_);
    const double on_rail = volume_[m] * p;
    const double off_rail = volume_[m] - on_rail;
    for (int k = route_offset_[m]; k < route_offset_[m + 1]; ++k) {
      entry.rail_demand[route_slots_[k]] += on_rail;
    }
    for (int r = 0; r < 2; ++r) {
      entry.alt_emissions[r] += off_rail * alt_emis_coef_[m][r];
      entry.alt_travel_cost[r] += off_rail * alt_cost_coef_[m][r];
    }
  }
  auto [pos, inserted] = cache_.emplace(key_scratch_, std::move(entry));
  return pos->second;
}

ObjectiveEvaluator::RegionPayoffs ObjectiveEvaluator::operating_payoffs(
    std::span<const std::uint8_t> x, std::span<const int> s) {
  const XEntry& entry = entry_for(x);
  RegionPayoffs out;
  for (int r = 0; r < 2; ++r) {
    out.emissions[r] = base_emissions_[r] + entry.alt_emissions[r];
    out.travel_cost[r] = base_travel_cost_[r] + entry.alt_travel_cost[r];
  }
  for (int slot = 0; slot < num_slots_; ++slot) {
    const double demand_here = entry.rail_demand[slot];
    const double cap = static_cast<double>(capacity_step_[slot] * s[slot]);
    const double served = demand_here < cap ? demand_here : cap;
    const double spill = demand_here - served;
    for (int r = 0; r < 2; ++r) {
      out.emissions[r] += served * serve_emis_[slot][r] + spill * spill_emis_[slot][r];
      out.travel_cost[r] += served * serve_cost_[slot][r] + spill * spill_cost_[slot][r];
      out.revenue[r] += served * serve_rev_[slot][r];
    }
  }
  return out;
}

double ObjectiveEvaluator::stage_objective_value(const RegionPayoffs& p, int region,
                                                 double construction) const {
  const int r = region - 1;
  return -weights_.emission * p.emissions[r] - weights_.travel_cost * p.travel_cost[r] +
         weights_.profit * (p.revenue[r] - construction);
}

}  // namespace coinvest

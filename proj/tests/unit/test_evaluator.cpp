#include <doctest.h>

#include <random>

#include "coinvest/evaluator.hpp"
#include "support/toys.hpp"

using namespace coinvest;

TEST_CASE("fused evaluator agrees with the reference assignment pipeline") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto toy = testing::make_toy(seed);
    const auto demand = demand_at_year(toy.demand, 1);
    const RouteSet routes = preselect_all(toy.graph, demand);
    ObjectiveEvaluator eval(toy.graph, toy.params, toy.weights, toy.mu, routes, demand);

    std::mt19937_64 rng(seed * 31 + 7);
    for (int trial = 0; trial < 8; ++trial) {
      DesignAction act;
      for (int id : toy.graph.all_rail_edge_ids()) {
        if (rng() & 1) {
          act.set_build(id);
          act.add_frequency(id, static_cast<int>(rng() % (toy.params.max_frequency + 1)));
        }
      }
      const NetworkState st =
          apply_action(toy.graph, NetworkState::initial(toy.graph), act, toy.params);
      const auto pay = eval.operating_payoffs(st);

      const FlowField flows = assign_flows(toy.graph, st, demand, routes, toy.params, toy.mu);
      for (int region = 1; region <= 2; ++region) {
        CHECK(pay.emissions[region - 1] ==
              doctest::Approx(emissions(flows, toy.graph, toy.params, region)).epsilon(1e-9));
        CHECK(pay.travel_cost[region - 1] ==
              doctest::Approx(travel_cost(flows, toy.graph, toy.params, region)).epsilon(1e-9));
        CHECK(pay.revenue[region - 1] ==
              doctest::Approx(fare_revenue(flows, toy.graph, toy.params, region)).epsilon(1e-9));
        const double construction = construction_cost(act, toy.graph, toy.params, region);
        const RegionMetrics ref =
            region_metrics(flows, toy.graph, toy.params, toy.weights, region, act);
        CHECK(eval.stage_objective_value(pay, region, construction) ==
              doctest::Approx(ref.objective).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("evaluator caching returns identical payoffs on repeat queries") {
  const auto toy = testing::make_toy(2);
  const auto demand = demand_at_year(toy.demand, 1);
  const RouteSet routes = preselect_all(toy.graph, demand);
  ObjectiveEvaluator eval(toy.graph, toy.params, toy.weights, toy.mu, routes, demand);

  DesignAction act;
  act.set_build(toy.graph.all_rail_edge_ids().front());
  act.add_frequency(toy.graph.all_rail_edge_ids().front(), 1);
  const NetworkState st =
      apply_action(toy.graph, NetworkState::initial(toy.graph), act, toy.params);

  const auto first = eval.operating_payoffs(st);
  const auto second = eval.operating_payoffs(st);
  for (int r = 0; r < 2; ++r) {
    CHECK(first.emissions[r] == second.emissions[r]);
    CHECK(first.travel_cost[r] == second.travel_cost[r]);
    CHECK(first.revenue[r] == second.revenue[r]);
  }
  CHECK(eval.cache_size() == 1);
}

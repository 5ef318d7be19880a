#include <doctest.h>

#include <cmath>

#include "coinvest/assign.hpp"
#include "support/toys.hpp"

using namespace coinvest;

namespace {

/// Diamond with two equal-length two-hop routes; exercises the tie-break.
MobilityGraph diamond_graph() {
  GraphBuilder b;
  b.add_node(1, 1, false, 0, 0).add_node(2, 1, false, 1, 1);
  b.add_node(3, 1, false, 1, -1).add_node(4, 2, false, 2, 0);
  b.add_edge(1, 1, 2, 1.0, false).add_edge(2, 1, 3, 1.0, false);
  b.add_edge(3, 2, 4, 1.0, false).add_edge(4, 3, 4, 1.0, false);
  b.add_edge(5, 4, 1, 3.0, false);  // return edge for strong connectivity
  b.add_edge(6, 2, 1, 1.0, false).add_edge(7, 3, 1, 1.0, false);
  b.add_edge(8, 4, 2, 1.0, false).add_edge(9, 4, 3, 1.0, false);
  return b.build();
}

}  // namespace

TEST_CASE("one-hop alternative route") {
  GraphBuilder b;
  b.add_node(1, 1, false, 0, 0).add_node(2, 1, false, 5, 0);
  b.add_edge(1, 1, 2, 5.0, false).add_edge(2, 2, 1, 5.0, false);
  const MobilityGraph g = b.build();
  const RoutePair pair = preselect_routes(g, {1, 2, 10, TripType::kIntra1});
  CHECK(pair.alt_route == std::vector<int>{1});
  CHECK_FALSE(pair.has_rail_option());
}

TEST_CASE("equal-length routes break ties lexicographically") {
  const MobilityGraph g = diamond_graph();
  const RoutePair pair = preselect_routes(g, {1, 4, 10, TripType::kInter1});
  CHECK(pair.alt_route == std::vector<int>{1, 3});  // smallest edge-id sequence
  const RoutePair again = preselect_routes(g, {1, 4, 10, TripType::kInter1});
  CHECK(pair.alt_route == again.alt_route);
}

TEST_CASE("routes match the brute-force oracle on Sioux Falls and toys") {
  const MobilityGraph sioux = build_sioux_falls();
  const RoutePair pair = preselect_routes(sioux, {1, 24, 10, TripType::kInter1});
  const auto oracle = testing::brute_shortest_path(sioux, Layer::kAlt, 1, 24);
  CHECK(pair.alt_route == oracle);
  // The rail route mirrors the alt-layer geometry: same total length.
  double alt_len = 0.0, rail_len = 0.0;
  for (int id : pair.alt_route) alt_len += sioux.edge(id).label.length_km;
  for (int id : pair.rail_route) rail_len += sioux.edge(id).label.length_km;
  CHECK(rail_len == doctest::Approx(alt_len));

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto toy = testing::make_toy(seed);
    const auto& nodes = toy.graph.alt_node_indices();
    const int from = toy.graph.nodes()[nodes.front()].id;
    const int to = toy.graph.nodes()[nodes.back()].id;
    const RoutePair p = preselect_routes(toy.graph, {from, to, 10, TripType::kInter1});
    CHECK(p.alt_route == testing::brute_shortest_path(toy.graph, Layer::kAlt, from, to));
  }
}

TEST_CASE("route costs under full, partial and no rail availability") {
  ServiceParams params;
  GraphBuilder b;
  b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 10, 0);
  b.add_edge(1, 1, 2, 10.0, true).add_edge(2, 2, 1, 10.0, true);
  const MobilityGraph g = b.build(params);
  const RoutePair pair = preselect_routes(g, {1, 2, 10, TripType::kIntra1});
  REQUIRE(pair.has_rail_option());

  NetworkState off = NetworkState::initial(g);
  SUBCASE("rail available: published unit costs") {
    DesignAction a;
    const int rail_id = pair.rail_route[1];
    a.set_build(rail_id);
    a.add_frequency(rail_id, 1);
    const NetworkState on = apply_action(g, off, a, params);
    const auto [u_rail, u_alt] = route_costs(pair, g, on, params);
    CHECK(u_rail == doctest::Approx(4.5));   // 10*(30/150+0.25)
    CHECK(u_alt == doctest::Approx(19.5));   // 10*(30/100+1.65)
  }
  SUBCASE("no rail anywhere: cost comes entirely from detours") {
    const auto [u_rail, u_alt] = route_costs(pair, g, off, params);
    double detour_cost = 0.0;
    for (const auto& [rail_id, det] : pair.detour) {
      for (int id : det) detour_cost += g.edge(id).label.length_km * params.alt_unit_cost();
    }
    CHECK(u_rail == doctest::Approx(detour_cost));
    CHECK(u_alt == doctest::Approx(19.5));
  }
}

TEST_CASE("logit split") {
  CHECK(logit_split(1.0, 1.0, 0.7) == 0.5);  // exact symmetry
  // High-precision reference for mu=1, uR=1, uA=2.
  CHECK(logit_split(1.0, 2.0, 1.0) == doctest::Approx(0.7310585786300049).epsilon(1e-12));
  SUBCASE("graceful saturation without NaN") {
    const double p = logit_split(1e6 + 1.0, 1.0, 1.0);
    CHECK(p == 0.0);
    CHECK_FALSE(std::isnan(p));
    CHECK(logit_split(1.0, 1e6 + 1.0, 1.0) == 1.0);
  }
  SUBCASE("monotone in the rail cost") {
    double prev = 1.0;
    for (double u = 0.0; u <= 50.0; u += 0.5) {
      const double p = logit_split(u, 10.0, 0.1);
      CHECK(p < prev);
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      prev = p;
    }
  }
}

TEST_CASE("assign_flows implements the capped rail branch with spillover") {
  ServiceParams params;
  params.capacity_per_frequency = 50;
  GraphBuilder b;
  b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 10, 0);
  b.add_edge(1, 1, 2, 10.0, true).add_edge(2, 2, 1, 10.0, true);
  const MobilityGraph g = b.build(params);

  std::vector<TravelRequest> demand{{1, 2, 100, TripType::kIntra1}};
  const RouteSet routes = preselect_all(g, demand);
  const int rail_id = routes.routes[0].rail_route[1];

  DesignAction a;
  a.set_build(rail_id);
  a.add_frequency(rail_id, 1);  // capacity 50
  const NetworkState st = apply_action(g, NetworkState::initial(g), a, params);

  const double mu = 0.1;
  // Independent recomputation of the split from first principles.
  const double u_rail = 10.0 * (30.0 / 150.0 + 0.25);
  const double u_alt = 10.0 * (30.0 / 100.0 + 1.65);
  const double p = std::exp(-mu * u_rail) / (std::exp(-mu * u_alt) + std::exp(-mu * u_rail));
  REQUIRE(100.0 * p > 50.0);

  const FlowField flows = assign_flows(g, st, demand, routes, params, mu);
  CHECK(flows.flow_on(g, rail_id) == doctest::Approx(50.0));
  CHECK(flows.unserved_on(g, rail_id) == doctest::Approx(100.0 * p - 50.0));
  // Alt edge carries the alt-route share plus the detoured spillover.
  CHECK(flows.flow_on(g, 1) == doctest::Approx(100.0 * (1 - p) + (100.0 * p - 50.0)));
}

TEST_CASE("assign_flows trivial cases") {
  const auto toy = testing::make_toy(3);
  const NetworkState st = NetworkState::initial(toy.graph);
  SUBCASE("zero demand gives zero flow") {
    std::vector<TravelRequest> none;
    const FlowField flows = assign_flows(toy.graph, st, none, toy.params, toy.mu);
    for (double f : flows.flow) CHECK(f == 0.0);
  }
  SUBCASE("uncapacitated rail carries the full logit share") {
    ServiceParams params = toy.params;
    params.capacity_per_frequency = 1 << 20;
    params.max_frequency = 15;
    DesignAction all;
    for (int id : toy.graph.all_rail_edge_ids()) {
      all.set_build(id);
      all.add_frequency(id, 15);
    }
    const NetworkState huge = apply_action(toy.graph, st, all, params);
    const auto demand = demand_at_year(toy.demand, 1);
    const RouteSet routes = preselect_all(toy.graph, demand);
    const FlowField flows = assign_flows(toy.graph, huge, demand, routes, params, toy.mu);
    for (double d : flows.unserved) CHECK(d == 0.0);
    // Rail demand equals the exact sum of logit shares per edge.
    std::vector<double> expect(toy.graph.num_rail_edges(), 0.0);
    for (std::size_t m = 0; m < demand.size(); ++m) {
      const auto [ur, ua] = route_costs(routes.routes[m], toy.graph, huge, params);
      const double p = logit_split(ur, ua, toy.mu);
      for (int id : routes.routes[m].rail_route) {
        const int slot = toy.graph.rail_slot(id);
        if (slot >= 0) expect[slot] += demand[m].trips * p;
      }
    }
    for (int slot = 0; slot < toy.graph.num_rail_edges(); ++slot) {
      CHECK(flows.flow[toy.graph.rail_edge_indices()[slot]] ==
            doctest::Approx(expect[slot]).epsilon(1e-12));
    }
  }
}

TEST_CASE("person conservation on an instance with disjoint single-edge routes") {
  ServiceParams params;
  params.capacity_per_frequency = 40;
  GraphBuilder b;
  // Three separate OD pairs, each with its own parallel corridor.
  int id = 0;
  for (int k = 0; k < 3; ++k) {
    const int u = 2 * k + 1, v = 2 * k + 2;
    b.add_node(u, 1, true, k * 10.0, 0).add_node(v, 1, true, k * 10.0 + 5, 0);
    b.add_edge(++id, u, v, 5.0, true);
    b.add_edge(++id, v, u, 5.0, true);
  }
  // Stitch components together so the alt layer is strongly connected.
  b.add_edge(++id, 2, 3, 1.0, false).add_edge(++id, 3, 2, 1.0, false);
  b.add_edge(++id, 4, 5, 1.0, false).add_edge(++id, 5, 4, 1.0, false);
  b.add_edge(++id, 6, 1, 1.0, false).add_edge(++id, 1, 6, 1.0, false);
  const MobilityGraph g = b.build(params);

  std::vector<TravelRequest> demand{{1, 2, 100, TripType::kIntra1},
                                    {3, 4, 60, TripType::kIntra1},
                                    {5, 6, 90, TripType::kIntra1}};
  const RouteSet routes = preselect_all(g, demand);
  DesignAction act;
  for (int rail : g.all_rail_edge_ids()) {
    act.set_build(rail);
    act.add_frequency(rail, 1);
  }
  const NetworkState st = apply_action(g, NetworkState::initial(g), act, params);
  const FlowField flows = assign_flows(g, st, demand, routes, params, 0.1);

  for (std::size_t m = 0; m < demand.size(); ++m) {
    const auto& pair = routes.routes[m];
    int rail_id = -1;
    for (int e : pair.rail_route) {
      if (g.rail_slot(e) >= 0) rail_id = e;
    }
    REQUIRE(pair.alt_route.size() == 1);
    const double served = flows.flow_on(g, rail_id);
    const double spill = flows.unserved_on(g, rail_id);
    const double direct_alt = flows.flow_on(g, pair.alt_route[0]) - spill;
    CHECK(served + spill + direct_alt == doctest::Approx(demand[m].trips));
  }
}

TEST_CASE("capacity feasibility and availability monotonicity") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto toy = testing::make_toy(seed);
    const auto demand = demand_at_year(toy.demand, 1);
    const RouteSet routes = preselect_all(toy.graph, demand);
    std::mt19937_64 rng(seed * 977);

    // Random feasible state.
    DesignAction act;
    for (int id : toy.graph.all_rail_edge_ids()) {
      if (rng() & 1) {
        act.set_build(id);
        act.add_frequency(id, static_cast<int>(rng() % (toy.params.max_frequency + 1)));
      }
    }
    const NetworkState st =
        apply_action(toy.graph, NetworkState::initial(toy.graph), act, toy.params);
    const FlowField flows = assign_flows(toy.graph, st, demand, routes, toy.params, toy.mu);
    for (int slot = 0; slot < toy.graph.num_rail_edges(); ++slot) {
      const double cap = static_cast<double>(rail_capacity(toy.params, st.s()[slot]));
      CHECK(flows.flow[toy.graph.rail_edge_indices()[slot]] <= cap + 1e-9);
      CHECK(flows.unserved[slot] >= 0.0);
    }

    // Turning a rail edge on never increases any request's rail cost.
    // (Euclidean lengths make every detour at least as long as the edge.)
    for (std::size_t m = 0; m < routes.routes.size(); ++m) {
      const auto& pair = routes.routes[m];
      if (!pair.has_rail_option()) continue;
      const auto [before, alt_before] = route_costs(pair, toy.graph, st, toy.params);
      for (int id : pair.rail_route) {
        const int slot = toy.graph.rail_slot(id);
        if (slot < 0 || st.x()[slot]) continue;
        DesignAction extra;
        extra.set_build(id);
        const NetworkState on = apply_action(toy.graph, st, extra, toy.params);
        const auto [after, alt_after] = route_costs(pair, toy.graph, on, toy.params);
        CHECK(after <= before + 1e-9);
        CHECK(alt_after == alt_before);
        break;
      }
    }
  }
}

#include <doctest.h>

#include <functional>
#include <memory>
#include <random>

#include "coinvest/evaluator.hpp"
#include "coinvest/optimizer.hpp"
#include "support/toys.hpp"

using namespace coinvest;

namespace {

/// Test-side exhaustive enumerator, written independently of the production
/// DFS: iterates every (build, frequency) combination recursively.
void enumerate_oracle(const MobilityGraph& g, const ServiceParams& params,
                      const std::vector<int>& edges, const NetworkState& base, double budget,
                      DesignAction& current, std::size_t i,
                      const std::function<void(const DesignAction&)>& fn) {
  if (i == edges.size()) {
    fn(current);
    return;
  }
  const int id = edges[i];
  const int slot = g.rail_slot(id);
  const double len = g.edge(id).label.length_km;
  const bool connected = base.x()[slot] != 0;
  const int headroom = params.max_frequency - base.s()[slot];
  for (int build = 0; build <= (connected ? 0 : 1); ++build) {
    for (int s = 0; s <= headroom; ++s) {
      if (!connected && build == 0 && s > 0) continue;  // big-M coupling
      const double cost = len * (build * params.build_cost_per_km +
                                 s * params.frequency_cost_per_km);
      DesignAction saved = current;
      if (build) current.set_build(id);
      if (s > 0) current.add_frequency(id, s);
      (void)cost;
      if (action_cost(current, g, params) <= budget) {
        enumerate_oracle(g, params, edges, base, budget, current, i + 1, fn);
      }
      current = saved;
    }
  }
}

struct ProblemFixture {
  testing::ToyInstance toy;
  std::vector<TravelRequest> demand;
  RouteSet routes;
  std::unique_ptr<ObjectiveEvaluator> eval;
  DesignProblem problem;

  explicit ProblemFixture(std::uint64_t seed, double budget_scale = 1.0) {
    toy = testing::make_toy(seed);
    demand = demand_at_year(toy.demand, 1);
    routes = preselect_all(toy.graph, demand);
    eval = std::make_unique<ObjectiveEvaluator>(toy.graph, toy.params, toy.weights, toy.mu,
                                                routes, demand);
    problem.edge_set = toy.graph.all_rail_edge_ids();
    problem.budget = toy.budget1 * budget_scale;
    problem.base_state = NetworkState::initial(toy.graph);
    problem.exact_frequency_cap = toy.params.max_frequency;
    auto* ev = eval.get();
    const auto* graph = &toy.graph;
    const auto params = toy.params;
    problem.objective = [ev, graph, params](const DesignAction& a) {
      const NetworkState st =
          apply_action(*graph, NetworkState::initial(*graph), a, params);
      const auto pay = ev->operating_payoffs(st);
      const double cons = construction_cost(a, *graph, params, 0);
      return ev->stage_objective_value(pay, 1, 0.0) + ev->stage_objective_value(pay, 2, 0.0) -
             cons;
    };
  }
};

}  // namespace

TEST_CASE("action_cost arithmetic") {
  ServiceParams params;
  GraphBuilder b;
  b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 2, 0).add_node(3, 1, true, 3, 0);
  b.add_edge(1, 1, 2, 2.0, true).add_edge(2, 2, 3, 1.0, true).add_edge(3, 3, 1, 1.0, true);
  const MobilityGraph g = b.build(params);
  const auto rail = g.all_rail_edge_ids();

  CHECK(action_cost(DesignAction{}, g, params) == 0.0);

  DesignAction one;
  one.set_build(rail[0]);  // the 2 km edge
  one.add_frequency(rail[0], 2);
  CHECK(action_cost(one, g, params) == doctest::Approx(1273.6));

  DesignAction two;
  two.set_build(rail[1]);
  two.set_build(rail[2]);
  CHECK(action_cost(two, g, params) == doctest::Approx(1148.0));
}

TEST_CASE("solve_exact matches exhaustive enumeration") {
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ProblemFixture fx(seed);
    const SolveResult got = solve_exact(fx.problem, fx.toy.graph, fx.toy.params);

    double best = 0.0;
    bool first = true;
    DesignAction best_action;
    DesignAction scratch;
    enumerate_oracle(fx.toy.graph, fx.toy.params, fx.problem.edge_set, fx.problem.base_state,
                     fx.problem.budget, scratch, 0, [&](const DesignAction& a) {
                       const double v = fx.problem.objective(a);
                       if (first || v > best) {
                         best = v;
                         best_action = a.normalized();
                         first = false;
                       }
                     });
    CHECK(got.objective == doctest::Approx(best).epsilon(1e-12));
    if (!got.action.empty()) ++nontrivial;
    CHECK(action_cost(got.action, fx.toy.graph, fx.toy.params) <= fx.problem.budget + 1e-9);
  }
  CHECK(nontrivial >= 3);  // the seeds must exercise real builds
}

TEST_CASE("budget that covers one of two candidate edges picks the better one") {
  // Two parallel OD corridors with different demand; the budget affords
  // exactly one build, so the solver must take the higher-gain edge.
  ServiceParams params;
  params.max_frequency = 2;
  params.capacity_per_frequency = 900;
  GraphBuilder b;
  b.add_node(1, 1, true, 0, 0).add_node(2, 1, true, 6, 0);
  b.add_node(3, 2, true, 0, 5).add_node(4, 2, true, 6, 5);
  b.add_edge(1, 1, 2, 6.0, true).add_edge(2, 2, 1, 6.0, false);
  b.add_edge(3, 3, 4, 6.0, true).add_edge(4, 4, 3, 6.0, false);
  b.add_edge(5, 2, 4, 1.0, false).add_edge(6, 4, 2, 1.0, false);
  b.add_edge(7, 1, 3, 1.0, false).add_edge(8, 3, 1, 1.0, false);
  const MobilityGraph g = b.build(params);
  const std::vector<TravelRequest> demand{{1, 2, 300, TripType::kIntra1},
                                          {3, 4, 800, TripType::kIntra2}};
  const RouteSet routes = preselect_all(g, demand);
  ObjectiveEvaluator eval(g, params, Weights{}, 0.1, routes, demand);

  DesignProblem problem;
  problem.edge_set = g.all_rail_edge_ids();
  REQUIRE(problem.edge_set.size() == 2);
  problem.base_state = NetworkState::initial(g);
  // One build plus a frequency unit costs 6*(574+31.4) = 3632.4.
  problem.budget = 4000.0;
  problem.objective = [&](const DesignAction& a) {
    const NetworkState st = apply_action(g, NetworkState::initial(g), a, params);
    const auto pay = eval.operating_payoffs(st);
    return eval.stage_objective_value(pay, 1, 0.0) + eval.stage_objective_value(pay, 2, 0.0) -
           construction_cost(a, g, params, 0);
  };
  const SolveResult got = solve_exact(problem, g, params);
  // The 800-trip corridor dominates; its rail edge is choice number two.
  const int busy_edge = g.authority_rail_edges(2).front();
  REQUIRE_FALSE(got.action.empty());
  CHECK(got.action.builds.count(busy_edge) == 1);
  CHECK(got.action.builds.size() == 1);
  CHECK(got.action.upgrades.at(busy_edge) >= 1);
  CHECK(action_cost(got.action, g, params) <= problem.budget);

  SUBCASE("a single profitable edge is built at its best frequency") {
    problem.budget = 4000.0;
    std::vector<int> only{busy_edge};
    problem.edge_set = only;
    const SolveResult solo = solve_exact(problem, g, params);
    REQUIRE(solo.action.builds.count(busy_edge) == 1);
    // Full enumeration over the frequency choices confirms the pick.
    double best = -1e300;
    int best_s = -1;
    for (int s = 0; s <= params.max_frequency; ++s) {
      DesignAction a;
      a.set_build(busy_edge);
      if (s > 0) a.add_frequency(busy_edge, s);
      if (action_cost(a, g, params) > problem.budget) break;
      const double v = problem.objective(a);
      if (v > best) {
        best = v;
        best_s = s;
      }
    }
    int got_s = 0;
    if (auto it = solo.action.upgrades.find(busy_edge); it != solo.action.upgrades.end()) {
      got_s = it->second;
    }
    CHECK(got_s == best_s);
    CHECK(solo.objective == doctest::Approx(best));
  }
}

TEST_CASE("solve_exact with zero budget returns the do-nothing action") {
  ProblemFixture fx(4);
  fx.problem.budget = 0.0;
  const SolveResult got = solve_exact(fx.problem, fx.toy.graph, fx.toy.params);
  CHECK(got.action.empty());
  CHECK(got.objective == doctest::Approx(fx.problem.objective(DesignAction{})));
}

TEST_CASE("solve_exact rejects oversized instances") {
  ProblemFixture fx(1);
  fx.problem.exact_edge_threshold = 2;
  if (fx.problem.edge_set.size() > 2) {
    CHECK_THROWS_AS(solve_exact(fx.problem, fx.toy.graph, fx.toy.params), Error);
    try {
      solve_exact(fx.problem, fx.toy.graph, fx.toy.params);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kTooLarge);
    }
  }
}

TEST_CASE("budget monotonicity of the exact value") {
  ProblemFixture fx(6);
  double prev = -1e300;
  for (double scale : {0.0, 0.3, 0.6, 1.0, 1.5}) {
    fx.problem.budget = fx.toy.budget1 * scale;
    const SolveResult got = solve_exact(fx.problem, fx.toy.graph, fx.toy.params);
    CHECK(got.objective >= prev - 1e-9);
    prev = got.objective;
  }
}

TEST_CASE("solve_local is deterministic, feasible and never beats exact") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ProblemFixture fx(seed);
    const SolveResult exact = solve_exact(fx.problem, fx.toy.graph, fx.toy.params);
    const SolveResult local_a = solve_local(fx.problem, fx.toy.graph, fx.toy.params, 99);
    const SolveResult local_b = solve_local(fx.problem, fx.toy.graph, fx.toy.params, 99);
    CHECK(local_a.action == local_b.action);
    CHECK(local_a.objective == local_b.objective);
    CHECK(local_a.objective <= exact.objective + 1e-9);
    CHECK(local_a.objective >= fx.problem.objective(DesignAction{}) - 1e-12);
    CHECK(action_cost(local_a.action, fx.toy.graph, fx.toy.params) <=
          fx.problem.budget + 1e-9);

    // Feasibility of the action structure itself.
    const NetworkState applied = apply_action(fx.toy.graph, fx.problem.base_state,
                                              local_a.action, fx.toy.params);
    CHECK(applied.year() == 1);
  }
}

TEST_CASE("solve_local with zero budget returns the empty action") {
  ProblemFixture fx(2);
  fx.problem.budget = 0.0;
  const SolveResult got = solve_local(fx.problem, fx.toy.graph, fx.toy.params, 1);
  CHECK(got.action.empty());
}

TEST_CASE("warm starts can only help") {
  ProblemFixture fx(8);
  const SolveResult plain = solve_local(fx.problem, fx.toy.graph, fx.toy.params, 5);
  LocalSearchOptions opts;
  opts.warm_start = &plain.action;
  const SolveResult warmed = solve_local(fx.problem, fx.toy.graph, fx.toy.params, 5, opts);
  CHECK(warmed.objective >= plain.objective - 1e-12);
}

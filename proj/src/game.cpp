#include "coinvest/game.hpp"

#include <algorithm>
#include <set>

namespace coinvest {

namespace {

constexpr std::uint64_t kStageTwoSeedSalt = 0x5132c0ffee77ull;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + salt;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

GameYear::GameYear(const MobilityGraph& graph, const ServiceParams& params,
                   const Weights& weights, double mu, const RouteSet& routes,
                   std::vector<TravelRequest> demand, SolverOptions options)
    : graph_(graph),
      params_(params),
      weights_(weights),
      mu_(mu),
      demand_(std::move(demand)),
      options_(options) {
  evaluator_ = std::make_unique<ObjectiveEvaluator>(graph, params, weights, mu, routes, demand_);
  const int slots = graph.num_rail_edges();
  build_cost_by_slot_.resize(slots);
  unit_cost_by_slot_.resize(slots);
  share_by_slot_.resize(slots);
  for (int slot = 0; slot < slots; ++slot) {
    const Edge& e = graph.edges()[graph.rail_edge_indices()[slot]];
    build_cost_by_slot_[slot] = params.build_cost_per_km * e.label.length_km;
    unit_cost_by_slot_[slot] = params.frequency_cost_per_km * e.label.length_km;
    share_by_slot_[slot] = {region_share(e, 1), region_share(e, 2)};
  }
  authority_edges_[0] = graph.authority_rail_edges(1);
  authority_edges_[1] = graph.authority_rail_edges(2);
  all_rail_edges_ = graph.all_rail_edge_ids();
  x_base_.resize(slots);
  x_eval_.resize(slots);
  s_base_.resize(slots);
  s_eval_.resize(slots);
}

DesignProblem GameYear::stage1_problem(int authority, const NetworkState& base,
                                       const DesignAction& opponent, double budget) {
  // Overlay the opponent's action once; candidate actions are applied on top.
  x_base_ = base.x();
  s_base_ = base.s();
  for (const auto& [id, b] : opponent.builds) {
    if (b) x_base_[graph_.rail_slot(id)] = 1;
  }
  for (const auto& [id, u] : opponent.upgrades) {
    s_base_[graph_.rail_slot(id)] += u;
  }

  DesignProblem problem;
  problem.edge_set = authority_edges_[authority - 1];
  problem.budget = budget;
  problem.base_state = base;
  problem.exact_edge_threshold = options_.exact_edge_threshold;
  problem.exact_frequency_cap = options_.exact_frequency_cap;
  problem.objective = [this, authority](const DesignAction& a) {
    x_eval_ = x_base_;
    s_eval_ = s_base_;
    double construction = 0.0;
    for (const auto& [id, b] : a.builds) {
      if (!b) continue;
      const int slot = graph_.rail_slot(id);
      x_eval_[slot] = 1;
      construction += build_cost_by_slot_[slot];
    }
    for (const auto& [id, u] : a.upgrades) {
      if (u == 0) continue;
      const int slot = graph_.rail_slot(id);
      s_eval_[slot] += u;
      construction += unit_cost_by_slot_[slot] * u;
    }
    const auto pay = evaluator_->operating_payoffs(x_eval_, s_eval_);
    return evaluator_->stage_objective_value(pay, authority, construction);
  };
  return problem;
}

DesignAction GameYear::best_response(int authority, const NetworkState& base,
                                     const DesignAction& opponent, double stage1_budget,
                                     const DesignAction* warm_start) {
  DesignProblem problem = stage1_problem(authority, base, opponent, stage1_budget);
  LocalSearchOptions opts;
  opts.restarts = options_.restarts;
  opts.warm_start = warm_start;
  const auto result = solve(problem, graph_, params_,
                            mix_seed(options_.seed, static_cast<std::uint64_t>(authority)), opts);
  return result.action.normalized();
}

double GameYear::authority_payoff(int authority, const NetworkState& state,
                                  const DesignAction& charged) {
  const auto pay = evaluator_->operating_payoffs(state);
  const double construction = construction_cost(charged, graph_, params_, authority);
  return evaluator_->stage_objective_value(pay, authority, construction);
}

StageOneResult GameYear::stage1_equilibrium(const NetworkState& base,
                                            const std::array<double, 2>& budgets,
                                            const std::array<double, 2>& betas) {
  StageOneResult result;
  std::array<DesignAction, 2> actions;
  std::set<std::pair<std::string, std::string>> seen;
  auto signature = [](const std::array<DesignAction, 2>& profile) {
    auto one = [](const DesignAction& a) {
      std::string s;
      for (const auto& [id, b] : a.builds) {
        if (b) s += "b" + std::to_string(id) + ";";
      }
      for (const auto& [id, u] : a.upgrades) {
        if (u > 0) s += "u" + std::to_string(id) + ":" + std::to_string(u) + ";";
      }
      return s;
    };
    return std::make_pair(one(profile[0]), one(profile[1]));
  };

  bool converged = false;
  int rounds = 0;
  seen.insert(signature(actions));
  while (rounds < options_.max_rounds) {
    ++rounds;
    const std::array<DesignAction, 2> prev = actions;
    for (int i = 1; i <= 2; ++i) {
      const DesignAction& opponent = actions[2 - i];  // index of the other authority
      const double budget = (1.0 - betas[i - 1]) * budgets[i - 1];
      actions[i - 1] = best_response(i, base, opponent, budget, &prev[i - 1]);
    }
    if (actions[0] == prev[0] && actions[1] == prev[1]) {
      converged = true;
      break;
    }
    if (!seen.insert(signature(actions)).second) {
      break;  // best-response cycle
    }
  }

  result.actions = actions;
  result.converged = converged;
  result.rounds = rounds;
  result.state_after = apply_action(graph_, base, combine(actions[0], actions[1]), params_);
  for (int i = 1; i <= 2; ++i) {
    result.payoffs[i - 1] = authority_payoff(i, result.state_after, actions[i - 1]);
  }
  return result;
}

bool GameYear::verify_equilibrium(const NetworkState& base,
                                  const std::array<DesignAction, 2>& profile,
                                  const std::array<double, 2>& budgets,
                                  const std::array<double, 2>& betas) {
  for (int i = 1; i <= 2; ++i) {
    const double budget = (1.0 - betas[i - 1]) * budgets[i - 1];
    DesignProblem problem = stage1_problem(i, base, profile[2 - i], budget);
    const double current = problem.objective(profile[i - 1]);
    bool improved = false;
    for_each_feasible_action(problem, graph_, params_, [&](const DesignAction& a) {
      if (!improved && problem.objective(a) > current) improved = true;
    });
    if (improved) return false;
  }
  return true;
}

StageTwoResult GameYear::stage2_coinvest(const NetworkState& base, const StageOneResult& stage1,
                                         const std::array<double, 2>& budgets,
                                         const std::array<double, 2>& betas) {
  StageTwoResult result;
  result.state_after = stage1.state_after;
  const double pooled = betas[0] * budgets[0] + betas[1] * budgets[1];
  const double total_budget = budgets[0] + budgets[1];
  result.cir = total_budget > 0 ? pooled / total_budget : 0.0;
  if (pooled <= 0.0) return result;

  const double stage1_total = stage1.payoffs[0] + stage1.payoffs[1];
  // The surplus must vanish for an empty joint action, so the collective
  // objective charges the full year's construction (stage 1 plus stage 2),
  // not just the co-investment itself.
  const double stage1_construction =
      construction_cost(stage1.actions[0], graph_, params_, 0) +
      construction_cost(stage1.actions[1], graph_, params_, 0);

  x_base_ = stage1.state_after.x();
  s_base_ = stage1.state_after.s();
  DesignProblem problem;
  problem.edge_set = all_rail_edges_;
  problem.budget = pooled;
  problem.base_state = stage1.state_after;
  problem.exact_edge_threshold = options_.exact_edge_threshold;
  problem.exact_frequency_cap = options_.exact_frequency_cap;
  problem.objective = [this, stage1_total, stage1_construction](const DesignAction& a) {
    x_eval_ = x_base_;
    s_eval_ = s_base_;
    std::array<double, 2> construction{};
    construction[0] = 0.5 * stage1_construction;
    construction[1] = 0.5 * stage1_construction;
    for (const auto& [id, b] : a.builds) {
      if (!b) continue;
      const int slot = graph_.rail_slot(id);
      x_eval_[slot] = 1;
      construction[0] += share_by_slot_[slot][0] * build_cost_by_slot_[slot];
      construction[1] += share_by_slot_[slot][1] * build_cost_by_slot_[slot];
    }
    for (const auto& [id, u] : a.upgrades) {
      if (u == 0) continue;
      const int slot = graph_.rail_slot(id);
      s_eval_[slot] += u;
      construction[0] += share_by_slot_[slot][0] * unit_cost_by_slot_[slot] * u;
      construction[1] += share_by_slot_[slot][1] * unit_cost_by_slot_[slot] * u;
    }
    const auto pay = evaluator_->operating_payoffs(x_eval_, s_eval_);
    return evaluator_->stage_objective_value(pay, 1, construction[0]) +
           evaluator_->stage_objective_value(pay, 2, construction[1]) - stage1_total;
  };

  LocalSearchOptions opts;
  opts.restarts = options_.restarts;
  const auto best =
      solve(problem, graph_, params_, mix_seed(options_.seed, kStageTwoSeedSalt), opts);
  if (best.objective <= 0.0 || best.action.empty()) {
    return result;  // cooperation declined this year
  }
  result.joint_action = best.action.normalized();
  result.surplus = best.objective;
  result.roc = result.surplus / pooled;
  const DesignAction yearly =
      combine(combine(stage1.actions[0], stage1.actions[1]), result.joint_action);
  result.state_after = apply_action(graph_, base, yearly, params_);
  return result;
}

CirRoc roc_cir(const std::vector<YearLedger>& years) {
  CirRoc out;
  double pooled = 0.0, total = 0.0, mechanism = 0.0, baseline = 0.0;
  for (const auto& y : years) {
    pooled += y.betas[0] * y.budgets[0] + y.betas[1] * y.budgets[1];
    total += y.budgets[0] + y.budgets[1];
    mechanism += y.payoff_stage1[0] + y.payoff_stage1[1] + y.pool;
    baseline += y.payoff_base[0] + y.payoff_base[1];
  }
  out.pooled_spend = pooled;
  out.delta_f_co = mechanism - baseline;
  out.cir = total > 0 ? pooled / total : 0.0;
  if (pooled > 0) out.roc = out.delta_f_co / pooled;
  return out;
}

}  // namespace coinvest

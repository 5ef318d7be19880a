#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "coinvest/evaluator.hpp"
#include "coinvest/optimizer.hpp"

namespace coinvest {

struct SolverOptions {
  int exact_edge_threshold = 12;
  int exact_frequency_cap = 3;
  int restarts = 5;
  int max_rounds = 50;
  std::uint64_t seed = 0;
};

struct StageOneResult {
  std::array<DesignAction, 2> actions;
  std::array<double, 2> payoffs{};  // F^1t per authority, on the combined network
  NetworkState state_after;
  bool converged = false;
  int rounds = 0;
};

struct StageTwoResult {
  DesignAction joint_action;
  double surplus = 0.0;  // incremental collective objective over stage 1
  NetworkState state_after;
  double cir = 0.0;      // this year's pooled share of this year's budget
  std::optional<double> roc;  // surplus per pooled franc, when pooled > 0
};

/// One design year of the two-stage game: shared demand, routes and a fused
/// evaluator reused across every solve of the year. Not thread-safe; use one
/// instance per worker.
class GameYear {
 public:
  GameYear(const MobilityGraph& graph, const ServiceParams& params, const Weights& weights,
           double mu, const RouteSet& routes, std::vector<TravelRequest> demand,
           SolverOptions options);

  /// Authority i's optimal action against a fixed opponent action, with
  /// stage-1 budget (1-beta_i)*B_i.
  DesignAction best_response(int authority, const NetworkState& base,
                             const DesignAction& opponent, double stage1_budget,
                             const DesignAction* warm_start = nullptr);

  /// Iterated sequential best response (authority 1 then 2) from empty
  /// actions; converged when a full round leaves both actions unchanged.
  StageOneResult stage1_equilibrium(const NetworkState& base,
                                    const std::array<double, 2>& budgets,
                                    const std::array<double, 2>& betas);

  /// Exhaustive unilateral-deviation scan at exact scale.
  bool verify_equilibrium(const NetworkState& base, const std::array<DesignAction, 2>& profile,
                          const std::array<double, 2>& budgets,
                          const std::array<double, 2>& betas);

  /// Pooled-budget coalition design on top of the stage-1 network. Declines
  /// (empty action, zero surplus) when no strictly positive surplus exists.
  StageTwoResult stage2_coinvest(const NetworkState& base, const StageOneResult& stage1,
                                 const std::array<double, 2>& budgets,
                                 const std::array<double, 2>& betas);

  /// Authority payoff (stage objective) for an arbitrary layout, charging
  /// the authority its own action's construction cost.
  double authority_payoff(int authority, const NetworkState& state, const DesignAction& charged);

  ObjectiveEvaluator& evaluator() { return *evaluator_; }
  const std::vector<TravelRequest>& demand() const { return demand_; }

 private:
  DesignProblem stage1_problem(int authority, const NetworkState& base,
                               const DesignAction& opponent, double budget);

  const MobilityGraph& graph_;
  const ServiceParams& params_;
  Weights weights_;
  double mu_;
  std::vector<TravelRequest> demand_;
  SolverOptions options_;
  std::unique_ptr<ObjectiveEvaluator> evaluator_;

  std::vector<double> build_cost_by_slot_, unit_cost_by_slot_;
  std::vector<std::array<double, 2>> share_by_slot_;
  std::array<std::vector<int>, 2> authority_edges_;
  std::vector<int> all_rail_edges_;

  // Scratch layout buffers reused by objective closures.
  std::vector<std::uint8_t> x_base_, x_eval_;
  std::vector<int> s_base_, s_eval_;
};

/// Horizon accounting inputs for CIR/ROC.
struct YearLedger {
  std::array<double, 2> budgets{};
  std::array<double, 2> betas{};
  std::array<double, 2> payoff_base{};    // F^t, the beta=0 trajectory
  std::array<double, 2> payoff_stage1{};  // F^1t
  double pool = 0.0;                      // F^2t
};

struct CirRoc {
  double cir = 0.0;
  std::optional<double> roc;
  double delta_f_co = 0.0;
  double pooled_spend = 0.0;
};

/// CIR = pooled budget / total budget; ROC = (mechanism payoff gain over the
/// baseline trajectory) / pooled budget, undefined without co-investment.
CirRoc roc_cir(const std::vector<YearLedger>& years);

}  // namespace coinvest

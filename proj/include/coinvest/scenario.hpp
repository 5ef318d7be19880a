#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coinvest/bargain.hpp"
#include "coinvest/demand.hpp"
#include "coinvest/game.hpp"

namespace coinvest {

/// Full experiment description; parse_scenario_config fills it from a flat
/// "section.key = value" text file.
struct ScenarioConfig {
  std::string name = "default";
  std::uint64_t seed = 20240615;
  int horizon = 3;
  int jobs = 0;  // 0 = hardware concurrency

  std::string network_file;  // empty: built-in Sioux Falls
  std::string demand_file;   // optional CSV override

  DemandBounds bounds;
  double growth_rate = 0.015;
  double mu = 0.1;
  Weights weights;
  ServiceParams params;

  std::vector<std::array<double, 2>> budgets_by_year;  // defaults to 1e5 each
  std::vector<std::array<double, 2>> betas_by_year;    // defaults to 0
  std::vector<double> sweep_grid = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9};

  std::array<double, 2> budget_ratio = {1.0, 1.0};  // heterogeneous splits
  std::array<double, 2> demand_ratio = {1.0, 1.0};

  int solver_restarts = 5;
  int solver_exact_threshold = 12;
  int solver_frequency_cap = 3;
  int solver_max_rounds = 50;

  std::array<double, 2> budgets_at(int year) const;
  std::array<double, 2> betas_at(int year) const;
  void validate() const;  // throws ConfigError
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig parse_scenario_config_file(const std::string& path);

struct YearOutcome {
  int year = 0;
  std::array<double, 2> betas{};
  std::array<double, 2> budgets{};
  std::array<double, 2> payoff_base{};    // F^t  (beta=0 trajectory)
  std::array<double, 2> payoff_stage1{};  // F^1t
  double pool = 0.0;                      // F^2t
  std::array<double, 2> shares{};         // q
  std::array<double, 2> payoffs{};        // v (stage-1 payoffs when declined)
  bool accepted = false;
  bool converged = true;
  bool baseline_converged = true;
  std::array<DesignAction, 2> stage1_actions;
  DesignAction stage2_action;  // as implemented; empty when declined
  NetworkState state_after;
};

struct RunRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  double mu = 0.1;
  Weights weights;
  std::vector<YearOutcome> years;
  int years_cooperated = 0;  // years with a positive pooled budget
  double delta_f_co = 0.0;
  double cir = 0.0;
  std::optional<double> roc;
  double delta_emissions = 0.0;    // final-year, mechanism minus baseline
  double delta_travel_cost = 0.0;
  double delta_profit = 0.0;
  NetworkState final_state;
};

/// Owns the graph, demand, routes and the baseline trajectory of one
/// configuration; runs single points and full sweeps against them.
class ScenarioEngine {
 public:
  explicit ScenarioEngine(const ScenarioConfig& config);
  ~ScenarioEngine();
  ScenarioEngine(const ScenarioEngine&) = delete;
  ScenarioEngine& operator=(const ScenarioEngine&) = delete;

  const MobilityGraph& graph() const;
  const DemandModel& demand_model() const;
  const ScenarioConfig& config() const;

  /// One scenario point with an explicit beta schedule.
  RunRecord run(const std::vector<std::array<double, 2>>& betas_by_year);

  /// Cartesian product of per-year shared betas over the grid, memoized as
  /// a prefix tree; records come in lexicographic grid order and are
  /// independent of the worker count.
  std::vector<RunRecord> sweep(const std::vector<double>& grid, int jobs);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Point run with the config's own beta schedule.
RunRecord run_scenario(const ScenarioConfig& config);

/// Full sweep with the config's grid.
std::vector<RunRecord> sweep_scenario(const ScenarioConfig& config);

struct RocStats {
  int points = 0;  // points with defined ROC
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct HeteroRow {
  std::string name;
  std::array<double, 2> budget_ratio{};
  std::array<double, 2> demand_ratio{};
  std::vector<RunRecord> records;
  RocStats roc;
};

/// The six budget/demand heterogeneity rows, each swept over the full grid
/// with total budget and total demand held constant.
std::vector<HeteroRow> heterogeneous_suite(const ScenarioConfig& base);

RocStats roc_stats(const std::vector<RunRecord>& records);

}  // namespace coinvest

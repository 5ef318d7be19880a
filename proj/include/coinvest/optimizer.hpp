#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coinvest/net_model.hpp"

namespace coinvest {

/// A budgeted design problem over a fixed set of candidate rail edges.
/// The objective is a black-box evaluation of a candidate action on top of
/// base_state (stage-1 and stage-2 problems differ only in edge set, budget
/// and objective closure).
struct DesignProblem {
  std::vector<int> edge_set;  // rail edge ids, sorted ascending
  double budget = 0.0;
  NetworkState base_state;
  std::function<double(const DesignAction&)> objective;

  enum class Exactness { kAuto, kExact, kLocal };
  Exactness exactness = Exactness::kAuto;
  int exact_edge_threshold = 12;
  int exact_frequency_cap = 3;
};

struct SolveResult {
  DesignAction action;
  double objective = 0.0;
};

/// Construction spend of an action: sum of build and frequency costs.
double action_cost(const DesignAction& action, const MobilityGraph& graph,
                   const ServiceParams& params);

/// Whether the exact solver's preconditions hold for this problem.
bool exact_applicable(const DesignProblem& problem, const MobilityGraph& graph,
                      const ServiceParams& params);

/// Globally optimal action by depth-first enumeration over per-edge choices
/// with budget pruning; ties resolve to the lexicographically smallest
/// action. Throws TooLarge outside the exact envelope.
SolveResult solve_exact(const DesignProblem& problem, const MobilityGraph& graph,
                        const ServiceParams& params);

struct LocalSearchOptions {
  int restarts = 5;
  /// Optional extra start (e.g. the previous round's action); ignored when
  /// infeasible for this problem.
  const DesignAction* warm_start = nullptr;
};

/// Deterministic seeded hill climbing over {add build, remove build,
/// +1 frequency, -1 frequency, swap two builds} from a greedy
/// marginal-gain start plus randomized restarts. Never returns an action
/// worse than doing nothing.
SolveResult solve_local(const DesignProblem& problem, const MobilityGraph& graph,
                        const ServiceParams& params, std::uint64_t seed,
                        const LocalSearchOptions& options = {});

/// Dispatches to solve_exact when applicable (or forced), else solve_local.
SolveResult solve(const DesignProblem& problem, const MobilityGraph& graph,
                  const ServiceParams& params, std::uint64_t seed,
                  const LocalSearchOptions& options = {});

/// Visits every feasible action of the problem in lexicographic order.
/// Only valid within the exact envelope (throws TooLarge otherwise).
void for_each_feasible_action(const DesignProblem& problem, const MobilityGraph& graph,
                              const ServiceParams& params,
                              const std::function<void(const DesignAction&)>& fn);

}  // namespace coinvest

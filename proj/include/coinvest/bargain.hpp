#pragma once

#include <array>

#include "coinvest/errors.hpp"

namespace coinvest {

/// Inputs of the yearly payoff-sharing problem: the no-mechanism payoffs
/// (disagreement point), the stage-1 payoffs, and the pooled stage-2
/// surplus to distribute.
struct PayoffTriple {
  std::array<double, 2> no_mech{};  // F^t
  std::array<double, 2> stage1{};   // F^1t
  double pool = 0.0;                // F^2t, >= 0
};

/// A bargained split of the pool: shares q and resulting payoffs
/// v_i = F^1t_i + q_i.
struct Allocation {
  std::array<double, 2> shares{};
  std::array<double, 2> payoffs{};
};

/// Existence gate: the mechanism only has a solution when
/// sum(F^1t) + F^2t exceeds sum(F^t) strictly (1e-9 CHF/day tolerance).
bool lemma1_feasible(const PayoffTriple& triple);

/// Nash-bargaining split: the unique maximizer of the product of surpluses
/// over the disagreement point, subject to sum(q) = pool. For two
/// authorities this is the equal-surplus split. Throws NoAgreement when the
/// feasibility gate fails.
Allocation nbs_allocate(const PayoffTriple& triple);

/// Definition-2 check: every authority weakly prefers the cooperative
/// payoff to its equilibrium payoff.
bool feasible_agreement(const std::array<double, 2>& payoffs_coop,
                        const std::array<double, 2>& payoffs_ne);

}  // namespace coinvest

#include "coinvest/bargain.hpp"

#include <string>

namespace coinvest {

namespace {
constexpr double kLemmaTolerance = 1e-9;  // CHF/day
}

bool lemma1_feasible(const PayoffTriple& t) {
  const double mechanism = t.stage1[0] + t.stage1[1] + t.pool;
  const double disagreement = t.no_mech[0] + t.no_mech[1];
  return mechanism - disagreement > kLemmaTolerance;
}

Allocation nbs_allocate(const PayoffTriple& t) {
  if (!lemma1_feasible(t)) {
    throw Error(ErrorCode::kNoAgreement,
                "mechanism payoff " + std::to_string(t.stage1[0] + t.stage1[1] + t.pool) +
                    " does not exceed the disagreement payoff " +
                    std::to_string(t.no_mech[0] + t.no_mech[1]));
  }
  // Maximizing (v1-F1)(v2-F2) on the line v1+v2 = sum(F^1t)+pool gives the
  // equal-surplus split.
  const double surplus = t.stage1[0] + t.stage1[1] + t.pool - t.no_mech[0] - t.no_mech[1];
  Allocation a;
  for (int i = 0; i < 2; ++i) {
    a.payoffs[i] = t.no_mech[i] + surplus / 2.0;
    a.shares[i] = a.payoffs[i] - t.stage1[i];
  }
  return a;
}

bool feasible_agreement(const std::array<double, 2>& payoffs_coop,
                        const std::array<double, 2>& payoffs_ne) {
  return payoffs_coop[0] >= payoffs_ne[0] && payoffs_coop[1] >= payoffs_ne[1];
}

}  // namespace coinvest

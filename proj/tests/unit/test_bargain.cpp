#include <doctest.h>

#include <cmath>
#include <random>

#include "coinvest/bargain.hpp"

using namespace coinvest;

namespace {

PayoffTriple triple(double f1, double f2, double s1, double s2, double pool) {
  PayoffTriple t;
  t.no_mech = {f1, f2};
  t.stage1 = {s1, s2};
  t.pool = pool;
  return t;
}

/// Grid-search maximizer of the Nash product over the transfer, independent
/// of the closed form.
double grid_search_q1(const PayoffTriple& t, int steps = 200000) {
  // v1 = s1 + q1, v2 = s2 + pool - q1; both must exceed the disagreement
  // payoffs, which bounds q1 to an open interval.
  const double lo = t.no_mech[0] - t.stage1[0];
  const double hi = t.stage1[1] + t.pool - t.no_mech[1];
  double best_q = lo;
  double best_val = -1.0;
  for (int i = 1; i < steps; ++i) {
    const double q = lo + (hi - lo) * i / steps;
    const double v1 = t.stage1[0] + q - t.no_mech[0];
    const double v2 = t.stage1[1] + t.pool - q - t.no_mech[1];
    if (v1 <= 0 || v2 <= 0) continue;
    const double prod = v1 * v2;
    if (prod > best_val) {
      best_val = prod;
      best_q = q;
    }
  }
  return best_q;
}

double nash_product(const PayoffTriple& t, double q1) {
  return (t.stage1[0] + q1 - t.no_mech[0]) * (t.stage1[1] + t.pool - q1 - t.no_mech[1]);
}

}  // namespace

TEST_CASE("lemma 1 feasibility gate") {
  CHECK_FALSE(lemma1_feasible(triple(13, 18, 10, 20, 0)));  // 30 vs 31
  CHECK(lemma1_feasible(triple(10, 20, 12, 21, 5)));        // 38 > 30
  CHECK_FALSE(lemma1_feasible(triple(15, 15, 10, 20, 0)));  // exact equality rejects
}

TEST_CASE("closed-form allocation matches the worked example") {
  const Allocation a = nbs_allocate(triple(10, 20, 12, 21, 5));
  CHECK(a.payoffs[0] == doctest::Approx(14.0));
  CHECK(a.payoffs[1] == doctest::Approx(24.0));
  CHECK(a.shares[0] == doctest::Approx(2.0));
  CHECK(a.shares[1] == doctest::Approx(3.0));
  CHECK(a.shares[0] + a.shares[1] == doctest::Approx(5.0));
}

TEST_CASE("failed gate raises NoAgreement") {
  try {
    nbs_allocate(triple(13, 18, 10, 20, 0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoAgreement);
  }
}

TEST_CASE("symmetry axiom") {
  const Allocation a = nbs_allocate(triple(7, 7, 9, 9, 4));
  CHECK(a.shares[0] == a.shares[1]);
  CHECK(a.payoffs[0] == a.payoffs[1]);
}

TEST_CASE("affine invariance axiom") {
  const PayoffTriple base = triple(10, 20, 12, 21, 5);
  const Allocation plain = nbs_allocate(base);
  // v -> 2v + 3 applied to every payoff stream. The pool is a payoff
  // difference, so it scales by 2 without the shift (and the shift cancels
  // between stage1 and no_mech).
  PayoffTriple mapped = base;
  for (int i = 0; i < 2; ++i) {
    mapped.no_mech[i] = 2 * base.no_mech[i] + 3;
    mapped.stage1[i] = 2 * base.stage1[i] + 3;
  }
  mapped.pool = 2 * base.pool;
  const Allocation scaled = nbs_allocate(mapped);
  for (int i = 0; i < 2; ++i) {
    CHECK(scaled.payoffs[i] == doctest::Approx(2 * plain.payoffs[i] + 3));
  }
}

TEST_CASE("closed form equals the grid-search oracle on random triples") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 200) {
    const double f1 = (rng() % 20000) / 100.0 - 100.0;
    const double f2 = (rng() % 20000) / 100.0 - 100.0;
    const double s1 = f1 + (rng() % 4000) / 100.0 - 20.0;
    const double s2 = f2 + (rng() % 4000) / 100.0 - 20.0;
    const double pool = (rng() % 10000) / 100.0;
    const PayoffTriple t = triple(f1, f2, s1, s2, pool);
    if (!lemma1_feasible(t)) continue;
    ++tested;
    const Allocation a = nbs_allocate(t);
    const double scale = std::max(1.0, std::abs(pool));
    CHECK(std::abs(a.shares[0] + a.shares[1] - pool) <= 1e-9 * scale);
    CHECK(a.payoffs[0] > t.no_mech[0]);
    CHECK(a.payoffs[1] > t.no_mech[1]);
    const double q_grid = grid_search_q1(t, 20000);
    const double interval = t.stage1[1] + t.pool - t.no_mech[1] - (t.no_mech[0] - t.stage1[0]);
    const double tol = 1e-3 * std::max(1.0, std::abs(pool)) + interval / 20000.0;
    CHECK(std::abs(a.shares[0] - q_grid) <= tol);
  }
}

TEST_CASE("uniqueness: perturbing the optimum lowers the Nash product") {
  const PayoffTriple t = triple(10, 20, 12, 21, 5);
  const Allocation a = nbs_allocate(t);
  const double at_opt = nash_product(t, a.shares[0]);
  for (double eps : {1e-6 * 5, 1e-3, 0.1}) {
    CHECK(nash_product(t, a.shares[0] + eps) < at_opt);
    CHECK(nash_product(t, a.shares[0] - eps) < at_opt);
  }
}

TEST_CASE("independence of irrelevant alternatives") {
  // Restricting the transfer interval to a sub-interval containing the
  // optimum does not move the grid-search maximizer.
  const PayoffTriple t = triple(10, 20, 12, 21, 5);
  const Allocation a = nbs_allocate(t);
  const double lo = a.shares[0] - 0.5, hi = a.shares[0] + 0.7;
  double best_q = lo, best_val = -1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double q = lo + (hi - lo) * i / 100000.0;
    const double val = nash_product(t, q);
    if (val > best_val) {
      best_val = val;
      best_q = q;
    }
  }
  CHECK(best_q == doctest::Approx(a.shares[0]).epsilon(1e-4));
}

TEST_CASE("pareto optimality along the transfer frontier") {
  // With sum(q) fixed, raising one payoff necessarily lowers the other.
  const PayoffTriple t = triple(10, 20, 12, 21, 5);
  const Allocation a = nbs_allocate(t);
  const double dv = 0.25;
  const double v1_up = a.payoffs[0] + dv;
  const double v2_then = t.stage1[1] + (t.pool - (v1_up - t.stage1[0]));
  CHECK(v2_then < a.payoffs[1]);
}

TEST_CASE("feasible agreement check") {
  CHECK(feasible_agreement({14, 24}, {12, 21}));
  CHECK_FALSE(feasible_agreement({14, 20}, {12, 21}));
  CHECK(feasible_agreement({12, 21}, {12, 21}));  // weak inequality
}

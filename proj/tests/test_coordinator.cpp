#include <doctest.h>

#include <cmath>

#include "mgswap/coordinator.hpp"
#include "tableau_lp.hpp"
#include "tiny.hpp"

using namespace mgswap;

namespace {

IterationRecord rec(double f1, double f2) {
  IterationRecord r;
  r.f1_jo = f1;
  r.f2_jo = f2;
  return r;
}

// A station that can do nothing: no power, no stored energy above the floor,
// no customers.
Scenario with_inert_station(Scenario sc) {
  sc.bss.p_ch_rated = sc.bss.p_dc_rated = 0.0;
  sc.bss.per_battery_p_ch = sc.bss.per_battery_p_dc = 0.0;
  sc.bss.c_init = sc.bss.c_min;
  sc.ev_rate.assign(sc.periods(), 0.0);
  return sc;
}

// Cheapest way to cover one period's expected load and reserve with any
// on-set of units, ignoring startups and the link between periods.
double period_lower_bound(const std::vector<MtParams>& mts, double el, double reserve, double cnload_cap) {
  const int M = static_cast<int>(mts.size());
  double best = INFINITY;
  for (int mask = 1; mask < (1 << M); ++mask) {
    // Variables: outputs then reserves, per unit.
    std::vector<double> c(2 * M, 0.0), lo(2 * M, 0.0), hi(2 * M, 0.0);
    std::vector<oracle::LpRow> rows;
    double fixed = 0.0;
    oracle::LpRow supply{std::vector<double>(2 * M, 0.0), 1, std::max(el, 0.0)};
    oracle::LpRow surplus{std::vector<double>(2 * M, 0.0), -1, std::max(el, 0.0) + cnload_cap};
    oracle::LpRow cover{std::vector<double>(2 * M, 0.0), 1, reserve};
    for (int n = 0; n < M; ++n) {
      const bool on = mask >> n & 1;
      fixed += on * mts[n].fixed_fuel_cost;
      c[n] = mts[n].variable_fuel_cost;
      c[M + n] = mts[n].reserve_cost;
      lo[n] = on * mts[n].p_min;
      hi[n] = hi[M + n] = on * mts[n].p_max;
      supply.a[n] = surplus.a[n] = 1.0;
      cover.a[M + n] = 1.0;
      oracle::LpRow head{std::vector<double>(2 * M, 0.0), -1, on * mts[n].p_max};
      head.a[n] = head.a[M + n] = 1.0;
      rows.push_back(head);
    }
    rows.push_back(supply);
    rows.push_back(surplus);
    rows.push_back(cover);
    const auto lp = oracle::tableau_lp(c, rows, lo, hi);
    if (lp.feasible) best = std::min(best, fixed + lp.value);
  }
  return best;
}

}  // namespace

TEST_CASE("compromise selection") {
  CHECK(compromise_distance(10, 5, 8, 10) == doctest::Approx(std::sqrt(29.0)));
  CHECK(select_optimal_index({rec(10, 5), rec(12, 9)}, 8, 10) == 1);
  CHECK(select_optimal_index({rec(3, 3)}, 0, 0) == 0);
  CHECK(select_optimal_index({rec(4, 4), rec(4, 4), rec(4, 4)}, 1, 9) == 0);
  CHECK(select_optimal_index({rec(9, 2), rec(5, 7), rec(6, 6)}, 5, 7) == 1);
  // Distances 5, sqrt(10), sqrt(13): the middle one.
  CHECK(select_optimal_index({rec(3, 4), rec(1, 3), rec(2, 3)}, 0, 0) == 1);
  CHECK_THROWS_AS(select_optimal_index({}, 0, 0), std::invalid_argument);

  const std::vector<IterationRecord> base{rec(12, 4), rec(15, 8), rec(11, 1), rec(20, 9)};
  const double f1_io = 10, f2_io = 10;
  const int pick = select_optimal_index(base, f1_io, f2_io);
  for (double k : {0.1, 3.0, 1000.0}) {
    std::vector<IterationRecord> scaled;
    for (const auto& r : base) scaled.push_back(rec(f1_io + k * (r.f1_jo - f1_io), f2_io + k * (r.f2_jo - f2_io)));
    CHECK(select_optimal_index(scaled, f1_io, f2_io) == pick);
  }
  CHECK(compromise_distance(12, 5, 10, 10, true) == doctest::Approx(std::hypot(0.2, 0.5)));
}

TEST_CASE("an inert station leaves the microgrid alone") {
  const Scenario sc = with_inert_station(default_scenario());
  const auto ctx = make_context(sc);
  const auto s1 = run_img_independent(ctx);
  // The standalone solve inside the joint run uses the same seed.
  const auto joint = solve_joint(ctx, 1);
  CHECK(joint.strategy1.f1 == doctest::Approx(s1.outcome.f1));
  for (int t = 0; t < 24; ++t) {
    CHECK(s1.outcome.lower.traded[t] == 0.0);
    CHECK(s1.outcome.lower.reserve[t] == 0.0);
  }

  // No schedule beats the per-period cheapest cover.
  const auto in = upper_inputs(sc, ctx.uncertainty, s1.alpha_used);
  double bound = 0.0;
  for (int t = 0; t < 24; ++t)
    bound += period_lower_bound(sc.mts, in.expected_el[t], in.reserve_requirement[t], in.cnload_cap[t]);
  CHECK(s1.outcome.f1 >= bound - 1e-6);
}

TEST_CASE("deterministic strategy 1 is the closed-form commitment") {
  Scenario sc = with_inert_station(tiny::deterministic(1, {20.0}));
  const auto s1 = run_img_independent(make_context(sc));
  CHECK(s1.outcome.f1 == doctest::Approx(1.0 + 20.0 * 0.26 + 0.5));
}

TEST_CASE("closed envelope: the station only swaps") {
  const Scenario sc = default_scenario();
  const auto ctx = make_context(sc);
  StrategyOutcome s1 = run_img_independent(ctx).outcome;
  s1.envelope = BssCoupling::closed(24);
  const auto s3 = solve_bss_independent(ctx, s1, sc.alpha, 77);
  int swaps = 0;
  for (int t = 0; t < 24; ++t) {
    CHECK(s3.lower.traded[t] == 0.0);
    CHECK(s3.lower.reserve[t] == 0.0);
    swaps += s3.lower.served[t];
  }
  CHECK(s3.f2 == doctest::Approx(swaps * (sc.price.swap_price * sc.bss.battery_capacity - sc.bss.depreciation_tau)));
}

TEST_CASE("joint loop bookkeeping") {
  const Scenario sc = default_scenario();
  const auto ctx = make_context(sc);
  const auto one = solve_joint(ctx, 1);
  REQUIRE(one.all_records.size() == 1);
  CHECK(one.chosen_index == 0);
  CHECK(one.chosen.f1_jo == one.all_records[0].f1_jo);

  const auto r = solve_joint(ctx, 4);
  REQUIRE(r.all_records.size() == 4);
  for (const auto& k : r.all_records) {
    const auto again = price_track(ctx.expected_el, k.lower.traded, k.lower.bss_mode, sc.price);
    CHECK(again.price == k.price_track.price);
    CHECK(again.bss_mode == k.price_track.bss_mode);
    CHECK(k.f1_jo == doctest::Approx(img_net_cost(k.upper, k.price_track, sc.mts, sc.price)));
    CHECK(k.f2_jo == doctest::Approx(bss_profit(k.lower, k.price_track, sc.price, sc.bss)));
  }
  CHECK(r.chosen_index == select_optimal_index(r.all_records, r.f1_io, r.f2_io));
  CHECK(r.distance == doctest::Approx(compromise_distance(r.chosen.f1_jo, r.chosen.f2_jo, r.f1_io, r.f2_io)));
  CHECK(r.f1_io == r.strategy1.f1);
  CHECK(r.f2_io == r.strategy3.f2);

  const auto same = solve_joint(ctx, 4);
  CHECK(same.chosen.f1_jo == r.chosen.f1_jo);
  CHECK(same.chosen.lower.traded == r.chosen.lower.traded);
}

TEST_CASE("confidence relaxation") {
  Scenario sc = default_scenario();
  sc.alpha = 0.95;  // the fleet cannot cover this level in every hour
  const auto r = solve_joint(sc, 2);
  CHECK(r.alpha_used == doctest::Approx(0.90));
  REQUIRE_FALSE(r.trace.empty());
  CHECK(r.trace.front().find("retrying at alpha") != std::string::npos);

  const Scenario bad = tiny::deterministic(1, {80.0});
  try {
    solve_joint(bad, 1);
    FAIL("expected an infeasibility");
  } catch (const InfeasibleError& e) {
    const std::string what = e.what();
    CHECK(what.find("retrying at alpha") != std::string::npos);
    CHECK(what.find("still infeasible") != std::string::npos);
  }
}

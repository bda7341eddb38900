#include <doctest.h>

#include <random>

#include "enumerate_milp.hpp"
#include "formulas.hpp"
#include "mgswap/bss_model.hpp"
#include "mgswap/coordinator.hpp"
#include "mgswap/scenario.hpp"
#include "toys.hpp"

using namespace mgswap;

namespace {

// Energy path implied by the powers and swaps of a schedule.
void replay_energy(LowerSchedule& s, const BssParams& b, double dt) {
  for (int t = 0; t < s.periods(); ++t) {
    s.traded[t] = (s.p_ch[t] - s.p_dc[t]) * dt;
    s.energy[t + 1] = s.energy[t] + b.eta_ch * s.p_ch[t] * dt - s.p_dc[t] * dt / b.eta_dc - s.served[t] * b.swap_energy();
  }
}

PriceTrack desk_prices(const RunContext& ctx) {
  // Demand-response prices of the expected loads alone: varied across the day.
  return price_track(ctx.expected_el, std::vector<double>(ctx.expected_el.size(), 0.0),
                     std::vector<int>(ctx.expected_el.size(), 1), ctx.scenario.price);
}

}  // namespace

TEST_CASE("station profit terms") {
  BssParams b;
  PriceParams pp;
  LowerSchedule s = LowerSchedule::idle(24, b);
  CHECK(bss_profit(s, PriceTrack::flat(24, 1.0), pp, b) == 0.0);

  for (int t = 0; t < 10; ++t) s.served[t] = 1;
  CHECK(bss_profit(s, PriceTrack::flat(24, 1.0), pp, b) == doctest::Approx(1.4 * 19 * 10 - 3 * 10));

  LowerSchedule d = LowerSchedule::idle(1, b);
  d.bss_mode = {1};
  d.p_dc = {15.0};
  d.traded = {-15.0};
  const auto parts = bss_profit_by_period(d, PriceTrack::flat(1, 1.2), pp, b);
  CHECK(parts[0].trade == doctest::Approx(18.0));
  CHECK(parts[0].depreciation == doctest::Approx(3.0 * 15.0 / 19.0));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    LowerSchedule r = LowerSchedule::idle(6, b);
    PriceTrack p = PriceTrack::flat(6, 1.0);
    for (int t = 0; t < 6; ++t) {
      r.bss_mode[t] = u(rng) < 0.5;
      r.p_ch[t] = 30 * u(rng);
      r.p_dc[t] = 60 * u(rng);
      r.traded[t] = r.p_ch[t] - r.p_dc[t];
      r.reserve[t] = 40 * u(rng);
      r.served[t] = static_cast<int>(4 * u(rng));
      p.price[t] = 2 * u(rng);
      p.bss_mode[t] = r.bss_mode[t];
    }
    double sum = 0.0;
    for (const auto& part : bss_profit_by_period(r, p, pp, b)) sum += part.total();
    const double ref = oracle::bss_profit(r, p.price, r.bss_mode, pp.swap_price, pp.reserve_price, 1.0, b);
    CHECK(bss_profit(r, p, pp, b) == doctest::Approx(ref));
    CHECK(sum == doctest::Approx(ref));
  }
}

TEST_CASE("an idle single period earns nothing") {
  BssParams b = toys::small_station(2, 1);
  b.c_init = b.c_min;  // nothing stored to back a reserve offer
  PriceParams pp;
  const auto r = solve_lower(PriceTrack::flat(1, 0.0), {0}, b, pp);
  CHECK(r.f2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.schedule.p_ch[0] == 0.0);
  CHECK(r.schedule.p_dc[0] == 0.0);
  CHECK(r.schedule.reserve[0] == 0.0);
}

TEST_CASE("compilation is deterministic") {
  const auto ctx = make_context(default_scenario());
  const auto a = compile_milp(desk_prices(ctx), ctx.arrivals, ctx.scenario.bss, ctx.scenario.price);
  const auto b = compile_milp(desk_prices(ctx), ctx.arrivals, ctx.scenario.bss, ctx.scenario.price);
  CHECK(a.instance.num_variables() == 24 * 10);
  CHECK(a.instance.num_variables() == b.instance.num_variables());
  CHECK(a.instance.num_constraints() == b.instance.num_constraints());
  CHECK(a.instance.to_text() == b.instance.to_text());
  CHECK_THROWS_AS(compile_milp(PriceTrack::flat(2, 1.0), {0}, ctx.scenario.bss, ctx.scenario.price),
                  std::invalid_argument);
}

TEST_CASE("buy low, sell high on a two-period toy") {
  BssParams b = toys::small_station(2, 1);
  PriceParams pp;
  PriceTrack prices{{0.2, 1.8}, {1, 1}};
  const auto milp = compile_milp(prices, {0, 0}, b, pp);
  const auto ref = oracle::enumerate_milp(milp.instance);
  const auto mine = solve_lower(prices, {0, 0}, b, pp);
  REQUIRE(ref.feasible);
  CHECK(mine.milp.objective == doctest::Approx(ref.objective).epsilon(1e-9));
  const auto s = mine.schedule;
  CHECK(s.p_ch[0] > 0.0);
  CHECK(s.p_dc[0] == 0.0);
  CHECK(s.p_dc[1] > 0.0);
  CHECK(s.p_ch[1] == 0.0);
  const auto e = decode_schedule(milp, ref.x, b, {0, 0});
  CHECK(e.p_ch[0] == doctest::Approx(s.p_ch[0]));
  CHECK(e.p_dc[1] == doctest::Approx(s.p_dc[1]));
}

TEST_CASE("desk schedule respects every station rule") {
  const auto ctx = make_context(default_scenario());
  const auto& sc = ctx.scenario;
  const auto& b = sc.bss;
  const auto prices = desk_prices(ctx);
  const auto r = solve_lower(prices, ctx.arrivals, b, sc.price);
  REQUIRE(r.milp.status == MilpStatus::Optimal);
  const auto& s = r.schedule;
  CHECK(lower_violation(s, b, BssCoupling::unlimited(), sc.delta_t) <= 1e-6);
  double charged = 0.0;
  for (int t = 0; t < s.periods(); ++t) {
    CHECK(s.p_ch[t] * s.p_dc[t] == 0.0);
    CHECK(s.energy[t + 1] >= b.c_min - 1e-6);
    CHECK(s.energy[t + 1] <= b.c_max + 1e-6);
    CHECK(s.n_ch[t] + s.n_dc[t] + s.n_full[t] + s.n_empty[t] == b.n_batteries);
    CHECK(s.n_ch[t] + s.n_dc[t] <= b.n_positions);
    CHECK(s.served[t] <= s.arrivals[t]);
    CHECK(s.traded[t] == doctest::Approx((s.p_ch[t] - s.p_dc[t]) * sc.delta_t));
    charged += b.eta_ch * s.p_ch[t] * sc.delta_t;
  }
  CHECK(charged <= b.max_cycles * b.n_batteries * b.battery_capacity + 1e-6);
  CHECK(r.f2 == doctest::Approx(bss_profit(s, prices, sc.price, b)));
  CHECK(r.f2 == doctest::Approx(r.milp.objective).epsilon(1e-9));

  SUBCASE("moving charge to a cheaper hour never helps") {
    const double delta = 0.5;
    for (int h1 = 0; h1 < s.periods(); ++h1)
      for (int h2 = 0; h2 < s.periods(); ++h2) {
        if (h1 == h2 || !(prices.price[h2] < prices.price[h1]) || s.p_ch[h1] < delta) continue;
        if (s.bss_mode[h2] != 1 || s.p_dc[h2] > 0) continue;
        LowerSchedule moved = s;
        moved.p_ch[h1] -= delta;
        moved.p_ch[h2] += delta;
        replay_energy(moved, b, sc.delta_t);
        if (lower_violation(moved, b, BssCoupling::unlimited(), sc.delta_t) > 1e-9) continue;
        CHECK(bss_profit(moved, prices, sc.price, b) <= r.f2 + 1e-9);
      }
  }
}

TEST_CASE("a higher swap price never lowers the optimum") {
  const auto ctx = make_context(default_scenario());
  PriceParams pp = ctx.scenario.price;
  double prev = -1e9;
  for (double w : {1.0, 1.2, 1.4, 1.8}) {
    pp.swap_price = w;
    const auto r = solve_lower(desk_prices(ctx), ctx.arrivals, ctx.scenario.bss, pp);
    CHECK(r.f2 >= prev - 1e-9);
    prev = r.f2;
  }
}

TEST_CASE("a closed envelope leaves swaps and nothing else") {
  const auto ctx = make_context(default_scenario());
  const auto& sc = ctx.scenario;
  const auto r = solve_lower(desk_prices(ctx), ctx.arrivals, sc.bss, sc.price, BssCoupling::closed(24));
  for (int t = 0; t < 24; ++t) {
    CHECK(r.schedule.p_ch[t] == 0.0);
    CHECK(r.schedule.p_dc[t] == 0.0);
    CHECK(r.schedule.reserve[t] == 0.0);
  }
  int swaps = 0;
  for (int n : r.schedule.served) swaps += n;
  CHECK(r.f2 == doctest::Approx(swaps * (sc.price.swap_price * sc.bss.battery_capacity - sc.bss.depreciation_tau)));
}

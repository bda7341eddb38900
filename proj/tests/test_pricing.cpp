#include <doctest.h>

#include <random>

#include "formulas.hpp"
#include "mgswap/bss_model.hpp"
#include "mgswap/pricing.hpp"

using namespace mgswap;

TEST_CASE("demand-response price") {
  PriceParams pp;  // 1.0 $/kWh at 80 kW, one-hour periods
  CHECK(real_time_price(80.0, 0.0, 1, pp) == 1.0);
  CHECK(real_time_price(40.0, 0.0, 0, pp) == doctest::Approx(0.5));
  CHECK(real_time_price(32.9, 31.6, 1, pp) == doctest::Approx(0.80625));
  CHECK(real_time_price(10.0, -40.0, 1, pp) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> el(-10, 120), traded(-60, 60);
  for (double dt : {1.0, 0.5, 0.25}) {
    pp.delta_t = dt;
    for (int i = 0; i < 200; ++i) {
      const double e = el(rng), s = traded(rng);
      for (int mode : {0, 1})
        CHECK(real_time_price(e, s, mode, pp) ==
              doctest::Approx(oracle::price(e, s, mode, pp.reference_price, pp.reference_el_power, dt)));
      if (e * dt + s > 1.0) CHECK(real_time_price(e, s + 1.0, 1, pp) > real_time_price(e, s, 1, pp));
    }
  }
}

TEST_CASE("reserve payment") {
  PriceParams pp;
  CHECK(reserve_payment(30.37, 1, pp) == 0.0);
  CHECK(reserve_payment(30.37, 0, pp) == doctest::Approx(0.6074));
  CHECK(reserve_payment(0.0, 0, pp) == 0.0);
}

TEST_CASE("price track over a horizon") {
  PriceParams pp;
  const std::vector<double> el{80, 40, 20};
  const std::vector<double> traded{0, 10, -5};
  const std::vector<int> mode{1, 0, 1};
  const auto track = price_track(el, traded, mode, pp);
  CHECK(track.bss_mode == mode);
  for (int t = 0; t < 3; ++t) CHECK(track.price[t] == doctest::Approx(oracle::price(el[t], traded[t], mode[t], 1, 80, 1)));
  CHECK_THROWS(price_track(el, {0, 0}, mode, pp));
}

TEST_CASE("reserve-mode price never reaches the objectives") {
  BssParams bss;
  PriceParams pp;
  LowerSchedule s = LowerSchedule::idle(2, bss);
  s.bss_mode = {0, 0};
  s.reserve = {12.0, 3.0};
  PriceTrack a{{0.3, 0.9}, {0, 0}}, b{{5.0, 0.0}, {0, 0}};
  CHECK(bss_profit(s, a, pp, bss) == bss_profit(s, b, pp, bss));
}

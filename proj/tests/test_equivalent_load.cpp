#include <doctest.h>

#include <random>

#include "mgswap/equivalent_load.hpp"
#include "mgswap/scenario.hpp"
#include "reserve.hpp"

using namespace mgswap;

TEST_CASE("deterministic periods") {
  auto u = combine_sequences(ProbSeq::delta(2.5, 0), ProbSeq::delta(2.5, 0), ProbSeq::delta(2.5, 4));
  CHECK(u.el_seq[4] == doctest::Approx(1.0));
  CHECK(u.expected_el == doctest::Approx(10.0));

  // 10 kW of load against 15 kW of generation: clamped sequence, negative mean.
  u = combine_sequences(ProbSeq::delta(2.5, 6), ProbSeq::delta(2.5, 0), ProbSeq::delta(2.5, 4));
  CHECK(u.el_seq[0] == doctest::Approx(1.0));
  CHECK(u.expected_el == doctest::Approx(-5.0));
}

TEST_CASE("period sequences are wired through the convolutions") {
  const Scenario sc = default_scenario();
  for (int t : {0, 6, 12, 19}) {
    const auto u = build_period_uncertainty(sc.wind_at(t), sc.pv_at(t), sc.load_at(t), sc.step_q);
    const auto c = atc(u.wt_seq, u.pv_seq);
    const auto e = stc(u.load_seq, c);
    REQUIRE(c.size() == u.joint_der_seq.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(u.joint_der_seq[i]).epsilon(1e-14));
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] == doctest::Approx(u.el_seq[i]).epsilon(1e-14));
    CHECK(u.expected_el ==
          doctest::Approx(u.load_seq.expectation() - u.wt_seq.expectation() - u.pv_seq.expectation()));
  }
}

TEST_CASE("minimum reserve for a confidence level") {
  const ProbSeq uniform4(10.0, {0.25, 0.25, 0.25, 0.25});
  CHECK(min_reserve_for_confidence(uniform4, 15.0, 0.9) == doctest::Approx(15.0));
  CHECK(min_reserve_for_confidence(uniform4, 15.0, 0.75) == doctest::Approx(5.0));
  CHECK(min_reserve_for_confidence(ProbSeq::delta(2.5, 7), 17.5, 0.95) == 0.0);
  CHECK_THROWS_AS(min_reserve_for_confidence(uniform4, 15.0, 1.01), std::invalid_argument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0, 1), el(-5, 20);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(std::uniform_int_distribution<int>(1, 12)(rng));
    double s = 0;
    for (double& x : v) s += (x = w(rng));
    for (double& x : v) x /= s;
    const ProbSeq e(2.5, v);
    const double mean = el(rng);
    double prev = 0.0;
    for (double alpha : {0.5, 0.8, 0.85, 0.9, 0.95, 1.0}) {
      const double r = min_reserve_for_confidence(e, mean, alpha);
      CHECK(r == doctest::Approx(std::max(0.0, oracle::min_reserve_by_subsets(v, 2.5, mean, alpha))));
      CHECK(r >= prev - 1e-12);
      prev = r;
      CHECK(chance_constraint_holds(r, e, mean, alpha));
      if (r >= 2.5) {
        // One step less uncovers the quantile level whenever that drops the mass below alpha.
        const bool holds = chance_constraint_holds(r - 2.5, e, mean, alpha);
        CHECK(holds == (covered_probability(r - 2.5, e, mean) >= alpha));
        CHECK_FALSE(holds);
      }
    }
  }
}

TEST_CASE("chance constraint edges") {
  const ProbSeq e(2.5, {0.1, 0.2, 0.3, 0.4});
  CHECK(chance_constraint_holds(3 * 2.5 - 4.0, e, 4.0, 1.0));
  CHECK(chance_constraint_holds(0.0, e, 4.0, 0.0));
}

#include <doctest.h>

#include <random>

#include "convolution.hpp"
#include "mgswap/prob_seq.hpp"
#include "mgswap/stochastic.hpp"

using namespace mgswap;

namespace {

ProbSeq random_seq(std::mt19937_64& rng, double q, std::size_t max_len = 16) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<double> v(len(rng));
  double s = 0.0;
  for (double& x : v) s += (x = w(rng) * w(rng));
  for (double& x : v) x /= s;
  return ProbSeq(q, v);
}

std::vector<double> weights(const ProbSeq& s) { return {s.weights().begin(), s.weights().end()}; }

void check_same(const ProbSeq& a, const std::vector<double>& b, double tol = 1e-12) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("sequence validation") {
  CHECK_THROWS_AS(ProbSeq(0.0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ProbSeq(1.0, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbSeq(1.0, {1.2, -0.2}), std::invalid_argument);
  CHECK_NOTHROW(ProbSeq(2.5, {0.25, 0.75}));
}

TEST_CASE("discretization") {
  check_same(discretize(point_distribution(0.0), 0.0, 2.5), {1.0});
  check_same(discretize(uniform_distribution(10.0), 10.0, 2.5), {0.125, 0.25, 0.25, 0.25, 0.125}, 1e-12);
  WindParams wp;
  CHECK(discretize(wt_distribution(wp), wp.p_rated, 2.5).max_index() == 24);
  CHECK_THROWS_AS(discretize(uniform_distribution(10.0), 10.0, 0.0), std::invalid_argument);

  // A rated-power atom lands in the last bin, a zero atom in the first.
  const auto wt = discretize(wt_distribution(wp), wp.p_rated, 2.5);
  const auto model = wt_output_model(wp);
  CHECK(wt[0] >= model.mass_at_zero());
  CHECK(wt[24] >= model.mass_at_rated());

  const auto rep = discretize_with_report(load_distribution({60.0, 0.1}), 60.0 * 1.6, 2.5);
  CHECK(rep.shaved_mass < 1e-3);
}

TEST_CASE("discretized mean converges as the step shrinks") {
  PvParams pv;
  pv.lambda1 = 2.0;
  pv.lambda2 = 5.0;
  const double exact = pv.p_max * pv.lambda1 / (pv.lambda1 + pv.lambda2);
  double prev = 1e9;
  for (double q : {5.0, 2.5, 1.25}) {
    const double err = std::abs(discretize(pv_distribution(pv), pv.p_max, q).expectation() - exact);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("addition-type convolution") {
  const ProbSeq half(1.0, {0.5, 0.5});
  check_same(atc(half, half), {0.25, 0.5, 0.25});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_seq(rng, 2.5), b = random_seq(rng, 2.5), c = random_seq(rng, 2.5);
    check_same(atc(ProbSeq::delta(2.5, 0), a), weights(a));
    check_same(atc(a, b), oracle::brute_atc(weights(a), weights(b), 2.5));
    check_same(atc(a, b), weights(atc(b, a)));
    check_same(atc(atc(a, b), c), weights(atc(a, atc(b, c))));
    CHECK(atc(a, b).expectation() == doctest::Approx(a.expectation() + b.expectation()).epsilon(1e-12));
    CHECK(atc(a, b).total() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(atc(half, ProbSeq(2.0, {1.0})), std::invalid_argument);
}

TEST_CASE("subtraction-type convolution") {
  check_same(stc(ProbSeq::delta(1.0, 3), ProbSeq::delta(1.0, 1)), {0, 0, 1, 0});
  check_same(stc(ProbSeq::delta(1.0, 1), ProbSeq::delta(1.0, 2)), {1, 0});
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_seq(rng, 2.5), c = random_seq(rng, 2.5);
    const auto e = stc(d, c);
    check_same(e, oracle::brute_stc(weights(d), weights(c), 2.5));
    CHECK(e.size() == d.size());
    CHECK(std::abs(e.total() - 1.0) <= 1e-12);
    for (double w : e.weights()) CHECK(w >= 0.0);
    CHECK(e.expectation() >= d.expectation() - c.expectation() - 1e-12);
  }
  CHECK_THROWS_AS(stc(ProbSeq(1.0, {1.0}), ProbSeq(2.0, {1.0})), std::invalid_argument);
}

TEST_CASE("expectation in kW") {
  CHECK(ProbSeq::delta(2.5, 0).expectation() == 0.0);
  CHECK(ProbSeq(2.5, {0.0, 1.0}).expectation() == 2.5);
  CHECK(ProbSeq(2.0, {0.25, 0.5, 0.25}).expectation() == doctest::Approx(2.0));
}

#include "mgswap/equivalent_load.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgswap {

namespace {
// Cumulative sums of a few hundred weights drift by ~1e-15; a quantile that
// should land exactly on alpha must not be pushed one step further.
constexpr double kCumulativeSlack = 1e-12;
constexpr double kReserveSlack = 1e-9;
}  // namespace

PeriodUncertainty combine_sequences(ProbSeq wt, ProbSeq pv, ProbSeq load) {
  ProbSeq joint = atc(wt, pv);
  ProbSeq el = stc(load, joint);
  const double expected = load.expectation() - wt.expectation() - pv.expectation();
  return PeriodUncertainty{std::move(wt), std::move(pv), std::move(joint), std::move(load),
                           std::move(el), expected};
}

PeriodUncertainty build_period_uncertainty(const WindParams& wind, const PvParams& pv,
                                           const LoadParams& load, double q) {
  auto wt_dist = wt_distribution(wind);
  auto pv_dist = pv_distribution(pv);
  auto load_dist = load_distribution(load);
  return combine_sequences(discretize(wt_dist, wt_dist.support_max, q),
                           discretize(pv_dist, pv_dist.support_max, q),
                           discretize(load_dist, load_dist.support_max, q));
}

double covered_probability(double r_total, const ProbSeq& e, double expected_el) {
  double covered = 0.0;
  const double q = e.step();
  for (std::size_t u = 0; u < e.size(); ++u) {
    if (r_total + kReserveSlack >= static_cast<double>(u) * q - expected_el) covered += e[u];
  }
  return covered;
}

double min_reserve_for_confidence(const ProbSeq& e, double expected_el, double alpha) {
  if (alpha > 1.0) throw std::invalid_argument("confidence level must not exceed 1");
  if (alpha <= 0.0) return 0.0;
  double cumulative = 0.0;
  std::size_t quantile = e.max_index();
  for (std::size_t u = 0; u < e.size(); ++u) {
    cumulative += e[u];
    if (cumulative >= alpha - kCumulativeSlack) {
      quantile = u;
      break;
    }
  }
  return std::max(0.0, static_cast<double>(quantile) * e.step() - expected_el);
}

bool chance_constraint_holds(double r_total, const ProbSeq& e, double expected_el, double alpha) {
  return covered_probability(r_total, e, expected_el) >= alpha - kCumulativeSlack;
}

}  // namespace mgswap

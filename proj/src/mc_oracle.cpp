#include "mgswap/mc_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "mgswap/scenario.hpp"
#include "mgswap/stochastic.hpp"

namespace mgswap {

void McConfig::validate() const {
  if (n_samples < 100) throw std::invalid_argument("monte carlo: n_samples must be at least 100");
}

namespace {

// Each period gets its own stream so results do not depend on which other
// periods were sampled.
ScenarioSampler period_sampler(const Scenario& sc, const McConfig& mc, int period) {
  return ScenarioSampler(sc, derive_seed(mc.seed, static_cast<std::uint64_t>(period)));
}

double draw_el(ScenarioSampler& s, const WindParams& wp, const PvParams& pv, const LoadParams& lp) {
  const double wind = wind_power(s.sample_wind_speed(wp), wp);
  const double solar = s.sample_pv(pv);
  const double load = s.sample_load(lp);
  return load - wind - solar;
}

}  // namespace

McEstimate mc_expected_el(const Scenario& sc, int period, const McConfig& mc) {
  mc.validate();
  if (period < 0 || period >= sc.periods()) throw std::out_of_range("monte carlo: period out of range");
  auto sampler = period_sampler(sc, mc, period);
  const auto wp = sc.wind_at(period);
  const auto pv = sc.pv_at(period);
  const auto lp = sc.load_at(period);
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < mc.n_samples; ++i) {
    const double x = draw_el(sampler, wp, pv, lp);
    sum += x;
    sq += x * x;
  }
  const double n = mc.n_samples;
  const double mean = sum / n;
  const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1));
  return {mean, 1.96 * std::sqrt(var / n)};
}

std::vector<double> mc_chance_satisfaction(const std::vector<double>& r_total, const Scenario& sc,
                                           const McConfig& mc, const std::vector<double>& expected_el) {
  mc.validate();
  const int T = sc.periods();
  if (static_cast<int>(r_total.size()) != T || static_cast<int>(expected_el.size()) != T)
    throw std::invalid_argument("monte carlo: reserve and expectation lengths must equal the horizon");
  std::vector<double> out(T, 0.0);
  for (int t = 0; t < T; ++t) {
    auto sampler = period_sampler(sc, mc, t);
    const auto wp = sc.wind_at(t);
    const auto pv = sc.pv_at(t);
    const auto lp = sc.load_at(t);
    int hit = 0;
    for (int i = 0; i < mc.n_samples; ++i)
      if (r_total[t] >= draw_el(sampler, wp, pv, lp) - expected_el[t]) ++hit;
    out[t] = static_cast<double>(hit) / mc.n_samples;
  }
  return out;
}

std::vector<double> mc_chance_satisfaction(const std::vector<double>& r_total, const Scenario& sc,
                                           const McConfig& mc) {
  return mc_chance_satisfaction(r_total, sc, mc, expected_el_profile(build_uncertainty(sc)));
}

}  // namespace mgswap

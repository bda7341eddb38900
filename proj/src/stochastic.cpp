#include "mgswap/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "mgswap/scenario.hpp"

namespace mgswap {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_cdf(double x, double mu, double sigma) {
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}
}  // namespace

void WindParams::validate() const {
  if (!(shape_k > 0) || !(scale_gamma > 0))
    throw std::invalid_argument("wind: shape and scale must be positive");
  if (!(0 < v_in && v_in < v_rated && v_rated < v_out))
    throw std::invalid_argument("wind: need 0 < v_in < v_rated < v_out");
  if (!(p_rated > 0)) throw std::invalid_argument("wind: p_rated must be positive");
}

void PvParams::validate() const {
  if (!(lambda1 > 0) || !(lambda2 > 0))
    throw std::invalid_argument("pv: beta shape parameters must be positive");
  if (p_max < 0) throw std::invalid_argument("pv: p_max must be non-negative");
  if (!(conversion_eta > 0 && conversion_eta <= 1))
    throw std::invalid_argument("pv: conversion efficiency must lie in (0, 1]");
}

void LoadParams::validate() const {
  if (mean_mu < 0) throw std::invalid_argument("load: mean must be non-negative");
  if (sigma_fraction < 0) throw std::invalid_argument("load: sigma fraction must be non-negative");
}

double wind_power(double v, const WindParams& wp) {
  if (v < wp.v_in || v >= wp.v_out) return 0.0;
  if (v >= wp.v_rated) return wp.p_rated;
  return (v - wp.v_in) / (wp.v_rated - wp.v_in) * wp.p_rated;
}

double weibull_cdf(double v, double k, double gamma) {
  if (v <= 0) return 0.0;
  return -std::expm1(-std::pow(v / gamma, k));
}

double WtOutputModel::density(double p) const {
  const auto& w = params;
  if (p <= 0 || p >= w.p_rated) return 0.0;
  const double h = w.v_rated / w.v_in - 1.0;
  const double x = (1.0 + h * p / w.p_rated) * w.v_in / w.scale_gamma;
  return (w.shape_k * h * w.v_in / (w.scale_gamma * w.p_rated)) * std::pow(x, w.shape_k - 1.0) *
         std::exp(-std::pow(x, w.shape_k));
}

double WtOutputModel::mass_at_zero() const {
  const auto& w = params;
  return weibull_cdf(w.v_in, w.shape_k, w.scale_gamma) +
         (1.0 - weibull_cdf(w.v_out, w.shape_k, w.scale_gamma));
}

double WtOutputModel::mass_at_rated() const {
  const auto& w = params;
  return weibull_cdf(w.v_out, w.shape_k, w.scale_gamma) -
         weibull_cdf(w.v_rated, w.shape_k, w.scale_gamma);
}

double WtOutputModel::interval_mass(double lo, double hi) const {
  const auto& w = params;
  lo = std::clamp(lo, 0.0, w.p_rated);
  hi = std::clamp(hi, 0.0, w.p_rated);
  if (hi <= lo) return 0.0;
  auto speed = [&](double p) { return w.v_in + p / w.p_rated * (w.v_rated - w.v_in); };
  return weibull_cdf(speed(hi), w.shape_k, w.scale_gamma) -
         weibull_cdf(speed(lo), w.shape_k, w.scale_gamma);
}

WtOutputModel wt_output_model(const WindParams& wp) {
  wp.validate();
  return WtOutputModel{wp};
}

double wt_output_density(double p, const WindParams& wp) { return wt_output_model(wp).density(p); }

double pv_output_density(double p, const PvParams& pv) {
  if (!(pv.lambda1 > 0) || !(pv.lambda2 > 0))
    throw std::invalid_argument("pv: beta shape parameters must be positive");
  if (!(pv.p_max > 0) || p < 0 || p > pv.p_max) return 0.0;
  const double x = p / pv.p_max;
  const double log_norm =
      std::lgamma(pv.lambda1 + pv.lambda2) - std::lgamma(pv.lambda1) - std::lgamma(pv.lambda2);
  if ((x == 0.0 && pv.lambda1 < 1) || (x == 1.0 && pv.lambda2 < 1))
    return std::numeric_limits<double>::infinity();
  if ((x == 0.0 && pv.lambda1 > 1) || (x == 1.0 && pv.lambda2 > 1)) return 0.0;
  const double lx = x == 0.0 ? 0.0 : (pv.lambda1 - 1) * std::log(x);
  const double l1x = x == 1.0 ? 0.0 : (pv.lambda2 - 1) * std::log1p(-x);
  return std::exp(log_norm + lx + l1x) / pv.p_max;
}

bool load_is_point_mass(const LoadParams& lp) { return lp.sigma() <= 0.0; }

double load_density(double p, const LoadParams& lp) {
  if (load_is_point_mass(lp)) throw std::domain_error("load: zero sigma is a point mass");
  const double s = lp.sigma();
  const double z = (p - lp.mean_mu) / s;
  return kInvSqrt2Pi / s * std::exp(-0.5 * z * z);
}

double ev_arrival_pmf(int n, double lambda_t) {
  if (n < 0) return 0.0;
  if (lambda_t <= 0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-lambda_t + n * std::log(lambda_t) - std::lgamma(n + 1.0));
}

PowerDistribution wt_distribution(const WindParams& wp) {
  const auto model = wt_output_model(wp);
  PowerDistribution d;
  d.interval_mass = [model](double lo, double hi) { return model.interval_mass(lo, hi); };
  d.density = [model](double p) { return model.density(p); };
  d.atoms = {{0.0, model.mass_at_zero()}, {wp.p_rated, model.mass_at_rated()}};
  d.support_max = wp.p_rated;
  return d;
}

PowerDistribution pv_distribution(const PvParams& pv) {
  pv.validate();
  if (pv.p_max <= 0) return point_distribution(0.0);
  PowerDistribution d;
  d.interval_mass = [pv](double lo, double hi) {
    lo = std::clamp(lo / pv.p_max, 0.0, 1.0);
    hi = std::clamp(hi / pv.p_max, 0.0, 1.0);
    if (hi <= lo) return 0.0;
    return boost::math::ibeta(pv.lambda1, pv.lambda2, hi) -
           boost::math::ibeta(pv.lambda1, pv.lambda2, lo);
  };
  d.density = [pv](double p) { return pv_output_density(p, pv); };
  d.support_max = pv.p_max;
  return d;
}

PowerDistribution load_distribution(const LoadParams& lp) {
  lp.validate();
  if (load_is_point_mass(lp)) return point_distribution(lp.mean_mu);
  const double mu = lp.mean_mu;
  const double s = lp.sigma();
  PowerDistribution d;
  d.interval_mass = [mu, s](double lo, double hi) {
    lo = std::max(lo, 0.0);
    if (hi <= lo) return 0.0;
    return normal_cdf(hi, mu, s) - normal_cdf(lo, mu, s);
  };
  d.density = [lp](double p) { return p < 0 ? 0.0 : load_density(p, lp); };
  d.support_max = mu + 6.0 * s;
  return d;
}

PowerDistribution uniform_distribution(double hi) {
  if (!(hi > 0)) throw std::invalid_argument("uniform: upper bound must be positive");
  PowerDistribution d;
  d.interval_mass = [hi](double a, double b) {
    a = std::clamp(a, 0.0, hi);
    b = std::clamp(b, 0.0, hi);
    return b > a ? (b - a) / hi : 0.0;
  };
  d.density = [hi](double p) { return (p >= 0 && p <= hi) ? 1.0 / hi : 0.0; };
  d.support_max = hi;
  return d;
}

PowerDistribution point_distribution(double x) {
  if (x < 0) throw std::invalid_argument("point mass location must be non-negative");
  PowerDistribution d;
  d.interval_mass = [](double, double) { return 0.0; };
  d.density = [](double) { return 0.0; };
  d.atoms = {{x, 1.0}};
  d.support_max = x;
  return d;
}

// ---------------------------------------------------------------------------

ScenarioSampler::ScenarioSampler(const Scenario& scenario, std::uint64_t seed)
    : scenario_(scenario), rng_(seed) {}

double ScenarioSampler::sample_wind_speed(const WindParams& wp) {
  std::weibull_distribution<double> dist(wp.shape_k, wp.scale_gamma);
  return dist(rng_);
}

double ScenarioSampler::sample_pv(const PvParams& pv) {
  if (pv.p_max <= 0) return 0.0;
  std::gamma_distribution<double> g1(pv.lambda1, 1.0);
  std::gamma_distribution<double> g2(pv.lambda2, 1.0);
  const double a = g1(rng_);
  const double b = g2(rng_);
  return pv.p_max * a / (a + b);
}

double ScenarioSampler::sample_load(const LoadParams& lp) {
  if (load_is_point_mass(lp)) return lp.mean_mu;
  std::normal_distribution<double> dist(lp.mean_mu, lp.sigma());
  // Truncated at zero, matching the discretized model.
  for (;;) {
    const double x = dist(rng_);
    if (x >= 0) return x;
  }
}

int ScenarioSampler::sample_arrivals(double lambda_t) {
  if (lambda_t <= 0) return 0;
  std::poisson_distribution<int> dist(lambda_t);
  return dist(rng_);
}

PeriodDraws ScenarioSampler::sample_period(int period, int count) {
  if (count < 1) throw std::invalid_argument("sampler: count must be at least 1");
  const auto wp = scenario_.wind_at(period);
  const auto pv = scenario_.pv_at(period);
  const auto lp = scenario_.load_at(period);
  const double lambda_t = scenario_.ev_rate.at(period) * scenario_.delta_t;
  PeriodDraws out;
  out.wind_speed.reserve(count);
  out.wind_power.reserve(count);
  out.pv_power.reserve(count);
  out.load.reserve(count);
  out.arrivals.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double v = sample_wind_speed(wp);
    out.wind_speed.push_back(v);
    out.wind_power.push_back(wind_power(v, wp));
    out.pv_power.push_back(sample_pv(pv));
    out.load.push_back(sample_load(lp));
    out.arrivals.push_back(sample_arrivals(lambda_t));
  }
  return out;
}

std::vector<PeriodDraws> ScenarioSampler::sample_all(int count) {
  std::vector<PeriodDraws> out;
  out.reserve(scenario_.periods());
  for (int t = 0; t < scenario_.periods(); ++t) out.push_back(sample_period(t, count));
  return out;
}

std::vector<PeriodDraws> sample_scenario_draws(const Scenario& scenario, std::uint64_t seed,
                                               int count) {
  ScenarioSampler sampler(scenario, seed);
  return sampler.sample_all(count);
}

std::vector<int> draw_arrival_profile(const std::vector<double>& rates, double delta_t,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> out;
  out.reserve(rates.size());
  for (double r : rates) {
    const double lambda_t = r * delta_t;
    if (lambda_t <= 0) {
      out.push_back(0);
      continue;
    }
    std::poisson_distribution<int> dist(lambda_t);
    out.push_back(dist(rng));
  }
  return out;
}

}  // namespace mgswap

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace mgswap {

struct Scenario;

/// Weibull wind resource plus the piecewise-linear turbine power curve.
struct WindParams {
  double shape_k = 2.0;
  double scale_gamma = 8.0;  // m/s
  double v_in = 3.0;         // m/s
  double v_rated = 15.0;     // m/s
  double v_out = 25.0;       // m/s
  double p_rated = 60.0;     // kW

  void validate() const;
};

/// Beta-distributed PV output on [0, p_max]. `area`, `conversion_eta` and
/// `r_max` describe the panel; p_max = r_max * area * eta / 1000.
struct PvParams {
  double lambda1 = 2.0;
  double lambda2 = 2.0;
  double p_max = 120.0;  // kW
  double conversion_eta = 0.093;
  double area = 1300.0;  // m^2
  double r_max = 992.6;  // W/m^2

  void validate() const;
};

/// Normal load with sigma = sigma_fraction * mean.
struct LoadParams {
  double mean_mu = 0.0;  // kW
  double sigma_fraction = 0.10;

  double sigma() const { return sigma_fraction * mean_mu; }
  void validate() const;
};

struct EvArrivalParams {
  double arrival_rate_lambda = 0.0;  // vehicles per hour
};

struct PointMass {
  double location = 0.0;  // kW
  double probability = 0.0;
};

/// A power distribution on [0, support_max] split into a continuous part
/// (queried by interval) and a list of atoms. Used as the input to
/// discretization.
struct PowerDistribution {
  std::function<double(double, double)> interval_mass;  // continuous mass on [lo, hi)
  std::function<double(double)> density;                // continuous density
  std::vector<PointMass> atoms;
  double support_max = 0.0;
};

double wind_power(double v, const WindParams& wp);

double weibull_cdf(double v, double k, double gamma);

/// Wind-turbine output: continuous density on (0, p_rated) and the two atoms
/// produced by the flat parts of the power curve.
struct WtOutputModel {
  double density(double p) const;
  double mass_at_zero() const;
  double mass_at_rated() const;
  double interval_mass(double lo, double hi) const;

  WindParams params;
};

WtOutputModel wt_output_model(const WindParams& wp);
double wt_output_density(double p, const WindParams& wp);

/// Throws std::invalid_argument for non-positive shape parameters.
double pv_output_density(double p, const PvParams& pv);

/// Normal density. A zero sigma has no density; callers must check
/// `load_is_point_mass` first (throws std::domain_error otherwise).
double load_density(double p, const LoadParams& lp);
bool load_is_point_mass(const LoadParams& lp);

double ev_arrival_pmf(int n, double lambda_t);

PowerDistribution wt_distribution(const WindParams& wp);
PowerDistribution pv_distribution(const PvParams& pv);
/// Normal load truncated at 0 kW; support extends to mean + 6 sigma.
PowerDistribution load_distribution(const LoadParams& lp);
PowerDistribution uniform_distribution(double hi);
PowerDistribution point_distribution(double x);

/// One period's worth of independent draws.
struct PeriodDraws {
  std::vector<double> wind_speed;
  std::vector<double> wind_power;
  std::vector<double> pv_power;
  std::vector<double> load;
  std::vector<int> arrivals;
};

/// Seeded sampler over the four continuous/discrete models of a scenario.
/// Owns its generator; use one instance per thread.
class ScenarioSampler {
 public:
  ScenarioSampler(const Scenario& scenario, std::uint64_t seed);

  PeriodDraws sample_period(int period, int count);
  std::vector<PeriodDraws> sample_all(int count);

  double sample_wind_speed(const WindParams& wp);
  double sample_pv(const PvParams& pv);
  double sample_load(const LoadParams& lp);
  int sample_arrivals(double lambda_t);

 private:
  const Scenario& scenario_;
  std::mt19937_64 rng_;
};

std::vector<PeriodDraws> sample_scenario_draws(const Scenario& scenario, std::uint64_t seed,
                                               int count);

/// One Poisson-drawn swap-demand profile (the fixed arrivals the BSS plans for).
std::vector<int> draw_arrival_profile(const std::vector<double>& rates, double delta_t,
                                      std::uint64_t seed);

}  // namespace mgswap

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgswap/bba.hpp"
#include "mgswap/bss_model.hpp"
#include "mgswap/equivalent_load.hpp"
#include "mgswap/jaya.hpp"
#include "mgswap/pricing.hpp"
#include "mgswap/stochastic.hpp"
#include "mgswap/upper_level.hpp"

namespace mgswap {

struct SolverSettings {
  JayaConfig jaya;
  BbaConfig bba;
  int max_iterations = 10;        // alternations of the joint loop
  double alpha_decrement = 0.05;  // confidence relaxation on an infeasible upper level
  bool normalized_selection = false;
  int mc_samples = 500;
};

/// A full day-ahead problem instance.
///
/// Wind, PV and load share one parameter block each; the per-period arrays
/// override the Weibull scale, the PV capacity and the load mean.
struct Scenario {
  std::string name = "default";
  int horizon = 24;      // periods
  double delta_t = 1.0;  // h

  WindParams wind;
  std::vector<double> wind_scale;  // Weibull scale per period, m/s
  PvParams pv;
  std::vector<double> pv_max;  // available PV capacity per period, kW
  double load_sigma_fraction = 0.10;
  std::vector<double> load_mean;  // kW
  std::vector<double> ev_rate;    // arrivals per hour

  std::vector<MtParams> mts;
  BssParams bss;
  PriceParams price;

  double alpha = 0.9;
  double step_q = 2.5;
  /// Controllable-load cap in kW; negative selects wind rating + PV capacity.
  double cnload_cap = -1.0;
  /// Exogenous grid price for the fixed-price case; empty means flat at the
  /// reference price.
  std::vector<double> grid_price;

  SolverSettings solver;
  std::uint64_t seed = 20190101;

  int periods() const { return horizon; }
  WindParams wind_at(int t) const;
  PvParams pv_at(int t) const;
  LoadParams load_at(int t) const;
  double cnload_cap_at(int t) const;
  std::vector<double> grid_price_track() const;

  /// Throws std::invalid_argument listing every problem found.
  void validate() const;
  std::vector<std::string> validation_errors() const;
};

/// Sequences for every period of a scenario.
std::vector<PeriodUncertainty> build_uncertainty(const Scenario& s);
std::vector<double> expected_el_profile(const std::vector<PeriodUncertainty>& u);

/// The shipped synthetic 24-hour test system.
Scenario default_scenario();

/// Independent sub-seed for one consumer of randomness (arrivals, search,
/// sampling) derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

namespace seed_stream {
constexpr std::uint64_t arrivals = 1;
constexpr std::uint64_t jaya = 2;
constexpr std::uint64_t monte_carlo = 3;
}  // namespace seed_stream

/// The MT fleet of the test system (fixed fuel, variable fuel, startup,
/// reserve cost, limits).
std::vector<MtParams> default_mt_fleet();

}  // namespace mgswap

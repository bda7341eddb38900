#pragma once

#include <cstdint>
#include <vector>

namespace mgswap {

struct Scenario;

struct McConfig {
  int n_samples = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;       // kW
  double half_width = 0.0; // 95% confidence half-width, kW
};

/// Sample mean of load - wind - pv in one period, drawn from the continuous
/// models (so discretization error is part of what it measures).
McEstimate mc_expected_el(const Scenario& sc, int period, const McConfig& mc);

/// Per-period fraction of draws where r_total >= (L - WT - PV) - expected_el.
std::vector<double> mc_chance_satisfaction(const std::vector<double>& r_total, const Scenario& sc,
                                           const McConfig& mc, const std::vector<double>& expected_el);
/// Same, with expected_el taken from the scenario's sequences.
std::vector<double> mc_chance_satisfaction(const std::vector<double>& r_total, const Scenario& sc,
                                           const McConfig& mc);

}  // namespace mgswap

#include "mgswap/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mgswap {

WindParams Scenario::wind_at(int t) const {
  WindParams w = wind;
  if (!wind_scale.empty()) w.scale_gamma = wind_scale.at(t);
  return w;
}

PvParams Scenario::pv_at(int t) const {
  PvParams p = pv;
  if (!pv_max.empty()) p.p_max = pv_max.at(t);
  return p;
}

LoadParams Scenario::load_at(int t) const { return LoadParams{load_mean.at(t), load_sigma_fraction}; }

double Scenario::cnload_cap_at(int t) const {
  if (cnload_cap >= 0) return cnload_cap;
  return wind.p_rated + pv_at(t).p_max;
}

std::vector<double> Scenario::grid_price_track() const {
  if (grid_price.empty()) return std::vector<double>(periods(), price.reference_price);
  return grid_price;
}

std::vector<std::string> Scenario::validation_errors() const {
  std::vector<std::string> err;
  auto check = [&](bool ok, const std::string& path, const std::string& what) {
    if (!ok) err.push_back(path + ": " + what);
  };
  const int T = periods();
  check(T >= 1, "horizon", "need at least one period");
  check(delta_t > 0, "delta_t", "must be positive");
  auto same_len = [&](const std::vector<double>& v, const std::string& path, bool optional) {
    if (optional && v.empty()) return;
    check(static_cast<int>(v.size()) == T,
          path, "length " + std::to_string(v.size()) + " differs from horizon " + std::to_string(T));
  };
  same_len(load_mean, "load_mean", false);
  same_len(wind_scale, "wind_scale", true);
  same_len(pv_max, "pv_max", true);
  same_len(ev_rate, "ev_rate", false);
  same_len(grid_price, "grid_price", true);
  for (std::size_t i = 0; i < load_mean.size(); ++i)
    check(load_mean[i] >= 0, "load_mean[" + std::to_string(i) + "]", "must be non-negative");
  for (std::size_t i = 0; i < ev_rate.size(); ++i)
    check(ev_rate[i] >= 0, "ev_rate[" + std::to_string(i) + "]", "must be non-negative");
  for (std::size_t i = 0; i < wind_scale.size(); ++i)
    check(wind_scale[i] > 0, "wind_scale[" + std::to_string(i) + "]", "must be positive");
  for (std::size_t i = 0; i < pv_max.size(); ++i)
    check(pv_max[i] >= 0, "pv_max[" + std::to_string(i) + "]", "must be non-negative");
  check(load_sigma_fraction >= 0, "load_sigma_fraction", "must be non-negative");
  check(wind.shape_k > 0, "wind.shape_k", "must be positive");
  check(wind.scale_gamma > 0, "wind.scale_gamma", "must be positive");
  check(wind.v_in > 0, "wind.v_in", "must be positive");
  check(wind.v_rated > wind.v_in, "wind.v_rated", "must exceed v_in");
  check(wind.v_out > wind.v_rated, "wind.v_out", "must exceed v_rated");
  check(wind.p_rated > 0, "wind.p_rated", "must be positive");
  check(pv.lambda1 > 0, "pv.lambda1", "must be positive");
  check(pv.lambda2 > 0, "pv.lambda2", "must be positive");
  check(pv.p_max >= 0, "pv.p_max", "must be non-negative");
  check(pv.conversion_eta > 0 && pv.conversion_eta <= 1, "pv.conversion_eta", "must lie in (0, 1]");
  check(bss.p_ch_rated >= 0, "bss.p_ch_rated", "must be non-negative");
  check(bss.p_dc_rated >= 0, "bss.p_dc_rated", "must be non-negative");
  check(bss.eta_ch > 0 && bss.eta_ch <= 1, "bss.eta_ch", "must lie in (0, 1]");
  check(bss.eta_dc > 0 && bss.eta_dc <= 1, "bss.eta_dc", "must lie in (0, 1]");
  check(bss.c_min >= 0, "bss.c_min", "must be non-negative");
  check(bss.c_max > bss.c_min, "bss.c_max", "must exceed c_min");
  check(bss.c_init >= bss.c_min && bss.c_init <= bss.c_max, "bss.c_init", "must lie in [c_min, c_max]");
  check(bss.battery_capacity > 0, "bss.battery_capacity", "must be positive");
  check(bss.n_batteries >= 0, "bss.n_batteries", "must be non-negative");
  check(bss.n_positions >= 0 && bss.n_positions <= bss.n_batteries, "bss.n_positions",
        "must lie in [0, n_batteries]");
  check(bss.depreciation_tau >= 0, "bss.depreciation_tau", "must be non-negative");
  check(bss.max_cycles >= 0, "bss.max_cycles", "must be non-negative");
  check(bss.per_battery_c_min >= 0, "bss.per_battery_c_min", "must be non-negative");
  check(bss.per_battery_c_max > bss.per_battery_c_min, "bss.per_battery_c_max", "must exceed per_battery_c_min");
  check(bss.per_battery_p_ch >= 0, "bss.per_battery_p_ch", "must be non-negative");
  check(bss.per_battery_p_dc >= 0, "bss.per_battery_p_dc", "must be non-negative");
  check(bss.per_battery_eta_ch > 0 && bss.per_battery_eta_ch <= 1, "bss.per_battery_eta_ch", "must lie in (0, 1]");
  check(bss.per_battery_eta_dc > 0 && bss.per_battery_eta_dc <= 1, "bss.per_battery_eta_dc", "must lie in (0, 1]");
  check(price.reference_price > 0, "price.reference_price", "must be positive");
  check(price.reserve_price > 0, "price.reserve_price", "must be positive");
  check(price.swap_price > 0, "price.swap_price", "must be positive");
  check(price.reference_el_power > 0, "price.reference_el_power", "must be positive");
  check(price.delta_t > 0, "price.delta_t", "must be positive");
  check(!mts.empty(), "mts", "need at least one unit");
  for (std::size_t i = 0; i < mts.size(); ++i) {
    const std::string at = "mts[" + std::to_string(i) + "].";
    check(mts[i].p_min >= 0, at + "p_min", "must be non-negative");
    check(mts[i].p_max >= mts[i].p_min, at + "p_max", "must not be below p_min");
    check(mts[i].fixed_fuel_cost >= 0, at + "fixed_fuel_cost", "must be non-negative");
    check(mts[i].variable_fuel_cost >= 0, at + "variable_fuel_cost", "must be non-negative");
    check(mts[i].startup_cost >= 0, at + "startup_cost", "must be non-negative");
    check(mts[i].reserve_cost >= 0, at + "reserve_cost", "must be non-negative");
  }
  check(alpha > 0 && alpha <= 1, "alpha", "must lie in (0, 1]");
  check(step_q > 0, "step_q", "must be positive");
  check(std::abs(price.delta_t - delta_t) < 1e-12, "price.delta_t", "must equal delta_t");
  check(solver.jaya.population_size >= 2, "solver.jaya.population_size", "must be at least 2");
  check(solver.jaya.max_generations >= 1, "solver.jaya.max_generations", "must be at least 1");
  check(solver.jaya.penalty_weight >= 0, "solver.jaya.penalty_weight", "must be non-negative");
  check(solver.max_iterations >= 1, "solver.max_iterations", "must be at least 1");
  check(solver.alpha_decrement >= 0 && solver.alpha_decrement < 1, "solver.alpha_decrement", "must lie in [0, 1)");
  check(solver.bba.node_limit >= 1, "solver.bba.node_limit", "must be at least 1");
  check(solver.mc_samples >= 100, "solver.mc_samples", "must be at least 100");
  return err;
}

void Scenario::validate() const {
  const auto err = validation_errors();
  if (err.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario (" << err.size() << " problem" << (err.size() == 1 ? "" : "s") << "):";
  for (const auto& e : err) msg << "\n  " << e;
  throw std::invalid_argument(msg.str());
}

std::vector<PeriodUncertainty> build_uncertainty(const Scenario& s) {
  std::vector<PeriodUncertainty> out;
  out.reserve(s.periods());
  for (int t = 0; t < s.periods(); ++t)
    out.push_back(build_period_uncertainty(s.wind_at(t), s.pv_at(t), s.load_at(t), s.step_q));
  return out;
}

std::vector<double> expected_el_profile(const std::vector<PeriodUncertainty>& u) {
  std::vector<double> e;
  e.reserve(u.size());
  for (const auto& p : u) e.push_back(p.expected_el);
  return e;
}

std::vector<MtParams> default_mt_fleet() {
  return {
      {"MT1", 1.2, 0.35, 1.6, 0.04, 5.0, 35.0},
      {"MT2", 1.2, 0.35, 1.6, 0.04, 5.0, 30.0},
      {"MT3", 1.0, 0.26, 3.5, 0.04, 10.0, 65.0},
  };
}

Scenario default_scenario() {
  Scenario s;
  s.name = "default (synthetic hourly profiles)";
  // Calmer around midday, windier at night.
  s.wind_scale = {10.0, 10.2, 10.4, 10.4, 10.2, 9.8, 9.2, 8.6, 8.0, 7.6, 7.2, 7.0,
                  7.0,  7.2,  7.4,  7.8,  8.2, 8.6, 9.0, 9.4, 9.6, 9.8, 9.9, 10.0};
  s.pv_max.assign(24, 0.0);
  for (int t = 6; t <= 18; ++t) s.pv_max[t] = std::round(120.0 * std::sin(std::numbers::pi * (t - 6) / 12.0) * 10) / 10;
  s.load_mean = {62,  58,  56,  55,  57,  63,  74,  86,  96,  102, 106, 110,
                 108, 104, 102, 104, 110, 118, 124, 122, 112, 96,  82,  70};
  s.ev_rate = {0.2, 0.1, 0.1, 0.1, 0.2, 0.5, 1.0, 2.0, 2.5, 1.5, 1.0, 1.0,
               1.2, 1.0, 1.0, 1.2, 1.5, 2.5, 2.5, 2.0, 1.5, 1.0, 0.5, 0.3};
  s.mts = default_mt_fleet();
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 over the pair
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace mgswap

#pragma once

#include <vector>

#include "mgswap/bba.hpp"
#include "mgswap/errors.hpp"
#include "mgswap/lp.hpp"
#include "mgswap/pricing.hpp"

namespace mgswap {

/// Battery swapping station. Station ratings aggregate the per-battery ones
/// over the charge/discharge positions; energies are for the whole fleet.
struct BssParams {
  double p_ch_rated = 30.0;  // kW, station
  double p_dc_rated = 60.0;  // kW, station
  double eta_ch = 0.95;
  double eta_dc = 0.95;
  double c_min = 60.8;   // kWh
  double c_max = 304.0;  // kWh
  double c_init = 228.0;  // kWh
  double battery_capacity = 19.0;  // kWh, rated per battery
  int n_batteries = 16;
  int n_positions = 4;
  double depreciation_tau = 3.0;  // $ per cycle
  double max_cycles = 2.0;
  double per_battery_c_min = 3.8;   // kWh
  double per_battery_c_max = 19.0;  // kWh
  double per_battery_p_ch = 7.5;    // kW
  double per_battery_p_dc = 15.0;   // kW
  double per_battery_eta_ch = 0.95;
  double per_battery_eta_dc = 0.95;

  /// Energy handed to an EV by one swap (full battery out, empty in).
  double swap_energy() const { return per_battery_c_max - per_battery_c_min; }
  void validate() const;
};

/// What the microgrid lets the station do in each period. Empty vectors mean
/// no limit beyond the station's own ratings.
struct BssCoupling {
  std::vector<double> charge_cap;     // kW
  std::vector<double> discharge_cap;  // kW
  std::vector<double> reserve_cap;    // kW

  static BssCoupling unlimited() { return {}; }
  static BssCoupling closed(int periods);
};

struct LowerSchedule {
  std::vector<int> bss_mode;         // 1 = trade, 0 = reserve
  std::vector<double> p_ch;          // kW
  std::vector<double> p_dc;          // kW
  std::vector<double> reserve;       // kW
  std::vector<double> traded;        // kWh, (p_ch - p_dc) * dt
  std::vector<double> energy;        // kWh at the start of each period, plus the final value
  std::vector<int> n_full, n_empty, n_ch, n_dc;
  std::vector<int> served;           // swaps performed
  std::vector<int> arrivals;         // swap demand

  int periods() const { return static_cast<int>(bss_mode.size()); }
  /// An idle station: reserve mode, no trade, no reserve, no swaps.
  static LowerSchedule idle(int periods, const BssParams& bss);
};

struct BssProfitBreakdown {
  double trade = 0.0;
  double swap_income = 0.0;
  double depreciation = 0.0;
  double reserve_income = 0.0;
  double total() const { return trade + swap_income - depreciation + reserve_income; }
};

std::vector<BssProfitBreakdown> bss_profit_by_period(const LowerSchedule& s, const PriceTrack& prices,
                                                     const PriceParams& pp, const BssParams& bss);
double bss_profit(const LowerSchedule& s, const PriceTrack& prices, const PriceParams& pp,
                  const BssParams& bss);

/// Column indices of the compiled program, one entry per period.
struct BssVariables {
  std::vector<int> mode, discharging, n_ch, n_dc, n_full, served;
  std::vector<int> p_ch, p_dc, reserve, energy_next;
};

struct BssMilp {
  MilpInstance instance;
  BssVariables vars;
  int periods = 0;
  double delta_t = 1.0;
};

BssMilp compile_milp(const PriceTrack& prices, const std::vector<int>& arrivals,
                     const BssParams& bss, const PriceParams& pp,
                     const BssCoupling& coupling = BssCoupling::unlimited());

/// The always-feasible reserve-mode assignment used as the first incumbent.
std::vector<double> idle_assignment(const BssMilp& milp, const BssParams& bss);
/// Problem-aware rounding of a relaxation point (ceil on battery counts).
std::vector<double> round_assignment(const BssMilp& milp, const BssParams& bss,
                                     const std::vector<double>& x);

LowerSchedule decode_schedule(const BssMilp& milp, const std::vector<double>& x,
                              const BssParams& bss, const std::vector<int>& arrivals);

struct LowerResult {
  LowerSchedule schedule;
  double f2 = 0.0;
  MilpResult milp;
  int variables = 0;
  int constraints = 0;
};

/// Compile and solve exactly. Throws InfeasibleError when the program has no
/// feasible point.
LowerResult solve_lower(const PriceTrack& prices, const std::vector<int>& arrivals,
                        const BssParams& bss, const PriceParams& pp,
                        const BssCoupling& coupling = BssCoupling::unlimited(),
                        const BbaConfig& cfg = {});
/// Same, for an already compiled program whose objective may have been
/// replaced. F2 is still the station's profit at `prices`.
LowerResult solve_lower(const BssMilp& milp, const PriceTrack& prices, const std::vector<int>& arrivals,
                        const BssParams& bss, const PriceParams& pp, const BbaConfig& cfg = {});

/// Largest violation of the station constraints (rated powers, energy
/// recursion and corridor, reserve cap, counts, positions, cycles).
double lower_violation(const LowerSchedule& s, const BssParams& bss, const BssCoupling& coupling,
                       double delta_t);

}  // namespace mgswap

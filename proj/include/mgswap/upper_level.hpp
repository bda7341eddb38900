#pragma once

#include <string>
#include <vector>

#include "mgswap/bss_model.hpp"
#include "mgswap/equivalent_load.hpp"
#include "mgswap/errors.hpp"
#include "mgswap/jaya.hpp"
#include "mgswap/pricing.hpp"

namespace mgswap {

struct Scenario;

struct MtParams {
  std::string name;
  double fixed_fuel_cost = 0.0;     // $ per on-hour
  double variable_fuel_cost = 0.0;  // $/kWh
  double startup_cost = 0.0;        // $
  double reserve_cost = 0.0;        // $/kW
  double p_min = 0.0;               // kW
  double p_max = 0.0;               // kW

  void validate() const;
};

/// Microgrid schedule. Unit arrays are indexed [unit][period]; the station
/// fields are the lower level's decisions, held fixed here.
struct UpperSchedule {
  std::vector<std::vector<int>> on;
  std::vector<std::vector<int>> startup;
  std::vector<std::vector<double>> output;   // kW
  std::vector<std::vector<double>> reserve;  // kW
  std::vector<double> cnload;                // kW
  std::vector<double> expected_el;           // kW
  std::vector<int> bss_mode;
  std::vector<double> bss_charge;     // kW
  std::vector<double> bss_discharge;  // kW
  std::vector<double> traded;         // kWh
  std::vector<double> bss_reserve;    // kW

  int periods() const { return static_cast<int>(cnload.size()); }
  int units() const { return static_cast<int>(on.size()); }
  double total_output(int t) const;
  double total_reserve(int t) const;
  static UpperSchedule blank(int units, int periods);
};

/// Copy the station's decisions into the microgrid schedule (all zero when
/// `lower` is null).
void attach_lower(UpperSchedule& s, const LowerSchedule* lower);

struct ImgCostBreakdown {
  double trade = 0.0;  // -price * S_B * U_B
  double mt_reserve = 0.0;
  double startup = 0.0;
  double fuel = 0.0;
  double bss_reserve = 0.0;
  double total() const { return trade + mt_reserve + startup + fuel + bss_reserve; }
};

std::vector<ImgCostBreakdown> img_cost_by_period(const UpperSchedule& s, const PriceTrack& prices,
                                                 const std::vector<MtParams>& mts, const PriceParams& pp);
double img_net_cost(const UpperSchedule& s, const PriceTrack& prices, const std::vector<MtParams>& mts,
                    const PriceParams& pp);

struct Violation {
  std::string constraint;  // balance, output, headroom, startup, cnload, chance
  int period = -1;
  int unit = -1;
  double amount = 0.0;
};

struct FeasibilityReport {
  std::vector<Violation> items;
  bool ok() const { return items.empty(); }
  double worst() const;
  std::string summary() const;
};

/// Never throws on infeasible data; every failed check becomes an entry.
/// `cnload_cap` may be empty (no upper limit checked).
FeasibilityReport check_feasibility(const UpperSchedule& s, const std::vector<PeriodUncertainty>& u,
                                    double alpha, const std::vector<MtParams>& mts,
                                    const std::vector<double>& cnload_cap = {}, double tol = 1e-6);

/// Per-period data the dispatcher needs.
struct UpperInputs {
  std::vector<double> expected_el;
  std::vector<double> reserve_requirement;  // minimum total reserve at alpha
  std::vector<double> cnload_cap;
};

UpperInputs upper_inputs(const Scenario& sc, const std::vector<PeriodUncertainty>& u, double alpha);

/// Dispatch a commitment exactly: outputs in variable-cost order from the
/// minimum-output point, controllable load for any surplus, reserves on the
/// remaining headroom in reserve-cost order. The commitment is first repaired
/// (units switched on while capacity is short, off while surplus exceeds the
/// controllable-load cap). Returns the total unrepaired violation in kW.
double dispatch_commitment(UpperSchedule& s, const UpperInputs& in, const std::vector<MtParams>& mts);

struct UpperResult {
  UpperSchedule schedule;
  double f1 = 0.0;
  std::vector<double> history;
  long evaluations = 0;
};

/// Optimize the commitment with JAYA over the on/off genes. `lower` is the
/// station schedule from the previous alternation, or null to run without the
/// station. Throws InfeasibleError when the best schedule still violates a
/// constraint.
UpperResult solve_upper(const Scenario& sc, const std::vector<PeriodUncertainty>& u,
                        const LowerSchedule* lower, const PriceTrack& prices, const JayaConfig& cfg,
                        double alpha);

}  // namespace mgswap

#pragma once

#include <string>
#include <vector>

#include "mgswap/bss_model.hpp"
#include "mgswap/equivalent_load.hpp"
#include "mgswap/pricing.hpp"
#include "mgswap/scenario.hpp"
#include "mgswap/upper_level.hpp"

namespace mgswap {

struct IterationRecord {
  int iteration = 0;
  PriceTrack price_track;
  UpperSchedule upper;
  LowerSchedule lower;
  double f1_jo = 0.0;
  double f2_jo = 0.0;
};

/// One of the comparison strategies: both schedules and both objectives,
/// each evaluated at the price track stored alongside.
struct StrategyOutcome {
  std::string name;
  PriceTrack prices;
  UpperSchedule upper;
  LowerSchedule lower;
  double f1 = 0.0;
  double f2 = 0.0;
  BssCoupling envelope;  // trade allowed by the standalone microgrid schedule
};

struct JointResult {
  IterationRecord chosen;
  int chosen_index = 0;
  double f1_io = 0.0;
  double f2_io = 0.0;
  std::vector<IterationRecord> all_records;
  double distance = 0.0;
  double alpha_used = 0.0;
  std::vector<std::string> trace;  // confidence relaxations and other notes
  StrategyOutcome strategy1;       // microgrid alone
  StrategyOutcome strategy3;       // station alone
  BssCoupling envelope;
};

/// Everything a run derives once from the scenario: sequences, expected
/// equivalent loads and the drawn swap-demand profile.
struct RunContext {
  Scenario scenario;
  std::vector<PeriodUncertainty> uncertainty;
  std::vector<double> expected_el;
  std::vector<int> arrivals;
};

RunContext make_context(const Scenario& sc);

/// Prices with the station's trade left out (mode 1, zero traded energy).
PriceTrack base_price_track(const RunContext& ctx);

/// The microgrid's adjustable power around a schedule: charging may use the
/// committed capacity beyond output and the full reserve requirement;
/// discharging may displace output down to the committed minimums plus the
/// controllable-load cap; reserve offers are capped at the requirement.
BssCoupling adjustable_envelope(const UpperSchedule& s, const UpperInputs& in,
                                const std::vector<MtParams>& mts);

/// Strategy 1: the microgrid schedules alone (no trade, no station reserve),
/// which fixes its adjustable envelope. It then picks the station schedule
/// that serves its own cost inside that envelope (marginal fuel and reserve
/// savings against the trade price) and re-dispatches around it, keeping
/// whichever of the two is cheaper. F2 is the station's profit under the
/// schedule kept.
StrategyOutcome solve_img_independent(const RunContext& ctx, double alpha, std::uint64_t jaya_seed);

/// Strategy 3: the station optimizes against the price without its own trade,
/// inside the envelope of the strategy-1 schedule; the microgrid then
/// re-dispatches around it.
StrategyOutcome solve_bss_independent(const RunContext& ctx, const StrategyOutcome& s1, double alpha,
                                      std::uint64_t jaya_seed);

/// A strategy run on its own, with the same seeds and one-step confidence
/// relaxation as inside solve_joint.
struct StrategyRun {
  StrategyOutcome outcome;
  double alpha_used = 0.0;
  std::vector<std::string> trace;
};
StrategyRun run_img_independent(const RunContext& ctx);
/// Runs strategy 1 first for the envelope.
StrategyRun run_bss_independent(const RunContext& ctx);

/// Euclidean distance to the independent optima; with `normalized` each
/// axis is divided by the magnitude of its independent value.
double compromise_distance(double f1, double f2, double f1_io, double f2_io, bool normalized = false);

/// Index of the record closest to (f1_io, f2_io); ties go to the earliest.
/// Throws std::invalid_argument on an empty list.
int select_optimal_index(const std::vector<IterationRecord>& records, double f1_io, double f2_io,
                         bool normalized = false);
const IterationRecord& select_optimal(const std::vector<IterationRecord>& records, double f1_io,
                                      double f2_io, bool normalized = false);

/// The alternating loop. `max_iterations` <= 0 uses the scenario setting.
/// Throws InfeasibleError when the microgrid stays infeasible after one
/// confidence relaxation.
JointResult solve_joint(const Scenario& sc, int max_iterations = 0);
JointResult solve_joint(const RunContext& ctx, int max_iterations = 0);

/// Fixed grid price (case 1) against the demand-response price (case 2).
struct PricingComparison {
  StrategyOutcome case1;
  StrategyOutcome case2;
};
PricingComparison compare_pricing(const Scenario& sc);
/// Case 2 is the chosen record of `joint`; only case 1 is solved here.
PricingComparison compare_pricing(const RunContext& ctx, const JointResult& joint);

struct AlphaSweepRow {
  double alpha = 0.0;
  double alpha_used = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double mt_reserve = 0.0;   // kWh over the horizon
  double bss_reserve = 0.0;  // kWh over the horizon
  double total_reserve() const { return mt_reserve + bss_reserve; }
  JointResult result;
};
std::vector<AlphaSweepRow> sweep_alpha(const Scenario& sc, const std::vector<double>& alphas);

}  // namespace mgswap

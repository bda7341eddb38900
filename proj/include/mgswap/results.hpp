#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mgswap/coordinator.hpp"

namespace mgswap {

struct AlphaRun {
  double alpha = 0.0;       // requested
  double alpha_used = 0.0;  // after any relaxation
  StrategyOutcome outcome;  // the chosen joint record
};

/// What a run leaves behind. Only schedules, price tracks, the scenario and
/// the drawn arrivals are stored; every table below is recomputed from them.
struct ResultBundle {
  std::string command;
  std::string version;
  Scenario scenario;
  std::vector<int> arrivals;

  StrategyOutcome solution;  // the schedule the command produced
  int chosen_index = -1;     // joint runs: record picked by the compromise rule
  int records = 0;
  double f1_io = 0.0, f2_io = 0.0, distance = 0.0, alpha_used = 0.0;

  std::vector<StrategyOutcome> strategies;  // img-independent, joint, bss-independent
  std::vector<StrategyOutcome> cases;       // grid-price, real-time-price
  std::vector<AlphaRun> alpha_runs;

  std::vector<std::string> trace;
  std::vector<std::pair<std::string, double>> timings;  // seconds; not part of the result proper
};

StrategyOutcome as_outcome(const IterationRecord& rec, std::string name);

ResultBundle bundle_joint(const RunContext& ctx, const JointResult& r);
ResultBundle bundle_pricing(const RunContext& ctx, const PricingComparison& p);
ResultBundle bundle_sweep(const RunContext& ctx, const std::vector<AlphaSweepRow>& rows);

struct HourlyEconomics {
  ImgCostBreakdown img;
  BssProfitBreakdown bss;
};
std::vector<HourlyEconomics> hourly_economics(const StrategyOutcome& o, const Scenario& sc);

/// F1 and F2 of an outcome evaluated from its schedules and prices.
std::pair<double, double> recompute_objectives(const StrategyOutcome& o, const Scenario& sc);

struct ProviderReserve {
  double alpha = 0.0;
  double mt = 0.0;   // kWh over the horizon
  double bss = 0.0;  // kWh over the horizon
  double total() const { return mt + bss; }
};
ProviderReserve provider_reserve(const StrategyOutcome& o, double alpha, double delta_t);

/// Full-precision JSON. `with_timings=false` drops the wall-clock section so
/// two runs can be compared byte for byte.
nlohmann::json bundle_to_json(const ResultBundle& b, bool with_timings = true);
ResultBundle bundle_from_json(const nlohmann::json& j);
void save_bundle(const ResultBundle& b, const std::string& path);
ResultBundle load_bundle(const std::string& path);

/// Tab-separated files, one per figure analogue, money and power to two
/// decimals. Files whose data the bundle lacks are skipped. Returns the paths
/// written. Throws std::runtime_error when the directory is unwritable.
std::vector<std::string> emit_plotdata(const ResultBundle& b, const std::string& out_dir);

}  // namespace mgswap

#include "mgswap/coordinator.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mgswap {

RunContext make_context(const Scenario& sc) {
  sc.validate();
  RunContext ctx;
  ctx.scenario = sc;
  ctx.uncertainty = build_uncertainty(sc);
  ctx.expected_el = expected_el_profile(ctx.uncertainty);
  ctx.arrivals = draw_arrival_profile(sc.ev_rate, sc.delta_t, derive_seed(sc.seed, seed_stream::arrivals));
  return ctx;
}

PriceTrack base_price_track(const RunContext& ctx) {
  const int T = ctx.scenario.periods();
  return price_track(ctx.expected_el, std::vector<double>(T, 0.0), std::vector<int>(T, 1), ctx.scenario.price);
}

BssCoupling adjustable_envelope(const UpperSchedule& s, const UpperInputs& in,
                                const std::vector<MtParams>& mts) {
  BssCoupling c;
  const int T = s.periods();
  for (int t = 0; t < T; ++t) {
    double cap_on = 0.0, min_on = 0.0;
    for (int n = 0; n < s.units(); ++n) {
      cap_on += s.on[n][t] * mts[n].p_max;
      min_on += s.on[n][t] * mts[n].p_min;
    }
    const double e = in.expected_el[t];
    c.charge_cap.push_back(std::max(0.0, cap_on - in.reserve_requirement[t] - e));
    c.discharge_cap.push_back(std::max(0.0, e - min_on + in.cnload_cap[t]));
    c.reserve_cap.push_back(in.reserve_requirement[t]);
  }
  return c;
}

namespace {

constexpr long kLedNodeLimit = 2000;

std::uint64_t jaya_seed_for(const Scenario& sc, int iteration) {
  return derive_seed(derive_seed(sc.seed, seed_stream::jaya), static_cast<std::uint64_t>(iteration));
}

JayaConfig jaya_with_seed(const Scenario& sc, std::uint64_t seed) {
  JayaConfig c = sc.solver.jaya;
  c.seed = seed;
  return c;
}

PriceTrack recompute_prices(const RunContext& ctx, const LowerSchedule& lower) {
  return price_track(ctx.expected_el, lower.traded, lower.bss_mode, ctx.scenario.price);
}

// Upper solve with the one-step confidence relaxation. `alpha` is updated in
// place when relaxed.
UpperResult upper_with_retry(const RunContext& ctx, const LowerSchedule* lower, const PriceTrack& prices,
                             std::uint64_t seed, double& alpha, bool& relaxed,
                             std::vector<std::string>& trace) {
  const auto& sc = ctx.scenario;
  try {
    return solve_upper(sc, ctx.uncertainty, lower, prices, jaya_with_seed(sc, seed), alpha);
  } catch (const InfeasibleError& e) {
    if (relaxed) throw;
    const double next = alpha - sc.solver.alpha_decrement;
    std::ostringstream note;
    note << "upper level infeasible at alpha=" << alpha << " (" << e.what() << "); retrying at alpha=" << next;
    trace.push_back(note.str());
    if (!(next > 0)) throw InfeasibleError(note.str() + ": no confidence left to relax");
    alpha = next;
    relaxed = true;
    try {
      return solve_upper(sc, ctx.uncertainty, lower, prices, jaya_with_seed(sc, seed), alpha);
    } catch (const InfeasibleError& e2) {
      std::ostringstream msg;
      msg << note.str() << "; still infeasible: " << e2.what();
      trace.push_back(msg.str());
      throw InfeasibleError(msg.str());
    }
  }
}

StrategyOutcome img_independent_with_retry(const RunContext& ctx, double& alpha, bool& relaxed,
                                           std::vector<std::string>& trace) {
  const auto& sc = ctx.scenario;
  const std::uint64_t seed = jaya_seed_for(sc, -1);
  try {
    return solve_img_independent(ctx, alpha, seed);
  } catch (const InfeasibleError& e) {
    const double next = alpha - sc.solver.alpha_decrement;
    std::ostringstream note;
    note << "independent microgrid schedule infeasible at alpha=" << alpha << " (" << e.what()
         << "); retrying at alpha=" << next;
    trace.push_back(note.str());
    if (!(next > 0)) throw InfeasibleError(note.str() + ": no confidence left to relax");
    alpha = next;
    relaxed = true;
    try {
      return solve_img_independent(ctx, alpha, seed);
    } catch (const InfeasibleError& e2) {
      throw InfeasibleError(note.str() + "; still infeasible: " + e2.what());
    }
  }
}

}  // namespace

BssMilp img_led_program(const RunContext& ctx, const UpperSchedule& standalone, const PriceTrack& prices,
                        const BssCoupling& envelope) {
  const auto& sc = ctx.scenario;
  BssMilp milp = compile_milp(prices, ctx.arrivals, sc.bss, sc.price, envelope);
  auto& obj = milp.instance.objective;
  // The station's own profit only breaks ties.
  constexpr double tie = 1e-3;
  for (double& c : obj) c *= tie;
  const double dt = sc.delta_t;
  for (int t = 0; t < milp.periods; ++t) {
    double fuel = 0.0, reserve = 0.0;
    for (int n = 0; n < standalone.units(); ++n) {
      if (!standalone.on[n][t]) continue;
      fuel = std::max(fuel, sc.mts[n].variable_fuel_cost);
      reserve = std::max(reserve, sc.mts[n].reserve_cost);
    }
    const double margin = (prices.price[t] - fuel) * dt;
    obj[milp.vars.p_ch[t]] += margin;
    obj[milp.vars.p_dc[t]] -= margin;
    obj[milp.vars.reserve[t]] += reserve - sc.price.reserve_price;
  }
  return milp;
}

StrategyOutcome solve_img_independent(const RunContext& ctx, double alpha, std::uint64_t jaya_seed) {
  const auto& sc = ctx.scenario;
  StrategyOutcome out;
  out.name = "img-independent";
  out.prices = base_price_track(ctx);
  const auto alone = solve_upper(sc, ctx.uncertainty, nullptr, out.prices, jaya_with_seed(sc, jaya_seed), alpha);
  out.envelope = adjustable_envelope(alone.schedule, upper_inputs(sc, ctx.uncertainty, alpha), sc.mts);
  out.upper = alone.schedule;
  out.f1 = alone.f1;
  const auto idle = solve_lower(out.prices, ctx.arrivals, sc.bss, sc.price, BssCoupling::closed(sc.periods()),
                                sc.solver.bba);
  out.lower = idle.schedule;
  out.f2 = idle.f2;

  // The microgrid then dictates the station's trade inside its own envelope,
  // and keeps the standalone schedule if that trade does not pay off.
  const auto milp = img_led_program(ctx, alone.schedule, out.prices, out.envelope);
  // Only a guide for the re-dispatch below, so a bounded search is enough.
  BbaConfig led_cfg = sc.solver.bba;
  led_cfg.node_limit = std::min(led_cfg.node_limit, kLedNodeLimit);
  const auto led = solve_lower(milp, out.prices, ctx.arrivals, sc.bss, sc.price, led_cfg);
  // Priced like a joint record: from the load including the station's trade.
  const PriceTrack led_prices = recompute_prices(ctx, led.schedule);
  try {
    const auto up = solve_upper(sc, ctx.uncertainty, &led.schedule, led_prices,
                                jaya_with_seed(sc, derive_seed(jaya_seed, 1)), alpha);
    if (up.f1 < out.f1) {
      out.prices = led_prices;
      out.upper = up.schedule;
      out.f1 = up.f1;
      out.lower = led.schedule;
      out.f2 = bss_profit(led.schedule, led_prices, sc.price, sc.bss);
    }
  } catch (const InfeasibleError&) {
    // the standalone schedule stands
  }
  return out;
}

StrategyOutcome solve_bss_independent(const RunContext& ctx, const StrategyOutcome& s1, double alpha,
                                      std::uint64_t jaya_seed) {
  const auto& sc = ctx.scenario;
  StrategyOutcome out;
  out.name = "bss-independent";
  out.prices = base_price_track(ctx);
  out.envelope = s1.envelope;
  const auto low = solve_lower(out.prices, ctx.arrivals, sc.bss, sc.price, out.envelope, sc.solver.bba);
  out.lower = low.schedule;
  out.f2 = low.f2;
  const auto up = solve_upper(sc, ctx.uncertainty, &out.lower, out.prices, jaya_with_seed(sc, jaya_seed), alpha);
  out.upper = up.schedule;
  out.f1 = up.f1;
  return out;
}

StrategyRun run_img_independent(const RunContext& ctx) {
  StrategyRun r;
  r.alpha_used = ctx.scenario.alpha;
  bool relaxed = false;
  r.outcome = img_independent_with_retry(ctx, r.alpha_used, relaxed, r.trace);
  return r;
}

StrategyRun run_bss_independent(const RunContext& ctx) {
  StrategyRun r = run_img_independent(ctx);
  r.outcome = solve_bss_independent(ctx, r.outcome, r.alpha_used, jaya_seed_for(ctx.scenario, -2));
  return r;
}

double compromise_distance(double f1, double f2, double f1_io, double f2_io, bool normalized) {
  double d1 = f1 - f1_io, d2 = f2 - f2_io;
  if (normalized) {
    if (std::abs(f1_io) > 0) d1 /= std::abs(f1_io);
    if (std::abs(f2_io) > 0) d2 /= std::abs(f2_io);
  }
  return std::sqrt(d1 * d1 + d2 * d2);
}

int select_optimal_index(const std::vector<IterationRecord>& records, double f1_io, double f2_io,
                         bool normalized) {
  if (records.empty()) throw std::invalid_argument("select_optimal: no records");
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    const double d = compromise_distance(records[i].f1_jo, records[i].f2_jo, f1_io, f2_io, normalized);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

const IterationRecord& select_optimal(const std::vector<IterationRecord>& records, double f1_io,
                                      double f2_io, bool normalized) {
  return records[select_optimal_index(records, f1_io, f2_io, normalized)];
}

JointResult solve_joint(const Scenario& sc, int max_iterations) {
  return solve_joint(make_context(sc), max_iterations);
}

JointResult solve_joint(const RunContext& ctx, int max_iterations) {
  const auto& sc = ctx.scenario;
  const int K = max_iterations > 0 ? max_iterations : sc.solver.max_iterations;
  JointResult res;
  double alpha = sc.alpha;
  bool relaxed = false;

  // Independent optimizations first: they fix the microgrid's adjustable
  // power envelope that the station works within.
  res.strategy1 = img_independent_with_retry(ctx, alpha, relaxed, res.trace);
  res.strategy3 = solve_bss_independent(ctx, res.strategy1, alpha, jaya_seed_for(sc, -2));
  res.f1_io = res.strategy1.f1;
  res.f2_io = res.strategy3.f2;
  res.envelope = res.strategy1.envelope;

  // Initial price: the reference price in every period.
  PriceTrack price = PriceTrack::flat(sc.periods(), sc.price.reference_price);
  // The loop often settles into a short price cycle; the lower level is a
  // pure function of the price track, so repeated tracks reuse their schedule.
  std::map<std::vector<double>, LowerSchedule> solved;
  for (int k = 0; k < K; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    auto hit = solved.find(price.price);
    if (hit == solved.end()) {
      const auto low = solve_lower(price, ctx.arrivals, sc.bss, sc.price, res.envelope, sc.solver.bba);
      hit = solved.emplace(price.price, low.schedule).first;
    }
    rec.lower = hit->second;
    rec.price_track = recompute_prices(ctx, rec.lower);
    const auto up = upper_with_retry(ctx, &rec.lower, rec.price_track, jaya_seed_for(sc, k), alpha, relaxed,
                                     res.trace);
    rec.upper = up.schedule;
    rec.f1_jo = img_net_cost(rec.upper, rec.price_track, sc.mts, sc.price);
    rec.f2_jo = bss_profit(rec.lower, rec.price_track, sc.price, sc.bss);
    price = rec.price_track;
    res.all_records.push_back(std::move(rec));
  }
  res.chosen_index = select_optimal_index(res.all_records, res.f1_io, res.f2_io, sc.solver.normalized_selection);
  res.chosen = res.all_records[res.chosen_index];
  res.distance = compromise_distance(res.chosen.f1_jo, res.chosen.f2_jo, res.f1_io, res.f2_io,
                                     sc.solver.normalized_selection);
  res.alpha_used = alpha;
  return res;
}

PricingComparison compare_pricing(const Scenario& sc) {
  const RunContext ctx = make_context(sc);
  return compare_pricing(ctx, solve_joint(ctx));
}

PricingComparison compare_pricing(const RunContext& ctx, const JointResult& joint) {
  const auto& sc = ctx.scenario;
  PricingComparison out;

  out.case2.name = "real-time-price";
  out.case2.prices = joint.chosen.price_track;
  out.case2.upper = joint.chosen.upper;
  out.case2.lower = joint.chosen.lower;
  out.case2.f1 = joint.chosen.f1_jo;
  out.case2.f2 = joint.chosen.f2_jo;

  out.case1.name = "grid-price";
  PriceTrack grid;
  grid.price = sc.grid_price_track();
  grid.bss_mode.assign(sc.periods(), 1);
  const auto low = solve_lower(grid, ctx.arrivals, sc.bss, sc.price, joint.envelope, sc.solver.bba);
  out.case1.lower = low.schedule;
  out.case1.prices = grid;
  out.case1.prices.bss_mode = low.schedule.bss_mode;
  out.case1.f2 = bss_profit(out.case1.lower, out.case1.prices, sc.price, sc.bss);
  const auto up = solve_upper(sc, ctx.uncertainty, &out.case1.lower, out.case1.prices,
                              jaya_with_seed(sc, jaya_seed_for(sc, -3)), joint.alpha_used);
  out.case1.upper = up.schedule;
  out.case1.f1 = up.f1;
  return out;
}

std::vector<AlphaSweepRow> sweep_alpha(const Scenario& sc, const std::vector<double>& alphas) {
  // Each confidence level is an independent solve with its own seeds.
  std::vector<std::future<AlphaSweepRow>> jobs;
  for (double a : alphas) {
    jobs.push_back(std::async(std::launch::async, [sc, a] {
      Scenario s = sc;
      s.alpha = a;
      AlphaSweepRow row;
      row.alpha = a;
      row.result = solve_joint(s);
      row.alpha_used = row.result.alpha_used;
      row.f1 = row.result.chosen.f1_jo;
      row.f2 = row.result.chosen.f2_jo;
      const auto& up = row.result.chosen.upper;
      for (int t = 0; t < up.periods(); ++t) {
        row.mt_reserve += up.total_reserve(t) * s.delta_t;
        row.bss_reserve += (1 - up.bss_mode[t]) * up.bss_reserve[t] * s.delta_t;
      }
      return row;
    }));
  }
  std::vector<AlphaSweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace mgswap

// mgswap: day-ahead microgrid / battery-swapping-station scheduling runs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgswap/coordinator.hpp"
#include "mgswap/errors.hpp"
#include "mgswap/mc_oracle.hpp"
#include "mgswap/results.hpp"
#include "mgswap/scenario.hpp"
#include "mgswap/scenario_io.hpp"

using namespace mgswap;

namespace {

struct Options {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<int> samples;
  std::string out;
  std::string plotdata;
  std::vector<double> alphas{0.80, 0.85, 0.90, 0.95};
  bool quiet = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scenario resolve(const Options& o) {
  Scenario sc = o.scenario_path.empty() ? default_scenario() : load_scenario(o.scenario_path);
  if (o.seed) sc.seed = *o.seed;
  if (o.iterations) sc.solver.max_iterations = *o.iterations;
  if (o.samples) sc.solver.mc_samples = *o.samples;
  sc.validate();
  if (!o.quiet) std::cerr << "# resolved scenario\n" << scenario_text(sc);
  return sc;
}

std::string money(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void print_outcomes(const std::vector<const StrategyOutcome*>& rows) {
  std::printf("%-18s %12s %12s\n", "schedule", "F1 cost $", "F2 profit $");
  for (const auto* r : rows) std::printf("%-18s %12s %12s\n", r->name.c_str(), money(r->f1).c_str(), money(r->f2).c_str());
}

void print_trace(const std::vector<std::string>& trace) {
  for (const auto& t : trace) std::cerr << "note: " << t << "\n";
}

void finish(ResultBundle& b, const Options& o, Clock::time_point t0) {
  b.timings.emplace_back("total", seconds_since(t0));
  print_trace(b.trace);
  if (!o.out.empty()) {
    save_bundle(b, o.out);
    std::cerr << "wrote " << o.out << "\n";
  }
  if (!o.plotdata.empty())
    for (const auto& p : emit_plotdata(b, o.plotdata)) std::cerr << "wrote " << p << "\n";
}

int cmd_solve_joint(const Options& o) {
  const auto t0 = Clock::now();
  const auto ctx = make_context(resolve(o));
  const auto r = solve_joint(ctx);
  auto b = bundle_joint(ctx, r);
  print_outcomes({&b.strategies[0], &b.strategies[1], &b.strategies[2]});
  std::printf("record %d of %zu chosen, distance %s to (%s, %s), alpha %.2f\n", r.chosen_index,
              r.all_records.size(), money(r.distance).c_str(), money(r.f1_io).c_str(), money(r.f2_io).c_str(),
              r.alpha_used);
  finish(b, o, t0);
  return 0;
}

int cmd_strategy(const Options& o, bool station) {
  const auto t0 = Clock::now();
  const auto ctx = make_context(resolve(o));
  const auto run = station ? run_bss_independent(ctx) : run_img_independent(ctx);
  ResultBundle b;
  b.command = station ? "solve-bss" : "solve-img";
  b.version = MGSWAP_VERSION;
  b.scenario = ctx.scenario;
  b.arrivals = ctx.arrivals;
  b.solution = run.outcome;
  b.alpha_used = run.alpha_used;
  b.strategies = {run.outcome};
  b.trace = run.trace;
  print_outcomes({&b.solution});
  finish(b, o, t0);
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto t0 = Clock::now();
  const Scenario sc = resolve(o);
  const auto ctx = make_context(sc);
  const auto rows = sweep_alpha(sc, o.alphas);
  auto b = bundle_sweep(ctx, rows);
  std::printf("%6s %6s %12s %12s %10s %10s %10s\n", "alpha", "used", "F1 cost $", "F2 profit $", "MT kWh",
              "BSS kWh", "total kWh");
  for (const auto& r : rows)
    std::printf("%6.2f %6.2f %12s %12s %10s %10s %10s\n", r.alpha, r.alpha_used, money(r.f1).c_str(),
                money(r.f2).c_str(), money(r.mt_reserve).c_str(), money(r.bss_reserve).c_str(),
                money(r.total_reserve()).c_str());
  finish(b, o, t0);
  return 0;
}

int cmd_pricing(const Options& o) {
  const auto t0 = Clock::now();
  const Scenario sc = resolve(o);
  const auto ctx = make_context(sc);
  const auto p = compare_pricing(sc);
  auto b = bundle_pricing(ctx, p);
  print_outcomes({&p.case1, &p.case2});
  finish(b, o, t0);
  return 0;
}

int cmd_validate_mc(const Options& o) {
  const Scenario sc = resolve(o);
  const auto u = build_uncertainty(sc);
  const auto el = expected_el_profile(u);
  McConfig mc;
  mc.n_samples = sc.solver.mc_samples;
  mc.seed = derive_seed(sc.seed, seed_stream::monte_carlo);
  std::vector<double> reserve(u.size());
  for (std::size_t t = 0; t < u.size(); ++t) reserve[t] = min_reserve_for_confidence(u[t].el_seq, el[t], sc.alpha);
  const auto sat = mc_chance_satisfaction(reserve, sc, mc, el);

  nlohmann::json rows = nlohmann::json::array();
  int el_ok = 0, cc_ok = 0;
  std::printf("%6s %10s %10s %8s %10s %8s\n", "period", "E(EL) kW", "MC kW", "+/- kW", "reserve kW", "covered");
  for (int t = 0; t < sc.periods(); ++t) {
    const auto est = mc_expected_el(sc, t, mc);
    const bool ok_el = std::abs(est.mean - el[t]) <= std::max(0.02 * std::abs(el[t]), 1.0);
    const bool ok_cc = sat[t] >= sc.alpha - 0.02;
    el_ok += ok_el;
    cc_ok += ok_cc;
    std::printf("%6d %10s %10s %8s %10s %8.3f\n", t, money(el[t]).c_str(), money(est.mean).c_str(),
                money(est.half_width).c_str(), money(reserve[t]).c_str(), sat[t]);
    rows.push_back({{"period", t}, {"expected_el", el[t]}, {"mc_mean", est.mean}, {"mc_half_width", est.half_width},
                    {"reserve", reserve[t]}, {"satisfaction", sat[t]}});
  }
  std::printf("expected load within max(2%%, 1 kW): %d/%d; chance constraint within 0.02 of %.2f: %d/%d\n", el_ok,
              sc.periods(), sc.alpha, cc_ok, sc.periods());
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    out << nlohmann::json{{"command", "validate-mc"}, {"samples", mc.n_samples}, {"alpha", sc.alpha}, {"periods", rows}}
               .dump(1)
        << "\n";
    if (!out) throw std::runtime_error(o.out + ": write failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Day-ahead scheduling of a microgrid and a battery swapping station"};
  app.set_version_flag("--version", std::string(MGSWAP_VERSION));
  app.require_subcommand(1);

  Options o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--scenario", o.scenario_path, "scenario JSON (default: built-in test system)")
        ->check(CLI::ExistingFile);
    c->add_option("--seed", o.seed, "master seed, overrides the scenario");
    c->add_option("--out", o.out, "write the result as JSON");
    c->add_flag("--quiet", o.quiet, "do not echo the resolved scenario");
  };
  auto solving = [&](CLI::App* c) {
    common(c);
    c->add_option("--plotdata", o.plotdata, "directory for tab-separated plot data");
    c->add_option("--iterations", o.iterations, "alternations of the joint loop")->check(CLI::PositiveNumber);
  };

  auto* joint = app.add_subcommand("solve-joint", "alternate the two levels and pick the compromise record");
  auto* img = app.add_subcommand("solve-img", "microgrid schedules alone");
  auto* bss = app.add_subcommand("solve-bss", "station schedules alone inside the microgrid's envelope");
  auto* sweep = app.add_subcommand("sweep-alpha", "joint solve at several confidence levels");
  auto* mc = app.add_subcommand("validate-mc", "check expected loads and reserves against sampling");
  auto* pricing = app.add_subcommand("compare-pricing", "fixed grid price against the demand-response price");
  for (auto* c : {joint, img, bss, sweep, pricing}) solving(c);
  common(mc);
  mc->add_option("--samples", o.samples, "draws per period")->check(CLI::Range(100, 100000000));
  sweep->add_option("--alphas", o.alphas, "confidence levels")->check(CLI::Range(0.0, 1.0))->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help and --version are not errors
  }

  try {
    if (*joint) return cmd_solve_joint(o);
    if (*img) return cmd_strategy(o, false);
    if (*bss) return cmd_strategy(o, true);
    if (*sweep) return cmd_sweep(o);
    if (*pricing) return cmd_pricing(o);
    if (*mc) return cmd_validate_mc(o);
  } catch (const ScenarioError& e) {
    for (const auto& line : e.errors()) std::cerr << line << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

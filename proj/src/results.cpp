#include "mgswap/results.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mgswap/scenario_io.hpp"

#ifndef MGSWAP_VERSION
#define MGSWAP_VERSION "unknown"
#endif

namespace mgswap {

namespace fs = std::filesystem;

using json = nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PriceTrack, price, bss_mode)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BssCoupling, charge_cap, discharge_cap, reserve_cap)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LowerSchedule, bss_mode, p_ch, p_dc, reserve, traded, energy, n_full, n_empty,
                                   n_ch, n_dc, served, arrivals)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(UpperSchedule, on, startup, output, reserve, cnload, expected_el, bss_mode,
                                   bss_charge, bss_discharge, traded, bss_reserve)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StrategyOutcome, name, prices, upper, lower, f1, f2, envelope)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AlphaRun, alpha, alpha_used, outcome)

StrategyOutcome as_outcome(const IterationRecord& rec, std::string name) {
  StrategyOutcome o;
  o.name = std::move(name);
  o.prices = rec.price_track;
  o.upper = rec.upper;
  o.lower = rec.lower;
  o.f1 = rec.f1_jo;
  o.f2 = rec.f2_jo;
  return o;
}

namespace {

ResultBundle bundle_base(const RunContext& ctx, std::string command) {
  ResultBundle b;
  b.command = std::move(command);
  b.version = MGSWAP_VERSION;
  b.scenario = ctx.scenario;
  b.arrivals = ctx.arrivals;
  b.alpha_used = ctx.scenario.alpha;
  return b;
}

}  // namespace

ResultBundle bundle_joint(const RunContext& ctx, const JointResult& r) {
  ResultBundle b = bundle_base(ctx, "solve-joint");
  b.solution = as_outcome(r.chosen, "joint");
  b.solution.envelope = r.envelope;
  b.chosen_index = r.chosen_index;
  b.records = static_cast<int>(r.all_records.size());
  b.f1_io = r.f1_io;
  b.f2_io = r.f2_io;
  b.distance = r.distance;
  b.alpha_used = r.alpha_used;
  b.strategies = {r.strategy1, b.solution, r.strategy3};
  b.trace = r.trace;
  return b;
}

ResultBundle bundle_pricing(const RunContext& ctx, const PricingComparison& p) {
  ResultBundle b = bundle_base(ctx, "compare-pricing");
  b.solution = p.case2;
  b.cases = {p.case1, p.case2};
  return b;
}

ResultBundle bundle_sweep(const RunContext& ctx, const std::vector<AlphaSweepRow>& rows) {
  ResultBundle b = bundle_base(ctx, "sweep-alpha");
  for (const auto& row : rows) {
    AlphaRun run{row.alpha, row.alpha_used, as_outcome(row.result.chosen, "joint")};
    run.outcome.envelope = row.result.envelope;
    b.alpha_runs.push_back(std::move(run));
    for (const auto& note : row.result.trace) b.trace.push_back(note);
  }
  if (!b.alpha_runs.empty()) {
    // The run at the scenario's own confidence, else the first.
    const AlphaRun* pick = &b.alpha_runs.front();
    for (const auto& run : b.alpha_runs)
      if (std::abs(run.alpha - ctx.scenario.alpha) < 1e-12) pick = &run;
    b.solution = pick->outcome;
    b.alpha_used = pick->alpha_used;
  }
  return b;
}

std::vector<HourlyEconomics> hourly_economics(const StrategyOutcome& o, const Scenario& sc) {
  const auto img = img_cost_by_period(o.upper, o.prices, sc.mts, sc.price);
  const auto bss = bss_profit_by_period(o.lower, o.prices, sc.price, sc.bss);
  std::vector<HourlyEconomics> out(img.size());
  for (std::size_t t = 0; t < img.size(); ++t) out[t] = {img[t], bss.at(t)};
  return out;
}

std::pair<double, double> recompute_objectives(const StrategyOutcome& o, const Scenario& sc) {
  return {img_net_cost(o.upper, o.prices, sc.mts, sc.price), bss_profit(o.lower, o.prices, sc.price, sc.bss)};
}

ProviderReserve provider_reserve(const StrategyOutcome& o, double alpha, double delta_t) {
  ProviderReserve r;
  r.alpha = alpha;
  const auto& up = o.upper;
  for (int t = 0; t < up.periods(); ++t) {
    r.mt += up.total_reserve(t) * delta_t;
    r.bss += (1 - up.bss_mode[t]) * up.bss_reserve[t] * delta_t;
  }
  return r;
}

json bundle_to_json(const ResultBundle& b, bool with_timings) {
  json j;
  j["command"] = b.command;
  j["version"] = b.version;
  j["scenario"] = json::parse(scenario_to_json(b.scenario).dump());
  j["arrivals"] = b.arrivals;
  j["solution"] = b.solution;
  j["chosen_index"] = b.chosen_index;
  j["records"] = b.records;
  j["f1_io"] = b.f1_io;
  j["f2_io"] = b.f2_io;
  j["distance"] = b.distance;
  j["alpha_used"] = b.alpha_used;
  j["strategies"] = b.strategies;
  j["cases"] = b.cases;
  j["alpha_runs"] = b.alpha_runs;
  j["trace"] = b.trace;
  if (with_timings) {
    json t = json::object();
    for (const auto& [k, v] : b.timings) t[k] = v;
    j["timings"] = t;
  }
  return j;
}

ResultBundle bundle_from_json(const json& j) {
  ResultBundle b;
  j.at("command").get_to(b.command);
  j.at("version").get_to(b.version);
  b.scenario = parse_scenario(j.at("scenario").dump(), "bundle scenario");
  j.at("arrivals").get_to(b.arrivals);
  j.at("solution").get_to(b.solution);
  j.at("chosen_index").get_to(b.chosen_index);
  j.at("records").get_to(b.records);
  j.at("f1_io").get_to(b.f1_io);
  j.at("f2_io").get_to(b.f2_io);
  j.at("distance").get_to(b.distance);
  j.at("alpha_used").get_to(b.alpha_used);
  j.at("strategies").get_to(b.strategies);
  j.at("cases").get_to(b.cases);
  j.at("alpha_runs").get_to(b.alpha_runs);
  j.at("trace").get_to(b.trace);
  if (auto it = j.find("timings"); it != j.end())
    for (const auto& [k, v] : it->items()) b.timings.emplace_back(k, v.get<double>());
  return b;
}

void save_bundle(const ResultBundle& b, const std::string& path) {
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << bundle_to_json(b).dump(1) << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

ResultBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return bundle_from_json(json::parse(in));
}

namespace {

std::string fixed2(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string alpha_label(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "a%.2f", a);
  return buf;
}

class Tsv {
 public:
  explicit Tsv(std::vector<std::string> comments) {
    for (const auto& c : comments) os_ << "# " << c << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "\t" : "") << cells[i];
    os_ << "\n";
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

}  // namespace

std::vector<std::string> emit_plotdata(const ResultBundle& b, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw std::runtime_error(out_dir + ": cannot create directory");

  const Scenario& sc = b.scenario;
  const int T = sc.periods();
  const double dt = sc.delta_t;
  std::vector<std::string> written;
  auto save = [&](const std::string& name, const Tsv& tsv) {
    const std::string path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    out << tsv.str();
    if (!out) throw std::runtime_error(path + ": write failed");
    written.push_back(path);
  };
  auto per_period = [&](const std::vector<std::string>& comments, std::vector<std::string> cols,
                        const std::function<std::vector<std::string>(int)>& cells) {
    Tsv tsv(comments);
    cols.insert(cols.begin(), "period");
    tsv.row(cols);
    for (int t = 0; t < T; ++t) {
      auto row = cells(t);
      row.insert(row.begin(), std::to_string(t));
      tsv.row(row);
    }
    return tsv;
  };

  // Sources and load: expected values and the reserve requirement.
  {
    const auto u = build_uncertainty(sc);
    const double alpha = b.alpha_used > 0 ? b.alpha_used : sc.alpha;
    const auto in = upper_inputs(sc, u, alpha);
    save("der_load.tsv",
         per_period({"expected outputs and loads in kW; reserve requirement at alpha " + fixed2(alpha)},
                    {"wt_kw", "pv_kw", "load_kw", "el_kw", "reserve_req_kw"}, [&](int t) {
                      return std::vector<std::string>{fixed2(u[t].wt_seq.expectation()),
                                                      fixed2(u[t].pv_seq.expectation()),
                                                      fixed2(u[t].load_seq.expectation()), fixed2(u[t].expected_el),
                                                      fixed2(in.reserve_requirement[t])};
                    }));
  }

  save("swap_demand.tsv",
       per_period({"swap demand per period; served is from the reported solution"},
                  {"ev_rate", "arrivals", "served"}, [&](int t) {
                    const auto& low = b.solution.lower;
                    return std::vector<std::string>{fixed2(sc.ev_rate.at(t)), std::to_string(b.arrivals.at(t)),
                                                    std::to_string(low.served.empty() ? 0 : low.served[t])};
                  }));

  {
    std::vector<const StrategyOutcome*> shown;
    for (const auto& s : b.strategies) shown.push_back(&s);
    if (shown.empty()) shown.push_back(&b.solution);
    std::vector<std::string> cols;
    for (const auto* s : shown) cols.push_back(s->name + "_kw");
    save("exchange_power.tsv",
         per_period({"exchange power between microgrid and station in kW",
                     "positive = charging (station buys), negative = discharging (station sells)"},
                    cols, [&](int t) {
                      std::vector<std::string> r;
                      for (const auto* s : shown) r.push_back(fixed2(s->lower.traded[t] / dt));
                      return r;
                    }));
  }

  {
    Tsv tsv({"microgrid net cost F1 and station profit F2 in $, recomputed from the schedules"});
    tsv.row({"group", "name", "f1", "f2"});
    auto add = [&](const std::string& group, const StrategyOutcome& o) {
      const auto [f1, f2] = recompute_objectives(o, sc);
      tsv.row({group, o.name, fixed2(f1), fixed2(f2)});
    };
    add("solution", b.solution);
    for (const auto& s : b.strategies) add("strategy", s);
    for (const auto& c : b.cases) add("case", c);
    for (const auto& a : b.alpha_runs) add(alpha_label(a.alpha), a.outcome);
    save("objectives.tsv", tsv);
  }

  {
    const auto eco = hourly_economics(b.solution, sc);
    save("hourly_economics.tsv",
         per_period({"per-period economics of the reported solution in $",
                     "img_* are microgrid costs (negative = income), bss_* are station profit terms"},
                    {"img_fuel", "img_startup", "img_mt_reserve", "img_bss_reserve", "img_trade", "img_net",
                     "bss_trade", "bss_swap", "bss_depreciation", "bss_reserve", "bss_profit"},
                    [&](int t) {
                      const auto& e = eco.at(t);
                      return std::vector<std::string>{
                          fixed2(e.img.fuel),        fixed2(e.img.startup),     fixed2(e.img.mt_reserve),
                          fixed2(e.img.bss_reserve), fixed2(e.img.trade),       fixed2(e.img.total()),
                          fixed2(e.bss.trade),       fixed2(e.bss.swap_income), fixed2(e.bss.depreciation),
                          fixed2(e.bss.reserve_income), fixed2(e.bss.total())};
                    }));
  }

  if (!b.cases.empty()) {
    std::vector<std::string> cols;
    for (const auto& c : b.cases) {
      cols.push_back(c.name + "_charge_kw");
      cols.push_back(c.name + "_discharge_kw");
    }
    save("charge_discharge_by_case.tsv",
         per_period({"station charge and discharge power by pricing case in kW"}, cols, [&](int t) {
           std::vector<std::string> r;
           for (const auto& c : b.cases) {
             r.push_back(fixed2(c.lower.p_ch[t]));
             r.push_back(fixed2(c.lower.p_dc[t]));
           }
           return r;
         }));
    cols.clear();
    for (const auto& c : b.cases)
      for (const auto& mt : sc.mts) cols.push_back(c.name + "_" + mt.name + "_kw");
    save("mt_output_by_case.tsv", per_period({"MT outputs by pricing case in kW"}, cols, [&](int t) {
           std::vector<std::string> r;
           for (const auto& c : b.cases)
             for (int n = 0; n < c.upper.units(); ++n) r.push_back(fixed2(c.upper.output[n][t]));
           return r;
         }));
  }

  if (!b.alpha_runs.empty()) {
    std::vector<std::string> cols;
    for (const auto& a : b.alpha_runs) cols.push_back(alpha_label(a.alpha) + "_kw");
    save("bss_schedule_by_alpha.tsv",
         per_period({"station exchange power by confidence level in kW", "positive = charging, negative = discharging"},
                    cols, [&](int t) {
                      std::vector<std::string> r;
                      for (const auto& a : b.alpha_runs) r.push_back(fixed2(a.outcome.lower.traded[t] / dt));
                      return r;
                    }));

    Tsv tsv({"reserve scheduled over the horizon by confidence level in kWh"});
    tsv.row({"alpha", "alpha_used", "mt_kwh", "bss_kwh", "total_kwh"});
    for (const auto& a : b.alpha_runs) {
      const auto r = provider_reserve(a.outcome, a.alpha, dt);
      tsv.row({fixed2(a.alpha), fixed2(a.alpha_used), fixed2(r.mt), fixed2(r.bss), fixed2(r.total())});
    }
    save("reserve_by_alpha.tsv", tsv);

    cols.clear();
    for (const auto& a : b.alpha_runs) {
      cols.push_back(alpha_label(a.alpha) + "_mt_kw");
      cols.push_back(alpha_label(a.alpha) + "_bss_kw");
    }
    save("reserve_by_provider_by_alpha.tsv",
         per_period({"reserve by provider and confidence level in kW"}, cols, [&](int t) {
           std::vector<std::string> r;
           for (const auto& a : b.alpha_runs) {
             const auto& up = a.outcome.upper;
             r.push_back(fixed2(up.total_reserve(t)));
             r.push_back(fixed2((1 - up.bss_mode[t]) * up.bss_reserve[t]));
           }
           return r;
         }));
  }
  return written;
}

}  // namespace mgswap

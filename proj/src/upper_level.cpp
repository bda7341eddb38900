#include "mgswap/upper_level.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mgswap/scenario.hpp"

namespace mgswap {

void MtParams::validate() const {
  if (!(0 <= p_min && p_min <= p_max)) throw std::invalid_argument("mt " + name + ": need 0 <= p_min <= p_max");
  if (fixed_fuel_cost < 0 || variable_fuel_cost < 0 || startup_cost < 0 || reserve_cost < 0)
    throw std::invalid_argument("mt " + name + ": costs must be non-negative");
}

double UpperSchedule::total_output(int t) const {
  double acc = 0.0;
  for (const auto& row : output) acc += row[t];
  return acc;
}

double UpperSchedule::total_reserve(int t) const {
  double acc = 0.0;
  for (const auto& row : reserve) acc += row[t];
  return acc;
}

UpperSchedule UpperSchedule::blank(int units, int periods) {
  UpperSchedule s;
  s.on.assign(units, std::vector<int>(periods, 0));
  s.startup = s.on;
  s.output.assign(units, std::vector<double>(periods, 0.0));
  s.reserve = s.output;
  s.cnload.assign(periods, 0.0);
  s.expected_el.assign(periods, 0.0);
  s.bss_mode.assign(periods, 0);
  s.bss_charge.assign(periods, 0.0);
  s.bss_discharge.assign(periods, 0.0);
  s.traded.assign(periods, 0.0);
  s.bss_reserve.assign(periods, 0.0);
  return s;
}

void attach_lower(UpperSchedule& s, const LowerSchedule* lower) {
  const int T = s.periods();
  if (!lower) {
    std::fill(s.bss_mode.begin(), s.bss_mode.end(), 0);
    std::fill(s.bss_charge.begin(), s.bss_charge.end(), 0.0);
    std::fill(s.bss_discharge.begin(), s.bss_discharge.end(), 0.0);
    std::fill(s.traded.begin(), s.traded.end(), 0.0);
    std::fill(s.bss_reserve.begin(), s.bss_reserve.end(), 0.0);
    return;
  }
  if (lower->periods() != T) throw std::invalid_argument("attach_lower: horizon mismatch");
  s.bss_mode = lower->bss_mode;
  s.bss_charge = lower->p_ch;
  s.bss_discharge = lower->p_dc;
  s.traded = lower->traded;
  s.bss_reserve = lower->reserve;
}

std::vector<ImgCostBreakdown> img_cost_by_period(const UpperSchedule& s, const PriceTrack& prices,
                                                 const std::vector<MtParams>& mts, const PriceParams& pp) {
  const int T = s.periods();
  if (s.units() != static_cast<int>(mts.size())) throw std::invalid_argument("img_net_cost: unit count mismatch");
  if (prices.periods() != T) throw std::invalid_argument("img_net_cost: price track length differs");
  std::vector<ImgCostBreakdown> out(T);
  for (int t = 0; t < T; ++t) {
    auto& c = out[t];
    c.trade = -prices.price[t] * s.traded[t] * s.bss_mode[t];
    c.bss_reserve = reserve_payment(s.bss_reserve[t], s.bss_mode[t], pp);
    for (std::size_t n = 0; n < mts.size(); ++n) {
      const auto& mt = mts[n];
      c.mt_reserve += mt.reserve_cost * s.reserve[n][t];
      c.startup += mt.startup_cost * s.startup[n][t];
      c.fuel += s.on[n][t] * (mt.fixed_fuel_cost + mt.variable_fuel_cost * s.output[n][t]);
    }
  }
  return out;
}

double img_net_cost(const UpperSchedule& s, const PriceTrack& prices, const std::vector<MtParams>& mts,
                    const PriceParams& pp) {
  double acc = 0.0;
  for (const auto& c : img_cost_by_period(s, prices, mts, pp)) acc += c.total();
  return acc;
}

double FeasibilityReport::worst() const {
  double w = 0.0;
  for (const auto& v : items) w = std::max(w, v.amount);
  return w;
}

std::string FeasibilityReport::summary() const {
  if (items.empty()) return "feasible";
  std::ostringstream out;
  for (const auto& v : items) {
    out << v.constraint << " t=" << v.period;
    if (v.unit >= 0) out << " unit=" << v.unit;
    out << " by " << v.amount << "\n";
  }
  return out.str();
}

FeasibilityReport check_feasibility(const UpperSchedule& s, const std::vector<PeriodUncertainty>& u,
                                    double alpha, const std::vector<MtParams>& mts,
                                    const std::vector<double>& cnload_cap, double tol) {
  FeasibilityReport r;
  const int T = s.periods();
  auto flag = [&](const char* what, int t, int n, double amount) {
    r.items.push_back({what, t, n, amount});
  };
  if (s.units() != static_cast<int>(mts.size()) || static_cast<int>(u.size()) != T) {
    flag("shape", -1, -1, 1.0);
    return r;
  }
  for (int t = 0; t < T; ++t) {
    double gen = 0.0, res = 0.0;
    for (int n = 0; n < s.units(); ++n) {
      const auto& mt = mts[n];
      const int on = s.on[n][t];
      const double p = s.output[n][t];
      const double rr = s.reserve[n][t];
      gen += p;
      res += rr;
      if (on != 0 && on != 1) flag("output", t, n, 1.0);
      const double lo = on * mt.p_min, hi = on * mt.p_max;
      if (p < lo - tol) flag("output", t, n, lo - p);
      if (p > hi + tol) flag("output", t, n, p - hi);
      if (rr < -tol) flag("headroom", t, n, -rr);
      if (p + rr > hi + tol) flag("headroom", t, n, p + rr - hi);
      const int prev = t == 0 ? 0 : s.on[n][t - 1];
      const int st = s.startup[n][t];
      if (st != 0 && st != 1) flag("startup", t, n, 1.0);
      if (st < on - prev) flag("startup", t, n, on - prev - st);
    }
    const double lhs = gen + s.bss_discharge[t] - s.bss_charge[t];
    const double rhs = u[t].expected_el + s.cnload[t];
    if (std::abs(lhs - rhs) > tol) flag("balance", t, -1, std::abs(lhs - rhs));
    if (s.cnload[t] < -tol) flag("cnload", t, -1, -s.cnload[t]);
    if (!cnload_cap.empty() && s.cnload[t] > cnload_cap[t] + tol) flag("cnload", t, -1, s.cnload[t] - cnload_cap[t]);
    const double bres = (1 - s.bss_mode[t]) * s.bss_reserve[t];
    if (!chance_constraint_holds(res + bres, u[t].el_seq, u[t].expected_el, alpha)) {
      const double need = min_reserve_for_confidence(u[t].el_seq, u[t].expected_el, alpha);
      flag("chance", t, -1, std::max(need - res - bres, tol));
    }
  }
  return r;
}

UpperInputs upper_inputs(const Scenario& sc, const std::vector<PeriodUncertainty>& u, double alpha) {
  const int T = sc.periods();
  if (static_cast<int>(u.size()) != T) throw std::invalid_argument("upper_inputs: uncertainty length differs");
  UpperInputs in;
  for (int t = 0; t < T; ++t) {
    in.expected_el.push_back(u[t].expected_el);
    in.reserve_requirement.push_back(min_reserve_for_confidence(u[t].el_seq, u[t].expected_el, alpha));
    in.cnload_cap.push_back(sc.cnload_cap_at(t));
  }
  return in;
}

namespace {

struct UnitOrder {
  std::vector<int> by_energy;   // variable fuel cost, then index
  std::vector<int> by_reserve;  // reserve cost, then variable fuel cost, then index
  std::vector<int> by_average;  // full-load average cost, then index
};

UnitOrder unit_order(const std::vector<MtParams>& mts) {
  UnitOrder o;
  const int M = static_cast<int>(mts.size());
  std::vector<int> base(M);
  std::iota(base.begin(), base.end(), 0);
  o.by_energy = o.by_reserve = o.by_average = base;
  std::stable_sort(o.by_energy.begin(), o.by_energy.end(),
                   [&](int a, int b) { return mts[a].variable_fuel_cost < mts[b].variable_fuel_cost; });
  std::stable_sort(o.by_reserve.begin(), o.by_reserve.end(), [&](int a, int b) {
    if (mts[a].reserve_cost != mts[b].reserve_cost) return mts[a].reserve_cost < mts[b].reserve_cost;
    return mts[a].variable_fuel_cost < mts[b].variable_fuel_cost;
  });
  auto avg = [&](int n) {
    const auto& m = mts[n];
    return m.p_max > 0 ? (m.fixed_fuel_cost + m.variable_fuel_cost * m.p_max) / m.p_max : 1e300;
  };
  std::stable_sort(o.by_average.begin(), o.by_average.end(), [&](int a, int b) { return avg(a) < avg(b); });
  return o;
}

// One period of dispatch_commitment. Returns the unrepaired violation in kW.
double dispatch_period(UpperSchedule& s, int t, const UpperInputs& in, const std::vector<MtParams>& mts,
                       const UnitOrder& order) {
  const int M = static_cast<int>(mts.size());
  const double demand = in.expected_el[t] + s.bss_charge[t] - s.bss_discharge[t];
  const double bres = (1 - s.bss_mode[t]) * s.bss_reserve[t];
  const double need_res = std::max(0.0, in.reserve_requirement[t] - bres);
  const double cap_cn = in.cnload_cap[t];

  auto capacity = [&] {
    double c = 0.0;
    for (int n = 0; n < M; ++n) c += s.on[n][t] * mts[n].p_max;
    return c;
  };
  auto min_total = [&] {
    double c = 0.0;
    for (int n = 0; n < M; ++n) c += s.on[n][t] * mts[n].p_min;
    return c;
  };
  const double target = std::max(demand, 0.0) + need_res;

  // Switch on the cheapest idle units while capacity is short.
  for (int n : order.by_average) {
    if (capacity() >= target - 1e-9) break;
    s.on[n][t] = 1;
  }
  // Switch off units while the minimum-output surplus exceeds the cap.
  while (min_total() - demand > cap_cn + 1e-9) {
    int drop = -1;
    double drop_cost = -1.0;
    const double cap_now = capacity();
    for (int n = 0; n < M; ++n) {
      if (!s.on[n][t]) continue;
      if (cap_now - mts[n].p_max < target - 1e-9) continue;
      const double c = mts[n].fixed_fuel_cost + mts[n].variable_fuel_cost * mts[n].p_min;
      if (c > drop_cost) {
        drop_cost = c;
        drop = n;
      }
    }
    if (drop < 0) break;
    s.on[drop][t] = 0;
  }

  double total = 0.0;
  for (int n = 0; n < M; ++n) {
    s.output[n][t] = s.on[n][t] * mts[n].p_min;
    s.reserve[n][t] = 0.0;
    total += s.output[n][t];
  }
  double violation = 0.0;
  double rest = demand - total;
  for (int n : order.by_energy) {
    if (rest <= 0) break;
    if (!s.on[n][t]) continue;
    const double add = std::min(rest, mts[n].p_max - s.output[n][t]);
    s.output[n][t] += add;
    rest -= add;
  }
  if (rest > 1e-9) violation += rest;
  const double cn = std::max(0.0, min_total() - demand);
  s.cnload[t] = cn;
  if (cn > cap_cn + 1e-9) violation += cn - cap_cn;

  double res_left = need_res;
  for (int n : order.by_reserve) {
    if (res_left <= 0) break;
    if (!s.on[n][t]) continue;
    const double add = std::min(res_left, mts[n].p_max - s.output[n][t]);
    s.reserve[n][t] = std::max(add, 0.0);
    res_left -= s.reserve[n][t];
  }
  if (res_left > 1e-9) violation += res_left;
  return violation;
}

void fill_startups(UpperSchedule& s) {
  for (int n = 0; n < s.units(); ++n)
    for (int t = 0; t < s.periods(); ++t) {
      const int prev = t == 0 ? 0 : s.on[n][t - 1];
      s.startup[n][t] = std::max(0, s.on[n][t] - prev);
    }
}

}  // namespace

double dispatch_commitment(UpperSchedule& s, const UpperInputs& in, const std::vector<MtParams>& mts) {
  const auto order = unit_order(mts);
  double v = 0.0;
  for (int t = 0; t < s.periods(); ++t) v += dispatch_period(s, t, in, mts, order);
  fill_startups(s);
  return v;
}

UpperResult solve_upper(const Scenario& sc, const std::vector<PeriodUncertainty>& u,
                        const LowerSchedule* lower, const PriceTrack& prices, const JayaConfig& cfg,
                        double alpha) {
  const auto& mts = sc.mts;
  for (const auto& mt : mts) mt.validate();
  const int T = sc.periods();
  const int M = static_cast<int>(mts.size());
  const UpperInputs in = upper_inputs(sc, u, alpha);
  const auto order = unit_order(mts);

  UpperSchedule base = UpperSchedule::blank(M, T);
  base.expected_el = in.expected_el;
  attach_lower(base, lower);

  auto decode = [&](const std::vector<double>& genes, UpperSchedule& s) {
    for (int n = 0; n < M; ++n)
      for (int t = 0; t < T; ++t) s.on[n][t] = genes[n * T + t] > 0.5 ? 1 : 0;
    return dispatch_commitment(s, in, mts);
  };

  std::vector<Gene> genes(static_cast<std::size_t>(M) * T, Gene{GeneKind::Binary, 0.0, 1.0});
  UpperSchedule work = base;
  JayaObjective f = [&](std::vector<double>& g) {
    const double viol = decode(g, work);
    for (int n = 0; n < M; ++n)
      for (int t = 0; t < T; ++t) g[n * T + t] = work.on[n][t];
    return img_net_cost(work, prices, mts, sc.price) + cfg.penalty_weight * viol;
  };

  // Seeds: everything on, and the per-period cheapest commitment ignoring
  // startups.
  std::vector<std::vector<double>> seeds;
  seeds.emplace_back(genes.size(), 1.0);
  if (M <= 12) {
    std::vector<double> g(genes.size(), 0.0);
    UpperSchedule probe = base;
    for (int t = 0; t < T; ++t) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> best_on(M, 1);
      for (int mask = 0; mask < (1 << M); ++mask) {
        for (int n = 0; n < M; ++n) probe.on[n][t] = (mask >> n) & 1;
        const double viol = dispatch_period(probe, t, in, mts, order);
        double c = cfg.penalty_weight * viol;
        for (int n = 0; n < M; ++n)
          c += probe.on[n][t] * (mts[n].fixed_fuel_cost + mts[n].variable_fuel_cost * probe.output[n][t]) +
               mts[n].reserve_cost * probe.reserve[n][t];
        if (c < best - 1e-12) {
          best = c;
          for (int n = 0; n < M; ++n) best_on[n] = probe.on[n][t];
        }
      }
      for (int n = 0; n < M; ++n) g[n * T + t] = best_on[n];
    }
    seeds.push_back(std::move(g));
  }

  const JayaResult jr = jaya_minimize(genes, f, cfg, seeds);
  UpperResult out;
  out.schedule = base;
  const double viol = decode(jr.best, out.schedule);
  out.history = jr.history;
  out.evaluations = jr.evaluations;
  if (viol > 1e-7) {
    std::ostringstream msg;
    msg << "microgrid schedule infeasible at alpha=" << alpha << " (unmet " << viol << " kW)";
    throw InfeasibleError(msg.str());
  }
  out.f1 = img_net_cost(out.schedule, prices, mts, sc.price);
  return out;
}

}  // namespace mgswap

#include "mgswap/bss_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mgswap {

namespace {

double cap_at(const std::vector<double>& caps, int t, double fallback) {
  if (caps.empty()) return fallback;
  return std::clamp(caps.at(t), 0.0, fallback);
}

std::string idx(const char* base, int t) { return std::string(base) + "[" + std::to_string(t) + "]"; }

}  // namespace

void BssParams::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("bss: " + m); };
  if (!(p_ch_rated >= 0) || !(p_dc_rated >= 0)) fail("rated powers must be non-negative");
  if (!(eta_ch > 0 && eta_ch <= 1) || !(eta_dc > 0 && eta_dc <= 1)) fail("efficiencies must lie in (0, 1]");
  if (!(0 <= c_min && c_min < c_max)) fail("need 0 <= c_min < c_max");
  if (c_init < c_min || c_init > c_max) fail("c_init must lie in [c_min, c_max]");
  if (!(battery_capacity > 0)) fail("battery_capacity must be positive");
  if (n_batteries < 0 || n_positions < 0) fail("counts must be non-negative");
  if (n_positions > n_batteries) fail("n_positions must not exceed n_batteries");
  if (depreciation_tau < 0 || max_cycles < 0) fail("depreciation and cycle cap must be non-negative");
  if (!(0 <= per_battery_c_min && per_battery_c_min < per_battery_c_max)) fail("need 0 <= per-battery c_min < c_max");
  if (!(per_battery_p_ch >= 0) || !(per_battery_p_dc >= 0)) fail("per-battery powers must be non-negative");
}

BssCoupling BssCoupling::closed(int periods) {
  BssCoupling c;
  c.charge_cap.assign(periods, 0.0);
  c.discharge_cap.assign(periods, 0.0);
  c.reserve_cap.assign(periods, 0.0);
  return c;
}

LowerSchedule LowerSchedule::idle(int periods, const BssParams& bss) {
  LowerSchedule s;
  s.bss_mode.assign(periods, 0);
  s.p_ch.assign(periods, 0.0);
  s.p_dc.assign(periods, 0.0);
  s.reserve.assign(periods, 0.0);
  s.traded.assign(periods, 0.0);
  s.energy.assign(periods + 1, bss.c_init);
  s.n_full.assign(periods, 0);
  s.n_empty.assign(periods, bss.n_batteries);
  s.n_ch.assign(periods, 0);
  s.n_dc.assign(periods, 0);
  s.served.assign(periods, 0);
  s.arrivals.assign(periods, 0);
  return s;
}

std::vector<BssProfitBreakdown> bss_profit_by_period(const LowerSchedule& s, const PriceTrack& prices,
                                                     const PriceParams& pp, const BssParams& bss) {
  const int T = s.periods();
  if (prices.periods() != T) throw std::invalid_argument("bss_profit: price track length differs");
  std::vector<BssProfitBreakdown> out(T);
  for (int t = 0; t < T; ++t) {
    auto& b = out[t];
    b.trade = -prices.price[t] * s.traded[t] * s.bss_mode[t];
    b.swap_income = pp.swap_price * bss.battery_capacity * s.served[t];
    b.depreciation = bss.depreciation_tau * (s.served[t] + s.p_dc[t] * pp.delta_t / bss.battery_capacity);
    b.reserve_income = reserve_payment(s.reserve[t], s.bss_mode[t], pp);
  }
  return out;
}

double bss_profit(const LowerSchedule& s, const PriceTrack& prices, const PriceParams& pp,
                  const BssParams& bss) {
  double acc = 0.0;
  for (const auto& b : bss_profit_by_period(s, prices, pp, bss)) acc += b.total();
  return acc;
}

BssMilp compile_milp(const PriceTrack& prices, const std::vector<int>& arrivals,
                     const BssParams& bss, const PriceParams& pp, const BssCoupling& coupling) {
  bss.validate();
  pp.validate();
  const int T = prices.periods();
  if (static_cast<int>(arrivals.size()) != T) throw std::invalid_argument("compile_milp: arrivals length differs");
  for (const auto* caps : {&coupling.charge_cap, &coupling.discharge_cap, &coupling.reserve_cap})
    if (!caps->empty() && static_cast<int>(caps->size()) != T)
      throw std::invalid_argument("compile_milp: coupling length differs");

  const double dt = pp.delta_t;
  const int N = bss.n_batteries;
  const int pos = bss.n_positions;
  const double e_swap = bss.swap_energy();
  const double reserve_hi = bss.eta_dc * (bss.c_max - bss.c_min) / dt;

  BssMilp out;
  out.periods = T;
  out.delta_t = dt;
  auto& m = out.instance;
  auto& v = out.vars;
  m.maximize = true;

  for (int t = 0; t < T; ++t) {
    const double w = prices.price[t];
    const double pch_hi = cap_at(coupling.charge_cap, t, bss.p_ch_rated);
    const double pdc_hi = cap_at(coupling.discharge_cap, t, bss.p_dc_rated);
    const double res_hi = cap_at(coupling.reserve_cap, t, reserve_hi);
    if (arrivals[t] < 0) throw std::invalid_argument("compile_milp: negative arrivals");

    v.mode.push_back(m.add_variable(idx("U", t), VarKind::Binary, 0, 1));
    v.discharging.push_back(m.add_variable(idx("D", t), VarKind::Binary, 0, 1));
    v.n_ch.push_back(m.add_variable(idx("Nch", t), VarKind::Integer, 0, pos));
    v.n_dc.push_back(m.add_variable(idx("Ndc", t), VarKind::Integer, 0, pos));
    v.n_full.push_back(m.add_variable(idx("Nful", t), VarKind::Integer, 0, N));
    v.served.push_back(m.add_variable(idx("Nev", t), VarKind::Integer, 0, arrivals[t],
                                      pp.swap_price * bss.battery_capacity - bss.depreciation_tau));
    v.p_ch.push_back(m.add_variable(idx("Pch", t), VarKind::Continuous, 0, pch_hi, -w * dt));
    v.p_dc.push_back(m.add_variable(idx("Pdc", t), VarKind::Continuous, 0, pdc_hi,
                                    w * dt - bss.depreciation_tau * dt / bss.battery_capacity));
    v.reserve.push_back(m.add_variable(idx("Pres", t), VarKind::Continuous, 0, res_hi, pp.reserve_price));
    v.energy_next.push_back(m.add_variable(idx("C", t + 1), VarKind::Continuous, bss.c_min, bss.c_max));
  }

  for (int t = 0; t < T; ++t) {
    const int U = v.mode[t], D = v.discharging[t], nch = v.n_ch[t], ndc = v.n_dc[t];
    const int nful = v.n_full[t], nev = v.served[t];
    const int pch = v.p_ch[t], pdc = v.p_dc[t], pres = v.reserve[t], cn = v.energy_next[t];
    const double res_hi = m.variables[pres].upper;

    // Direction flags: discharging only while trading.
    m.add_constraint(idx("dir", t), {{D, 1}, {U, -1}}, Sense::LessEqual, 0);
    // Positions: charging needs U=1, D=0; discharging needs D=1.
    m.add_constraint(idx("pos_ch", t), {{nch, 1}, {U, -double(pos)}, {D, double(pos)}}, Sense::LessEqual, 0);
    m.add_constraint(idx("pos_dc", t), {{ndc, 1}, {D, -double(pos)}}, Sense::LessEqual, 0);
    m.add_constraint(idx("rate_ch", t), {{pch, 1}, {nch, -bss.per_battery_p_ch}}, Sense::LessEqual, 0);
    m.add_constraint(idx("rate_dc", t), {{pdc, 1}, {ndc, -bss.per_battery_p_dc}}, Sense::LessEqual, 0);
    // |S_B| <= M U, split by direction with the smallest valid M per period.
    const double pch_m = m.variables[pch].upper, pdc_m = m.variables[pdc].upper;
    m.add_constraint(idx("trade_ch", t), {{pch, 1}, {U, -pch_m}, {D, pch_m}}, Sense::LessEqual, 0);
    m.add_constraint(idx("trade_dc", t), {{pdc, 1}, {D, -pdc_m}}, Sense::LessEqual, 0);
    // Reserve only in reserve mode.
    m.add_constraint(idx("res_mode", t), {{pres, 1}, {U, res_hi}}, Sense::LessEqual, res_hi);
    // Reserve backed by stored energy above the floor.
    const double k = bss.eta_dc / dt;
    if (t == 0) {
      m.add_constraint(idx("res_energy", t), {{pres, 1}}, Sense::LessEqual, k * (bss.c_init - bss.c_min));
    } else {
      m.add_constraint(idx("res_energy", t), {{pres, 1}, {v.energy_next[t - 1], -k}}, Sense::LessEqual,
                       -k * bss.c_min);
    }
    // Energy recursion.
    std::vector<Term> bal = {{cn, 1}, {pch, -bss.eta_ch * dt}, {pdc, dt / bss.eta_dc}, {nev, e_swap}};
    double rhs = 0.0;
    if (t == 0)
      rhs = bss.c_init;
    else
      bal.push_back({v.energy_next[t - 1], -1});
    m.add_constraint(idx("energy", t), bal, Sense::Equal, rhs);
    // Battery counts.
    m.add_constraint(idx("count", t), {{nch, 1}, {ndc, 1}, {nful, 1}}, Sense::LessEqual, N);
    m.add_constraint(idx("swap", t), {{nev, 1}, {nful, -1}}, Sense::LessEqual, 0);
    // Full batteries must be backed by stored energy.
    const double floor_e = N * bss.per_battery_c_min;
    if (t == 0) {
      m.add_constraint(idx("full_energy", t), {{nful, e_swap}}, Sense::LessEqual, bss.c_init - floor_e);
    } else {
      m.add_constraint(idx("full_energy", t), {{nful, e_swap}, {v.energy_next[t - 1], -1}},
                       Sense::LessEqual, -floor_e);
      m.add_constraint(idx("full_keep", t), {{nful, 1}, {v.n_full[t - 1], -1}, {v.served[t - 1], 1}},
                       Sense::GreaterEqual, 0);
    }
  }
  std::vector<Term> cyc;
  for (int t = 0; t < T; ++t) cyc.push_back({v.p_ch[t], bss.eta_ch * dt});
  if (!cyc.empty())
    m.add_constraint("cycles", cyc, Sense::LessEqual, bss.max_cycles * N * bss.battery_capacity);
  m.validate();
  return out;
}

std::vector<double> idle_assignment(const BssMilp& milp, const BssParams& bss) {
  std::vector<double> x(milp.instance.num_variables(), 0.0);
  for (int t = 0; t < milp.periods; ++t) x[milp.vars.energy_next[t]] = bss.c_init;
  return x;
}

std::vector<double> round_assignment(const BssMilp& milp, const BssParams& bss,
                                     const std::vector<double>& x) {
  const auto& v = milp.vars;
  std::vector<double> r = x;
  for (int t = 0; t < milp.periods; ++t) {
    const bool trade = x[v.mode[t]] >= 0.5;
    const bool dis = trade && x[v.p_dc[t]] > x[v.p_ch[t]];
    r[v.mode[t]] = trade;
    r[v.discharging[t]] = dis;
    auto need = [](double p, double per) { return per > 0 ? std::ceil(p / per - 1e-7) : 0.0; };
    r[v.n_ch[t]] = trade && !dis ? std::min<double>(bss.n_positions, need(x[v.p_ch[t]], bss.per_battery_p_ch)) : 0;
    r[v.n_dc[t]] = dis ? std::min<double>(bss.n_positions, need(x[v.p_dc[t]], bss.per_battery_p_dc)) : 0;
    r[v.served[t]] = std::floor(x[v.served[t]] + 1e-7);
    r[v.n_full[t]] = std::max(r[v.served[t]], std::floor(x[v.n_full[t]] + 1e-7));
    const double room = bss.n_batteries - r[v.n_ch[t]] - r[v.n_dc[t]];
    r[v.n_full[t]] = std::min(r[v.n_full[t]], room);
    r[v.served[t]] = std::min(r[v.served[t]], r[v.n_full[t]]);
  }
  return r;
}

LowerSchedule decode_schedule(const BssMilp& milp, const std::vector<double>& x,
                              const BssParams& bss, const std::vector<int>& arrivals) {
  const auto& v = milp.vars;
  const int T = milp.periods;
  LowerSchedule s = LowerSchedule::idle(T, bss);
  s.arrivals = arrivals;
  auto geti = [&](int col) { return static_cast<int>(std::lround(x[col])); };
  auto clean = [](double p) { return std::abs(p) < 1e-9 ? 0.0 : p; };
  s.energy[0] = bss.c_init;
  for (int t = 0; t < T; ++t) {
    s.bss_mode[t] = geti(v.mode[t]);
    s.p_ch[t] = clean(x[v.p_ch[t]]);
    s.p_dc[t] = clean(x[v.p_dc[t]]);
    s.reserve[t] = clean(x[v.reserve[t]]);
    s.traded[t] = (s.p_ch[t] - s.p_dc[t]) * milp.delta_t;
    s.energy[t + 1] = x[v.energy_next[t]];
    s.n_ch[t] = geti(v.n_ch[t]);
    s.n_dc[t] = geti(v.n_dc[t]);
    s.n_full[t] = geti(v.n_full[t]);
    s.n_empty[t] = bss.n_batteries - s.n_ch[t] - s.n_dc[t] - s.n_full[t];
    s.served[t] = geti(v.served[t]);
  }
  return s;
}

LowerResult solve_lower(const PriceTrack& prices, const std::vector<int>& arrivals,
                        const BssParams& bss, const PriceParams& pp, const BssCoupling& coupling,
                        const BbaConfig& cfg) {
  return solve_lower(compile_milp(prices, arrivals, bss, pp, coupling), prices, arrivals, bss, pp, cfg);
}

LowerResult solve_lower(const BssMilp& milp, const PriceTrack& prices, const std::vector<int>& arrivals,
                        const BssParams& bss, const PriceParams& pp, const BbaConfig& cfg) {
  BbaConfig c = cfg;
  if (!c.rounding)
    c.rounding = [&milp, &bss](const std::vector<double>& x) { return round_assignment(milp, bss, x); };
  if (c.branch_priority.empty()) {
    // Battery counts on the positions follow from the powers; decide them last.
    c.branch_priority.assign(milp.instance.num_variables(), 1);
    for (int t = 0; t < milp.periods; ++t) c.branch_priority[milp.vars.n_ch[t]] = c.branch_priority[milp.vars.n_dc[t]] = 0;
  }
  const auto hint = idle_assignment(milp, bss);
  LowerResult out;
  out.milp = solve_bba(milp.instance, c, &hint);
  out.variables = milp.instance.num_variables();
  out.constraints = milp.instance.num_constraints();
  if (out.milp.x.empty()) throw InfeasibleError("battery swapping station program has no feasible schedule");
  out.schedule = decode_schedule(milp, out.milp.x, bss, arrivals);
  out.f2 = bss_profit(out.schedule, prices, pp, bss);
  return out;
}

double lower_violation(const LowerSchedule& s, const BssParams& bss, const BssCoupling& coupling,
                       double delta_t) {
  const int T = s.periods();
  double worst = 0.0;
  auto over = [&](double amount) { worst = std::max(worst, amount); };
  const double reserve_hi = bss.eta_dc * (bss.c_max - bss.c_min) / delta_t;
  double charged = 0.0;
  for (int t = 0; t < T; ++t) {
    const int U = s.bss_mode[t];
    over(-s.p_ch[t]);
    over(-s.p_dc[t]);
    over(-s.reserve[t]);
    over(s.p_ch[t] - cap_at(coupling.charge_cap, t, bss.p_ch_rated));
    over(s.p_dc[t] - cap_at(coupling.discharge_cap, t, bss.p_dc_rated));
    over(s.reserve[t] - cap_at(coupling.reserve_cap, t, reserve_hi));
    if (U == 0) {
      over(s.p_ch[t]);
      over(s.p_dc[t]);
    } else {
      over(s.reserve[t]);
    }
    over(std::min(s.p_ch[t], s.p_dc[t]));  // never both directions at once
    over(s.p_ch[t] - bss.per_battery_p_ch * s.n_ch[t]);
    over(s.p_dc[t] - bss.per_battery_p_dc * s.n_dc[t]);
    over(s.n_ch[t] - bss.n_positions);
    over(s.n_dc[t] - bss.n_positions);
    over(std::abs(s.n_full[t] + s.n_empty[t] + s.n_ch[t] + s.n_dc[t] - bss.n_batteries));
    over(-s.n_empty[t]);
    over(s.served[t] - s.n_full[t]);
    over(s.served[t] - s.arrivals[t]);
    const double next = s.energy[t] + bss.eta_ch * s.p_ch[t] * delta_t - s.p_dc[t] * delta_t / bss.eta_dc -
                        s.served[t] * bss.swap_energy();
    over(std::abs(next - s.energy[t + 1]));
    over(bss.c_min - s.energy[t + 1]);
    over(s.energy[t + 1] - bss.c_max);
    over(s.reserve[t] - bss.eta_dc * (s.energy[t] - bss.c_min) / delta_t);
    over(bss.n_batteries * bss.per_battery_c_min + bss.swap_energy() * s.n_full[t] - s.energy[t]);
    if (t > 0) over(s.n_full[t - 1] - s.served[t - 1] - s.n_full[t]);
    over(std::abs(s.traded[t] - (s.p_ch[t] - s.p_dc[t]) * delta_t));
    charged += bss.eta_ch * s.p_ch[t] * delta_t;
  }
  over(charged - bss.max_cycles * bss.n_batteries * bss.battery_capacity);
  return worst;
}

}  // namespace mgswap
